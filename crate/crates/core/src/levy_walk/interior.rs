//! Inverse-CDF sampling of the normalized Green's density Q̃(x, ·).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{domain, Result};
use crate::specfun::gauss_legendre;

use super::greens::{greens_at_distance, BallGeometry};
use super::rng::RngStream;

const CELLS: usize = 4096;

/// One side of the split at y = x: distance s ∈ (0, length), s = length·v^p.
#[derive(Debug)]
struct Piece {
    length: f64,
    power: f64,
    /// Cumulative mass at cell edges, normalized to end at 1.
    cdf: Vec<f64>,
    mass: f64,
}

impl Piece {
    fn build(x: f64, sign: f64, length: f64, alpha: f64) -> Self {
        let power = (1.0 / alpha).max(1.0);
        let gl = gauss_legendre(4);
        let h = 1.0 / CELLS as f64;
        let mut cdf = Vec::with_capacity(CELLS + 1);
        cdf.push(0.0);
        let mut acc = 0.0;
        for i in 0..CELLS {
            let v0 = i as f64 * h;
            let mut m = 0.0;
            for (&t, &w) in gl.nodes.iter().zip(&gl.weights) {
                let v = v0 + 0.5 * h * (t + 1.0);
                let s = length * v.powf(power);
                let y = x + sign * s;
                if s > 0.0 && y.abs() < 1.0 {
                    let jac = length * power * v.powf(power - 1.0);
                    m += w * greens_at_distance(x, y, s, 1.0, alpha) * jac;
                }
            }
            acc += 0.5 * h * m;
            cdf.push(acc);
        }
        let mass = acc;
        cdf.iter_mut().for_each(|c| *c /= mass);
        Self {
            length,
            power,
            cdf,
            mass,
        }
    }

    fn sample(&self, u: f64) -> f64 {
        let i = match self.cdf.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
            Ok(i) => i.min(CELLS - 1),
            Err(i) => i - 1,
        };
        let (c0, c1) = (self.cdf[i], self.cdf[i + 1]);
        let frac = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
        let v = (i as f64 + frac) / CELLS as f64;
        self.length * v.powf(self.power)
    }
}

/// Sampler for Q̃(x, ·) on the unit ball centered at 0.
#[derive(Debug)]
pub struct InteriorTable {
    x: f64,
    left: Piece,
    right: Piece,
    left_prob: f64,
}

impl InteriorTable {
    /// Table for the unit ball with the source point at `x` ∈ (-1, 1).
    pub fn build(x: f64, alpha: f64) -> Result<Self> {
        if !(x.abs() < 1.0) {
            return Err(domain("InteriorTable: x", x));
        }
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(domain("InteriorTable: alpha", alpha));
        }
        let left = Piece::build(x, -1.0, 1.0 + x, alpha);
        let right = if x == 0.0 {
            Piece::build(x, 1.0, 1.0, alpha)
        } else {
            Piece::build(x, 1.0, 1.0 - x, alpha)
        };
        let left_prob = left.mass / (left.mass + right.mass);
        Ok(Self {
            x,
            left,
            right,
            left_prob,
        })
    }

    /// Total tabulated mass, an approximation of ζ(x) on the unit ball.
    pub fn mass(&self) -> f64 {
        self.left.mass + self.right.mass
    }

    /// A point of the unit ball distributed by Q̃(x, ·).
    pub fn sample_unit(&self, rng: &mut RngStream) -> f64 {
        let side = rng.uniform();
        let u = rng.uniform();
        let y = if side < self.left_prob {
            self.x - self.left.sample(u)
        } else {
            self.x + self.right.sample(u)
        };
        y.clamp(-1.0 + f64::EPSILON, 1.0 - f64::EPSILON)
    }
}

type TableKey = (u64, u64);

fn cache() -> &'static Mutex<HashMap<TableKey, Arc<InteriorTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<InteriorTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached table keyed by (x/r, α).
pub fn interior_table(x_over_r: f64, alpha: f64) -> Result<Arc<InteriorTable>> {
    let key = (x_over_r.to_bits(), alpha.to_bits());
    if let Some(t) = cache().lock().expect("table cache").get(&key) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(InteriorTable::build(x_over_r, alpha)?);
    cache()
        .lock()
        .expect("table cache")
        .entry(key)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// Samples y with density Q̃(x, ·) over the ball `geom`.
pub fn sample_interior(x: f64, geom: BallGeometry, alpha: f64, rng: &mut RngStream) -> Result<f64> {
    let rel = (x - geom.center) / geom.radius;
    let table = interior_table(rel, alpha)?;
    let y = geom.center + geom.radius * table.sample_unit(rng);
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy_walk::greens::expected_exit_time;

    #[test]
    fn table_mass_matches_zeta() {
        for &alpha in &[0.4, 1.0, 1.6, 2.0] {
            for &x in &[0.0, 0.35] {
                let t = InteriorTable::build(x, alpha).unwrap();
                let e = expected_exit_time(x, 1.0, alpha);
                assert!(((t.mass() - e) / e).abs() < 1e-4, "alpha={alpha} x={x}");
            }
        }
    }

    #[test]
    fn samples_stay_inside() {
        let geom = BallGeometry::new(0.3, 0.2).unwrap();
        let mut rng = RngStream::new(5, 0, 0, 0);
        for _ in 0..100_000 {
            let y = sample_interior(0.3, geom, 0.6, &mut rng).unwrap();
            assert!(geom.contains(y));
        }
    }

    #[test]
    fn off_center_mean_shifts_toward_the_middle() {
        let mut rng = RngStream::new(9, 0, 0, 0);
        let t = InteriorTable::build(0.6, 1.2).unwrap();
        let n = 50_000;
        let mean: f64 = (0..n).map(|_| t.sample_unit(&mut rng)).sum::<f64>() / n as f64;
        assert!(mean < 0.6 && mean > -0.5);
    }
}
