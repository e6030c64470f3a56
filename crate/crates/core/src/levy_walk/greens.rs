//! Ball Green's function of the symmetric α-stable process in one dimension,
//! the occupation weight ζ and the fixed-radius rule.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::quad::tanh_sinh;
use crate::specfun::{gamma, incomplete_beta_split};

/// A ball (interval) in one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallGeometry {
    pub center: f64,
    pub radius: f64,
}

impl BallGeometry {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(domain("BallGeometry: radius", radius));
        }
        Ok(Self { center, radius })
    }

    /// The ball inscribed in (-1, 1) around `center`, shrunk by `shrink`.
    pub fn inscribed(center: f64, shrink: f64) -> Result<Self> {
        if !(center.abs() < 1.0) {
            return Err(domain("BallGeometry: center", center));
        }
        Self::new(center, shrink * (1.0 - center.abs()))
    }

    pub fn contains(&self, y: f64) -> bool {
        (y - self.center).abs() < self.radius
    }
}

/// Ĉ₁^α = Γ(1/2) / (2^α π^{1/2} Γ(α/2)²).
pub fn c_hat(alpha: f64) -> f64 {
    let g = gamma(alpha / 2.0);
    1.0 / (2f64.powf(alpha) * g * g)
}

/// C̃₁^α = Γ(1/2) / (2^α Γ(1+α/2) Γ((1+α)/2)).
pub fn c_tilde(alpha: f64) -> f64 {
    PI.sqrt() / (2f64.powf(alpha) * gamma(1.0 + alpha / 2.0) * gamma((1.0 + alpha) / 2.0))
}

/// ∫₀^ρ t^{a-1} (1+t)^{-1/2} dt with a = α/2, given s = ρ/(1+ρ) and 1 - s.
fn occupation_integral(s: f64, sc: f64, a: f64) -> f64 {
    if a == 0.5 {
        return 2.0 * (s / sc).sqrt().asinh();
    }
    let b = 0.5 - a;
    if b > 0.0 {
        incomplete_beta_split(s, sc, a, b)
    } else {
        // B(s; a, b) = [(a+b) B(s; a, b+1) - s^a (1-s)^b] / b
        let head = (a * s.ln() + b * sc.ln()).exp();
        ((a + b) * incomplete_beta_split(s, sc, a, b + 1.0) - head) / b
    }
}

/// Green's function Q(x, y) of the ball of radius r centered at 0.
pub fn greens_q(x: f64, y: f64, r: f64, alpha: f64) -> Result<f64> {
    if x == y {
        return Err(Error::Singular("greens_q: x == y"));
    }
    if !(x.abs() < r) {
        return Err(domain("greens_q: x", x));
    }
    if !(y.abs() < r) {
        return Err(domain("greens_q: y", y));
    }
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain("greens_q: alpha", alpha));
    }
    Ok(greens_unchecked(x, y, r, alpha))
}

pub(crate) fn greens_unchecked(x: f64, y: f64, r: f64, alpha: f64) -> f64 {
    greens_at_distance(x, y, (y - x).abs(), r, alpha)
}

/// Q(x, y) with the distance |y - x| = d supplied separately, so that d keeps
/// full precision when y rounds to x.
pub(crate) fn greens_at_distance(x: f64, y: f64, d: f64, r: f64, alpha: f64) -> f64 {
    let px = (r - x.abs()) * (r + x.abs());
    let py = (r - y.abs()) * (r + y.abs());
    if alpha == 1.0 {
        return ((r * r - x * y + (px * py).sqrt()) / (r * d)).ln() / PI;
    }
    // Q is continuous on the diagonal for α > 1, so tiny distances are floored
    let d = if alpha > 1.0 { d.max(1e-150 * r) } else { d };
    let num = px * py;
    let den = num + r * r * d * d;
    c_hat(alpha) * d.powf(alpha - 1.0) * occupation_integral(num / den, r * r * d * d / den, alpha / 2.0)
}

/// ζ(x) = ∫ Q(x, y) dy over the ball, by quadrature split at y = x.
pub fn occupation_zeta(x: f64, geom: BallGeometry, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain("occupation_zeta: alpha", alpha));
    }
    let xl = x - geom.center;
    let r = geom.radius;
    if !(xl.abs() < r) {
        return Err(domain("occupation_zeta: x", x));
    }
    let tol = 1e-12;
    let left = tanh_sinh(|s| greens_at_distance(xl, xl - s, s, r, alpha), 0.0, r + xl, tol)?;
    let right = tanh_sinh(|s| greens_at_distance(xl, xl + s, s, r, alpha), 0.0, r - xl, tol)?;
    Ok(left.value + right.value)
}

/// E_x[τ] = C̃₁^α (r² - x²)^{α/2} for the ball of radius r centered at 0.
pub fn expected_exit_time(x: f64, r: f64, alpha: f64) -> f64 {
    c_tilde(alpha) * ((r - x.abs()) * (r + x.abs())).powf(alpha / 2.0)
}

/// r = (Δt / C̃₁^α)^{1/α}, so that the expected exit time from the ball center is Δt.
pub fn fixed_radius(dt: f64, alpha: f64) -> Result<f64> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(domain("fixed_radius: dt", dt));
    }
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain("fixed_radius: alpha", alpha));
    }
    Ok((dt / c_tilde(alpha)).powf(1.0 / alpha))
}
