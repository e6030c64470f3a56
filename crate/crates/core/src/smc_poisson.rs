//! Spectral Monte Carlo iteration for (−Δ)^{α/2}u = f on (-1, 1) with u = 0
//! outside: a walk-on-spheres estimate at the Jacobi-Gauss nodes, followed by
//! repeated walks on the residual equation.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::levy_walk::{Fn1, JumpLaw, PoissonSpec, PoissonWalker, RngStream, DEFAULT_STEP_CAP};
use crate::oracles::golden_points;
use crate::spectral_basis::{
    check_alpha, frac_laplacian_modal, interpolate, jacobi_series, GjfGrid, Interpolant1D,
};

/// Capped-path fraction above which a solution carries a warning.
pub const CAPPED_WARN_RATE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonConfig {
    pub alpha: f64,
    pub n_x: usize,
    /// Outer paths per node, M.
    pub paths: usize,
    /// Interior samples per walk step, M₁.
    pub inner_samples: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub shrink: f64,
    pub jump_law: JumpLaw,
    pub step_cap: usize,
}

impl PoissonConfig {
    pub fn new(alpha: f64, n_x: usize, paths: usize) -> Self {
        Self {
            alpha,
            n_x,
            paths,
            inner_samples: 32,
            max_iter: 60,
            tol: 1e-12,
            seed: 0,
            shrink: 1.0,
            jump_law: JumpLaw::default(),
            step_cap: DEFAULT_STEP_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.paths == 0 || self.inner_samples == 0 || self.max_iter == 0 {
            return Err(Error::Contract(
                "paths, inner_samples and max_iter must be at least 1".into(),
            ));
        }
        if !(self.tol > 0.0) {
            return Err(domain("PoissonConfig: tol", self.tol));
        }
        Ok(())
    }
}

/// One row of the convergence trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationReport {
    pub k: usize,
    pub max_update: f64,
    pub e_inf: Option<f64>,
    pub capped_path_rate: f64,
    /// Wall time since the solve started.
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct PoissonSolution {
    pub interpolant: Interpolant1D,
    pub trace: Vec<IterationReport>,
    pub config: PoissonConfig,
}

impl PoissonSolution {
    pub fn eval(&self, x: f64) -> f64 {
        self.interpolant.eval(x)
    }

    pub fn final_report(&self) -> &IterationReport {
        self.trace.last().expect("at least one iteration")
    }

    pub fn warnings(&self) -> Vec<String> {
        capped_warnings(&self.trace)
    }
}

pub(crate) fn capped_warnings(trace: &[IterationReport]) -> Vec<String> {
    trace
        .iter()
        .filter(|r| r.capped_path_rate > CAPPED_WARN_RATE)
        .map(|r| format!("iteration {}: {:.2}% of paths hit the step cap", r.k, 100.0 * r.capped_path_rate))
        .collect()
}

/// f − (−Δ)^{α/2}u, with the fractional Laplacian taken through the modal map.
pub fn residual_source<'a>(f: Fn1<'a>, u: &Interpolant1D) -> impl Fn(f64) -> f64 + Sync + 'a {
    let lap = frac_laplacian_modal(u);
    let index = u.grid.index;
    move |x| f(x) - jacobi_series(&lap, index, x)
}

/// Mean walk score per node and the fraction of capped paths.
pub(crate) fn mean_scores<W>(points: usize, cfg_paths: usize, seed: u64, k: usize, walk: W) -> Result<(Vec<f64>, f64)>
where
    W: Fn(usize, &RngStream) -> Result<f64> + Sync,
{
    let scores: Vec<(f64, bool)> = (0..points * cfg_paths)
        .into_par_iter()
        .map(|idx| {
            let (j, p) = (idx / cfg_paths, idx % cfg_paths);
            let rng = RngStream::new(seed, j as u64, p as u64, k as u64);
            match walk(j, &rng) {
                Ok(s) => Ok((s, false)),
                Err(Error::CappedWalk { partial_score, .. }) => Ok((partial_score, true)),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let capped = scores.iter().filter(|s| s.1).count();
    let means = scores
        .chunks(cfg_paths)
        .map(|c| c.iter().map(|s| s.0).sum::<f64>() / cfg_paths as f64)
        .collect();
    Ok((means, capped as f64 / scores.len() as f64))
}

fn zero(_: f64) -> f64 {
    0.0
}

/// Runs the SMC iteration. `exact`, when given, fills in E^∞ per iteration.
pub fn smc_solve(f: Fn1<'_>, exact: Option<Fn1<'_>>, cfg: &PoissonConfig) -> Result<PoissonSolution> {
    cfg.validate()?;
    let start = Instant::now();
    let grid: Arc<GjfGrid> = GjfGrid::new(cfg.alpha, cfg.n_x)?;
    let walker = PoissonWalker::with_options(cfg.alpha, cfg.shrink, cfg.step_cap, cfg.jump_law)?;
    let mut probe = grid.nodes.clone();
    probe.extend(golden_points(50));

    let mut u = Interpolant1D::zero(&grid);
    let mut trace = Vec::new();
    for k in 1..=cfg.max_iter {
        let source = residual_source(f, &u);
        let spec = PoissonSpec {
            source: Some(&source),
            exterior: &zero,
            inner_samples: cfg.inner_samples,
        };
        let (update, capped) = mean_scores(grid.len(), cfg.paths, cfg.seed, k, |j, rng| {
            Ok(walker.walk(grid.nodes[j], &spec, rng)?.score)
        })?;
        let values: Vec<f64> = u.values.iter().zip(&update).map(|(a, b)| a + b).collect();
        u = interpolate(&grid, &values)?;
        let max_update = update.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
        let e_inf = exact.map(|g| probe.iter().fold(0.0_f64, |m, &x| m.max((u.eval(x) - g(x)).abs())));
        trace.push(IterationReport {
            k,
            max_update,
            e_inf,
            capped_path_rate: capped,
            elapsed: start.elapsed(),
        });
        if max_update < cfg.tol {
            break;
        }
    }
    Ok(PoissonSolution {
        interpolant: u,
        trace,
        config: cfg.clone(),
    })
}

/// Estimated geometric contraction rate of E^∞ over the decaying segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contraction {
    Ratio(f64),
    NotEstimable,
}

/// Geometric mean of successive E^∞ ratios from the first iteration up to
/// the smallest error reached.
pub fn empirical_contraction(trace: &[IterationReport]) -> Contraction {
    let errs: Option<Vec<f64>> = trace.iter().map(|r| r.e_inf).collect();
    let Some(errs) = errs else {
        return Contraction::NotEstimable;
    };
    if errs.len() < 3 || errs.iter().any(|e| !e.is_finite()) {
        return Contraction::NotEstimable;
    }
    let mut best = 0;
    for (i, &e) in errs.iter().enumerate() {
        if e < errs[best] {
            best = i;
        }
    }
    if best < 2 || errs[0] <= 0.0 {
        return Contraction::NotEstimable;
    }
    let floor = errs[best].max(f64::MIN_POSITIVE);
    Contraction::Ratio((floor / errs[0]).powf(1.0 / best as f64))
}

/// N_x·M₁^{-1/2}·max_j sup|(−Δ)^{α/2} l_j| with the sup sampled at `samples`
/// equispaced interior points. The unknown constant of the rate bound is not
/// included, so this only compares configurations.
pub fn rate_factor(grid: &Arc<GjfGrid>, inner_samples: usize, samples: usize) -> Result<f64> {
    if inner_samples == 0 || samples == 0 {
        return Err(Error::Config("rate_factor: inner_samples and samples must be positive".into()));
    }
    let mut worst = 0.0_f64;
    let mut unit = vec![0.0; grid.len()];
    for j in 0..grid.len() {
        unit.fill(0.0);
        unit[j] = 1.0;
        let l = interpolate(grid, &unit)?;
        for i in 0..samples {
            let x = -1.0 + 2.0 * (i as f64 + 0.5) / samples as f64;
            worst = worst.max(l.frac_laplacian_at(x).abs());
        }
    }
    Ok(grid.n_x as f64 * worst / (inner_samples as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_fn;
    use crate::spectral_basis::gjf_weight;

    fn report(k: usize, e: f64) -> IterationReport {
        IterationReport {
            k,
            max_update: e,
            e_inf: Some(e),
            capped_path_rate: 0.0,
            elapsed: Duration::ZERO,
        }
    }

    #[test]
    fn zero_source_converges_immediately() {
        let cfg = PoissonConfig::new(0.8, 3, 10);
        let sol = smc_solve(&zero, None, &cfg).unwrap();
        assert_eq!(sol.trace.len(), 1);
        assert!(sol.interpolant.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn residual_of_zero_is_source() {
        let grid = GjfGrid::new(0.7, 4).unwrap();
        let u = Interpolant1D::zero(&grid);
        let f = |x: f64| x.sin() + 2.0;
        let r = residual_source(&f, &u);
        for &x in &[-0.9, 0.0, 0.4] {
            assert_eq!(r(x), f(x));
        }
    }

    #[test]
    fn residual_vanishes_on_first_gjf() {
        for &alpha in &[0.4, 1.0, 1.7] {
            let grid = GjfGrid::new(alpha, 3).unwrap();
            let u = Interpolant1D::from_fn(&grid, |x| gjf_weight(alpha, x));
            let c = gamma_fn(alpha + 1.0).unwrap();
            let f = move |_: f64| c;
            let r = residual_source(&f, &u);
            for x in golden_points(40) {
                assert!(r(x).abs() < 1e-11, "alpha={alpha} x={x} r={}", r(x));
            }
        }
    }

    #[test]
    fn residual_is_linear() {
        let grid = GjfGrid::new(1.3, 5).unwrap();
        let u = Interpolant1D::from_fn(&grid, |x| x.cos());
        let v = Interpolant1D::from_fn(&grid, |x| x * x - 0.2);
        let f = |x: f64| x.exp();
        let whole = residual_source(&f, &u.add(&v).unwrap());
        let first = residual_source(&f, &u);
        let nested = residual_source(&first, &v);
        for x in golden_points(30) {
            assert!((whole(x) - nested(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn one_iteration_is_plain_estimate() {
        let mut cfg = PoissonConfig::new(1.2, 2, 40);
        cfg.max_iter = 1;
        cfg.seed = 3;
        let one = |_: f64| 1.0;
        let sol = smc_solve(&one, None, &cfg).unwrap();
        let walker = PoissonWalker::new(1.2).unwrap();
        let spec = PoissonSpec {
            source: Some(&one),
            exterior: &zero,
            inner_samples: cfg.inner_samples,
        };
        for (j, &x) in sol.interpolant.grid.nodes.iter().enumerate() {
            let mean: f64 = (0..cfg.paths)
                .map(|p| walker.walk(x, &spec, &RngStream::new(3, j as u64, p as u64, 1)).unwrap().score)
                .sum::<f64>()
                / cfg.paths as f64;
            assert_eq!(mean, sol.interpolant.values[j]);
        }
    }

    #[test]
    fn vanishes_outside() {
        let mut cfg = PoissonConfig::new(0.6, 2, 20);
        cfg.max_iter = 3;
        let one = |_: f64| 1.0;
        let sol = smc_solve(&one, None, &cfg).unwrap();
        assert_eq!(sol.eval(1.0), 0.0);
        assert_eq!(sol.eval(-1.0), 0.0);
    }

    #[test]
    fn contraction_markers() {
        let halving: Vec<_> = (1..=10).map(|k| report(k, 0.5f64.powi(k as i32))).collect();
        match empirical_contraction(&halving) {
            Contraction::Ratio(r) => assert!((r - 0.5).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let flat: Vec<_> = (1..=10).map(|k| report(k, 0.3)).collect();
        assert_eq!(empirical_contraction(&flat), Contraction::NotEstimable);
        assert_eq!(empirical_contraction(&halving[..2]), Contraction::NotEstimable);
    }

    #[test]
    fn rejects_bad_config() {
        let one = |_: f64| 1.0;
        let mut cfg = PoissonConfig::new(2.5, 2, 10);
        assert!(smc_solve(&one, None, &cfg).is_err());
        cfg.alpha = 1.0;
        cfg.paths = 0;
        assert!(smc_solve(&one, None, &cfg).is_err());
    }

    #[test]
    fn rate_factor_scales_with_inner_samples() {
        let grid = GjfGrid::new(0.8, 4).unwrap();
        let a = rate_factor(&grid, 16, 200).unwrap();
        let b = rate_factor(&grid, 64, 200).unwrap();
        assert!(a.is_finite() && a > 0.0);
        assert!((a / b - 2.0).abs() < 1e-12);
        assert!(rate_factor(&grid, 0, 200).is_err());
    }
}
