//! Desk-scale invariant suites behind `validate <suite>`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::levy_walk::{
    c_tilde, jump_from_uniform, occupation_zeta, BallGeometry, JumpLaw, PoissonSpec, PoissonWalker,
    RngStream,
};
use crate::oracles::{
    euler_stable_exit, frac_laplacian_direct, galerkin_solve, golden_points, ks_statistic,
    stable_variate, EulerConfig, FracLapOracleConfig,
};
use crate::specfun::{
    beta, gamma_fn, gamma_norm, gauss_legendre, incomplete_beta, inverse_incomplete_beta_split,
    jacobi_eval, jacobi_gauss, JacobiIndex,
};
use crate::spectral_basis::{
    frac_eigenvalue, gjf_eval, GjfGrid, Interpolant1D, SpaceTimeInterpolant, TimeGrid,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    Basis,
    Walk,
    Oracle,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "specfun" => Ok(Suite::Specfun),
            "basis" => Ok(Suite::Basis),
            "walk" => Ok(Suite::Walk),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            other => Err(Error::Config(format!("unknown suite '{other}'"))),
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }

    /// Passes when `measured` ≤ `limit`.
    fn bound(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self::new(name, measured <= limit, format!("{measured:.3e} (limit {limit:.1e})"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn specfun_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = rel(gamma_fn(5.0)?, 24.0).max(rel(gamma_fn(0.5)?, PI.sqrt()));
    out.push(Check::bound("gamma at 5 and 1/2", g, 1e-14));

    let mut sym = 0.0_f64;
    let mut inv = 0.0_f64;
    for &(a, b) in &[(0.3, 0.7), (1.0, 0.5), (2.5, 1.5)] {
        for x in [0.05, 0.3, 0.5, 0.8, 0.99] {
            let lhs = incomplete_beta(x, a, b)? + incomplete_beta(1.0 - x, b, a)?;
            sym = sym.max(rel(lhs, beta(a, b)));
            let y = incomplete_beta(x, a, b)?;
            let (xr, _) = inverse_incomplete_beta_split(y, a, b)?;
            inv = inv.max((xr - x).abs() / x);
        }
    }
    out.push(Check::bound("incomplete beta reflection", sym, 1e-12));
    out.push(Check::bound("inverse incomplete beta round trip", inv, 1e-10));

    let mut orth = 0.0_f64;
    for &(a, b) in &[(0.2, 0.2), (0.5, -0.3), (1.0, 1.0)] {
        let idx = JacobiIndex::new(a, b)?;
        let n = 6;
        let rule = jacobi_gauss(n, idx);
        for i in 0..=n {
            for j in 0..=(2 * n + 1 - i).min(n) {
                let v = rule.integrate(|x| jacobi_eval(i, idx, x) * jacobi_eval(j, idx, x));
                let want = if i == j { gamma_norm(i, idx) } else { 0.0 };
                orth = orth.max((v - want).abs() / gamma_norm(i, idx));
            }
        }
    }
    out.push(Check::bound("Jacobi-Gauss orthogonality", orth, 1e-12));

    let rule = gauss_legendre(8);
    let gl = (0..8)
        .map(|k| (rule.integrate(|x| x.powi(2 * k)) - 2.0 / (2 * k + 1) as f64).abs())
        .fold(0.0, f64::max);
    out.push(Check::bound("Legendre-Gauss exactness", gl, 1e-14));
    Ok(out)
}

pub fn basis_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let pts = golden_points(40);
    let mut interp = 0.0_f64;
    let mut ident = 0.0_f64;
    for &alpha in &[0.4, 1.0, 1.6, 2.0] {
        let grid = GjfGrid::new(alpha, 6)?;
        for n in 0..=6 {
            let u = Interpolant1D::from_fn(&grid, |x| gjf_eval(n, alpha, x));
            let idx = JacobiIndex::symmetric(alpha / 2.0)?;
            for &x in &pts {
                interp = interp.max((u.eval(x) - gjf_eval(n, alpha, x)).abs());
                let want = frac_eigenvalue(n, alpha) * jacobi_eval(n, idx, x);
                ident = ident.max((u.frac_laplacian_at(x) - want).abs() / want.abs().max(1.0));
            }
        }
    }
    out.push(Check::bound("interpolation exact on GJF space", interp, 1e-11));
    out.push(Check::bound("fractional Laplacian of GJFs", ident, 1e-10));

    let grid = GjfGrid::new(0.8, 3)?;
    let tgrid = TimeGrid::new(0.5, 4)?;
    let u = SpaceTimeInterpolant::from_fn(&grid, &tgrid, |x, t| gjf_eval(2, 0.8, x) * t * t * t);
    let mut dt = 0.0_f64;
    for &x in &pts[..10] {
        for &t in &[0.05, 0.2, 0.45] {
            let want = gjf_eval(2, 0.8, x) * 3.0 * t * t;
            dt = dt.max((u.time_derivative_at(x, t)? - want).abs());
        }
    }
    out.push(Check::bound("time derivative exact on polynomials", dt, 1e-11));
    Ok(out)
}

/// KS statistics of both jump laws against the Euler exit oracle, from the
/// center of the unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct GateRow {
    pub alpha: f64,
    pub samples: usize,
    pub ks_printed: f64,
    pub ks_exit_law: f64,
}

/// Euler settings used as the reference exit law.
pub fn gate_euler_config() -> EulerConfig {
    EulerConfig::adaptive(1e-2, 0.02, 1e-12)
}

pub fn jump_law_gate(alpha: f64, samples: usize, seed: u64) -> Result<GateRow> {
    let cfg = gate_euler_config();
    let euler: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|p| {
            let mut rng = RngStream::new(seed, 0, p as u64, 0);
            euler_stable_exit(0.0, (-1.0, 1.0), alpha, &cfg, &mut rng).map(|s| s.location.abs())
        })
        .collect::<Result<_>>()?;
    let jumps = |law: JumpLaw| -> Result<Vec<f64>> {
        (0..samples)
            .into_par_iter()
            .map(|p| jump_from_uniform(law, 1.0, alpha, RngStream::new(seed, 1, p as u64, 0).uniform()))
            .collect()
    };
    let mut printed = jumps(JumpLaw::Printed)?;
    let mut exit = jumps(JumpLaw::ExitLaw)?;
    Ok(GateRow {
        alpha,
        samples,
        ks_printed: ks_statistic(&mut euler.clone(), &mut printed),
        ks_exit_law: ks_statistic(&mut euler.clone(), &mut exit),
    })
}

/// The law that passes at every row, preferring the default on ties.
pub fn gate_decision(rows: &[GateRow], threshold: f64) -> Option<JumpLaw> {
    let pass = |law| {
        rows.iter().all(|r| match law {
            JumpLaw::Printed => r.ks_printed < threshold,
            JumpLaw::ExitLaw => r.ks_exit_law < threshold,
        })
    };
    [JumpLaw::default(), JumpLaw::Printed, JumpLaw::ExitLaw]
        .into_iter()
        .find(|&l| pass(l))
}

/// Two-sample KS critical value at the 0.1% level for equal sizes n.
pub fn ks_critical(n: usize) -> f64 {
    1.95 * (2.0 / n as f64).sqrt()
}

pub fn walk_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut z = 0.0_f64;
    for &alpha in &[0.4, 1.0, 1.6, 2.0] {
        for &r in &[0.3, 1.0] {
            let got = occupation_zeta(0.0, BallGeometry::new(0.0, r)?, alpha)?;
            z = z.max(rel(got, c_tilde(alpha) * r.powf(alpha)));
        }
    }
    out.push(Check::bound("occupation zeta at the center", z, 1e-6));

    let paths = 20_000;
    let one = |_: f64| 1.0;
    let zero = |_: f64| 0.0;
    let spec = PoissonSpec {
        source: Some(&one),
        exterior: &zero,
        inner_samples: 1,
    };
    for &alpha in &[0.6, 1.4, 2.0] {
        let walker = PoissonWalker::new(alpha)?;
        for &x in &[0.0, 0.5] {
            let scores: Vec<f64> = (0..paths)
                .into_par_iter()
                .map(|p| walker.walk(x, &spec, &RngStream::new(11, 0, p as u64, 0)).map(|o| o.score))
                .collect::<Result<_>>()?;
            let (mean, se) = mean_se(&scores);
            let want = (1.0 - x * x).powf(alpha / 2.0) / gamma_fn(alpha + 1.0)?;
            let dev = (mean - want).abs();
            out.push(Check::new(
                format!("Feynman-Kac mean alpha={alpha} x={x}"),
                dev <= 3.0 * se + 1e-12,
                format!("{mean:.6} vs {want:.6}, deviation {dev:.1e}, standard error {se:.1e}"),
            ));
        }
    }

    let samples = 20_000;
    let limit = ks_critical(samples);
    let mut rows = Vec::new();
    for &alpha in &[0.6, 1.0, 1.4] {
        let row = jump_law_gate(alpha, samples, 5)?;
        out.push(Check::new(
            format!("jump law KS alpha={alpha}"),
            row.ks_exit_law < limit,
            format!(
                "exit_law {:.4}, printed {:.4} (limit {limit:.4} at n={samples})",
                row.ks_exit_law, row.ks_printed
            ),
        ));
        rows.push(row);
    }
    let decision = gate_decision(&rows, limit);
    out.push(Check::new(
        "active jump law",
        decision == Some(JumpLaw::default()),
        format!(
            "default {}, gate selects {}",
            JumpLaw::default(),
            decision.map_or("none".to_string(), |l| l.to_string())
        ),
    ));
    Ok(out)
}

fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn oracle_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut worst = 0.0_f64;
    for &alpha in &[0.6, 1.2] {
        let cfg = FracLapOracleConfig::new(alpha)?;
        let idx = JacobiIndex::symmetric(alpha / 2.0)?;
        for n in 0..=3 {
            for &x in &[-0.55, 0.1, 0.7] {
                let got = frac_laplacian_direct(|y| gjf_eval(n, alpha, y), x, &cfg)?;
                let want = frac_eigenvalue(n, alpha) * jacobi_eval(n, idx, x);
                worst = worst.max((got - want).abs() / want.abs().max(1.0));
            }
        }
    }
    out.push(Check::bound("direct fractional Laplacian on GJFs", worst, 1e-4));

    let alpha = 0.7;
    let c = gamma_fn(alpha + 1.0)?;
    let gal = galerkin_solve(move |_| c, alpha, 8)?;
    let dev = (gal.coefficients[0] - 1.0)
        .abs()
        .max(gal.coefficients[1..].iter().fold(0.0_f64, |m, v| m.max(v.abs())));
    out.push(Check::bound("Galerkin constant source", dev, 1e-11));

    let n = 200_000;
    for &alpha in &[0.8, 1.5] {
        let mut rng = RngStream::new(21, 0, 0, 0);
        let xs: Vec<f64> = (0..n).map(|_| stable_variate(alpha, &mut rng)).collect();
        for &xi in &[0.5, 1.0, 2.0] {
            let c: Vec<f64> = xs.iter().map(|x| (xi * x).cos()).collect();
            let (mean, se) = mean_se(&c);
            let want = (-f64::powf(xi, alpha)).exp();
            out.push(Check::new(
                format!("stable characteristic function alpha={alpha} xi={xi}"),
                (mean - want).abs() <= 3.0 * se,
                format!("{mean:.5} vs {want:.5}"),
            ));
        }
    }

    let alpha = 1.0;
    let cfg = gate_euler_config();
    let times: Vec<f64> = (0..20_000)
        .into_par_iter()
        .map(|p| {
            let mut rng = RngStream::new(31, 0, p as u64, 0);
            euler_stable_exit(0.0, (-1.0, 1.0), alpha, &cfg, &mut rng).map(|s| s.time)
        })
        .collect::<Result<_>>()?;
    let (mean, _) = mean_se(&times);
    out.push(Check::bound("Euler mean exit time", rel(mean, c_tilde(alpha)), 0.05));
    Ok(out)
}

/// Runs a suite and returns every check.
pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    Ok(match suite {
        Suite::Specfun => specfun_checks()?,
        Suite::Basis => basis_checks()?,
        Suite::Walk => walk_checks()?,
        Suite::Oracle => oracle_checks()?,
        Suite::All => {
            let mut all = specfun_checks()?;
            all.extend(basis_checks()?);
            all.extend(walk_checks()?);
            all.extend(oracle_checks()?);
            all
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for suite in [Suite::Specfun, Suite::Basis] {
            for c in run_suite(suite).unwrap() {
                assert!(c.passed, "{c}");
            }
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn gate_prefers_passing_law() {
        let row = |p, e| GateRow {
            alpha: 1.0,
            samples: 10,
            ks_printed: p,
            ks_exit_law: e,
        };
        assert_eq!(gate_decision(&[row(0.5, 0.001)], 0.01), Some(JumpLaw::ExitLaw));
        assert_eq!(gate_decision(&[row(0.001, 0.5)], 0.01), Some(JumpLaw::Printed));
        assert_eq!(gate_decision(&[row(0.5, 0.001), row(0.5, 0.2)], 0.01), None);
    }
}
