//! Independent brute-force references: the hypersingular-integral fractional
//! Laplacian, a diagonal GJF-Galerkin solver, Euler simulation of α-stable
//! paths, and error metrics.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::levy_walk::RngStream;
use crate::quad::tanh_sinh_floor;
use crate::spectral_basis::{check_alpha, frac_eigenvalue, gjf_series, jacobi_series};
use crate::specfun::{gamma, gamma_norm, jacobi_eval_all, jacobi_gauss, JacobiIndex};

/// C_{1,α} = α 2^{α-1} Γ((1+α)/2) / (√π Γ(1-α/2)).
pub fn frac_laplacian_constant(alpha: f64) -> f64 {
    alpha * 2f64.powf(alpha - 1.0) * gamma((1.0 + alpha) / 2.0) / (PI.sqrt() * gamma(1.0 - alpha / 2.0))
}

/// Settings of the singular-integral oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct FracLapOracleConfig {
    pub alpha: f64,
    /// Inner window, as a fraction of the distance from x to the boundary,
    /// below which the second difference is replaced by its even expansion.
    pub epsilon: f64,
    /// Radius beyond which u is taken to vanish.
    pub far_field_bound: f64,
    pub quad_tol: f64,
    pub c_d_alpha: f64,
}

impl FracLapOracleConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(domain("FracLapOracleConfig: alpha", alpha));
        }
        Ok(Self {
            alpha,
            epsilon: 1e-2,
            far_field_bound: 1.0,
            quad_tol: 1e-11,
            c_d_alpha: frac_laplacian_constant(alpha),
        })
    }
}

/// C_{1,α} p.v.∫ (u(x) - u(y)) / |x-y|^{1+α} dy for x ∈ (-1, 1), written as
/// C·∫₀^∞ (2u(x) - u(x+h) - u(x-h)) h^{-1-α} dh.
pub fn frac_laplacian_direct(u: impl Fn(f64) -> f64, x: f64, cfg: &FracLapOracleConfig) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(domain("frac_laplacian_direct: x", x));
    }
    let alpha = cfg.alpha;
    let ux = u(x);
    let second = |h: f64| 2.0 * ux - u(x + h) - u(x - h);
    let kernel = |h: f64| second(h) * h.powf(-1.0 - alpha);

    let near = 1.0 - x.abs();
    let far = 1.0 + x.abs();
    let h0 = cfg.epsilon * near;

    // D(h) ≈ a h² + b h⁴ on (0, h0]
    let d1 = second(h0);
    let d2 = second(0.5 * h0);
    let b = (d1 - 4.0 * d2) / (0.75 * h0.powi(4));
    let a = (d1 - b * h0.powi(4)) / (h0 * h0);
    let inner = a * h0.powf(2.0 - alpha) / (2.0 - alpha) + b * h0.powf(4.0 - alpha) / (4.0 - alpha);

    let tol = cfg.quad_tol;
    // rounding level of the second difference, integrated against h^{-1-α}
    let u_scale = (1..8)
        .flat_map(|k| [u(x + far * k as f64 / 8.0), u(x - far * k as f64 / 8.0)])
        .fold(ux.abs(), |m, v| m.max(v.abs()));
    let noise = |lo: f64, hi: f64| 64.0 * f64::EPSILON * u_scale * (lo.powf(-alpha) - hi.powf(-alpha)) / alpha;
    let integrate = |lo: f64, hi: f64| tanh_sinh_floor(kernel, lo, hi, tol, noise(lo, hi)).map_err(tolerance);
    let mid = integrate(h0, near)?;
    let outer = integrate(near, far)?;
    let bound = cfg.far_field_bound.max(far);
    let extra = if bound > far {
        integrate(far, bound)?.value
    } else {
        0.0
    };
    let tail = 2.0 * ux * bound.powf(-alpha) / alpha;
    let total = inner + mid.value + outer.value + extra + tail;
    Ok(cfg.c_d_alpha * total)
}

fn tolerance(e: Error) -> Error {
    match e {
        Error::Tolerance(m) => Error::Tolerance(format!("frac_laplacian_direct: {m}")),
        other => other,
    }
}

/// Coefficients of the GJF-Galerkin solution Σ û_m 𝒥_m^{α/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinSolution {
    pub alpha: f64,
    pub coefficients: Vec<f64>,
}

impl GalerkinSolution {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        gjf_series(&self.coefficients, self.alpha, x)
    }

    /// (−Δ)^{α/2} of the Galerkin solution, through the eigen-relation.
    pub fn frac_laplacian_at(&self, x: f64) -> f64 {
        let c: Vec<f64> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(m, u)| u * frac_eigenvalue(m, self.alpha))
            .collect();
        jacobi_series(&c, JacobiIndex { a: self.alpha / 2.0, b: self.alpha / 2.0 }, x)
    }
}

/// û_m = (f, 𝒥_m) / (λ_m γ_m), m ≤ N.
pub fn galerkin_solve(f: impl Fn(f64) -> f64, alpha: f64, n: usize) -> Result<GalerkinSolution> {
    check_alpha(alpha)?;
    let index = JacobiIndex::symmetric(alpha / 2.0)?;
    let rule = jacobi_gauss(n + 40, index);
    let mut proj = vec![0.0; n + 1];
    let mut p = Vec::with_capacity(n + 1);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let fx = f(x);
        jacobi_eval_all(n, index, x, &mut p);
        for (acc, pm) in proj.iter_mut().zip(&p) {
            *acc += w * fx * pm;
        }
    }
    let coefficients = proj
        .iter()
        .enumerate()
        .map(|(m, v)| v / (frac_eigenvalue(m, alpha) * gamma_norm(m, index)))
        .collect();
    Ok(GalerkinSolution {
        alpha,
        coefficients,
    })
}

/// A standard symmetric α-stable variate, E[e^{iξS}] = exp(−|ξ|^α), by the
/// Chambers-Mallows-Stuck transform.
pub fn stable_variate(alpha: f64, rng: &mut RngStream) -> f64 {
    let v = PI * (rng.uniform() - 0.5);
    let w = rng.exponential();
    if alpha == 1.0 {
        return v.tan();
    }
    if alpha == 2.0 {
        return 2.0 * v.sin() * w.sqrt();
    }
    (alpha * v).sin() / v.cos().powf(1.0 / alpha) * ((v - alpha * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Step control for the Euler path oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerConfig {
    /// Largest time step.
    pub dt: f64,
    /// When set to κ, steps shrink to (κ·dist)^α near the boundary.
    pub refine: Option<f64>,
    /// Smallest admissible step when refining.
    pub dt_min: f64,
    pub step_cap: usize,
}

impl EulerConfig {
    pub fn fixed(dt: f64) -> Self {
        Self {
            dt,
            refine: None,
            dt_min: dt,
            step_cap: 100_000_000,
        }
    }

    pub fn adaptive(dt: f64, kappa: f64, dt_min: f64) -> Self {
        Self {
            dt,
            refine: Some(kappa),
            dt_min,
            step_cap: 100_000_000,
        }
    }
}

/// First state of a simulated path outside (lo, hi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExitSample {
    pub location: f64,
    pub time: f64,
    pub steps: usize,
    pub capped: bool,
}

/// Simulates X_{t+dt} = X_t + dt^{1/α} S from x0 until it leaves (lo, hi).
pub fn euler_stable_exit(
    x0: f64,
    interval: (f64, f64),
    alpha: f64,
    cfg: &EulerConfig,
    rng: &mut RngStream,
) -> Result<ExitSample> {
    check_alpha(alpha)?;
    if !(cfg.dt > 0.0) {
        return Err(domain("euler_stable_exit: dt", cfg.dt));
    }
    let (lo, hi) = interval;
    if !(x0 > lo && x0 < hi) {
        return Err(domain("euler_stable_exit: x0", x0));
    }
    let mut x = x0;
    let mut time = 0.0;
    for steps in 1..=cfg.step_cap {
        let dt = match cfg.refine {
            Some(kappa) => {
                let dist = (x - lo).min(hi - x);
                (kappa * dist).powf(alpha).clamp(cfg.dt_min, cfg.dt)
            }
            None => cfg.dt,
        };
        x += dt.powf(1.0 / alpha) * stable_variate(alpha, rng);
        time += dt;
        if x <= lo || x >= hi {
            return Ok(ExitSample {
                location: x,
                time,
                steps,
                capped: false,
            });
        }
    }
    Ok(ExitSample {
        location: x,
        time,
        steps: cfg.step_cap,
        capped: true,
    })
}

/// max over points of |approx − exact|.
pub fn error_metrics(
    approx: impl Fn(f64) -> f64,
    exact: impl Fn(f64) -> f64,
    points: &[f64],
) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Contract("error_metrics: empty point set".into()));
    }
    Ok(points
        .iter()
        .map(|&x| (approx(x) - exact(x)).abs())
        .fold(0.0, f64::max))
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_statistic(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Quasi-random interior points from the golden-ratio sequence.
pub fn golden_points(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| 2.0 * (k as f64 * 0.618_033_988_749_894_8).fract() - 1.0)
        .collect()
}
