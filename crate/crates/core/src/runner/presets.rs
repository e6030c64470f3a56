//! Manufactured solutions and reference problems.

use crate::error::Result;
use crate::oracles::galerkin_solve;
use crate::spectral_basis::{gjf_weight, GjfGrid, Interpolant1D};

pub type Field1 = Box<dyn Fn(f64) -> f64 + Sync>;
pub type Field2 = Box<dyn Fn(f64, f64) -> f64 + Sync>;

/// Degree of the GJF projection used for sources of non-polynomial solutions.
pub const PROJECTION_DEGREE: usize = 40;
/// Degree of the Galerkin reference for the sine source.
pub const REFERENCE_DEGREE: usize = 100;

pub struct PoissonProblem {
    pub source: Field1,
    pub exact: Option<Field1>,
}

pub struct ParabolicProblem {
    pub source: Field2,
    pub initial: Field1,
    pub exact: Option<Field2>,
}

/// u = (1−x²)^{α/2} q(x).
fn weighted_fn(alpha: f64, q: fn(f64) -> f64) -> impl Fn(f64) -> f64 + Copy + Sync + 'static {
    move |x| gjf_weight(alpha, x) * q(x)
}

/// u = (1−x²)^{α/2} q(x) and (−Δ)^{α/2}u, through a GJF expansion of degree n.
fn weighted(alpha: f64, n: usize, q: fn(f64) -> f64) -> Result<(Field1, Field1)> {
    let grid = GjfGrid::new(alpha, n)?;
    let u = weighted_fn(alpha, q);
    let interp = Interpolant1D::from_fn(&grid, u);
    Ok((Box::new(u), Box::new(move |x| interp.frac_laplacian_at(x))))
}

fn quadratic(x: f64) -> f64 {
    x * x + x + 1.0
}

/// u₁ = (1−x²)^{α/2}(x²+x+1); its source is exact.
pub fn u1(alpha: f64) -> Result<PoissonProblem> {
    let (u, f) = weighted(alpha, 2, quadratic)?;
    Ok(PoissonProblem {
        source: f,
        exact: Some(u),
    })
}

/// u₂ = (1−x²)^{α/2} sin x; source from a degree-40 projection.
pub fn u2(alpha: f64) -> Result<PoissonProblem> {
    let (u, f) = weighted(alpha, PROJECTION_DEGREE, f64::sin)?;
    Ok(PoissonProblem {
        source: f,
        exact: Some(u),
    })
}

/// f = sin x with a Galerkin reference solution of degree 100.
pub fn source_sin(alpha: f64) -> Result<PoissonProblem> {
    let reference = galerkin_solve(f64::sin, alpha, REFERENCE_DEGREE)?;
    Ok(PoissonProblem {
        source: Box::new(f64::sin),
        exact: Some(Box::new(move |x| reference.eval(x))),
    })
}

fn polynomial(coeffs: &[f64]) -> impl Fn(f64) -> f64 + Sync + 'static {
    let c = coeffs.to_vec();
    move |x| c.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Polynomial source, no reference.
pub fn custom_poisson(coeffs: &[f64]) -> PoissonProblem {
    PoissonProblem {
        source: Box::new(polynomial(coeffs)),
        exact: None,
    }
}

/// u(x,t) = s(x)·cos t with s = (1−x²)^{α/2} q(x).
fn cosine_in_time(alpha: f64, n: usize, q: fn(f64) -> f64) -> Result<ParabolicProblem> {
    let (_, lap) = weighted(alpha, n, q)?;
    let s = weighted_fn(alpha, q);
    Ok(ParabolicProblem {
        source: Box::new(move |x, t| -s(x) * t.sin() + lap(x) * t.cos()),
        initial: Box::new(s),
        exact: Some(Box::new(move |x, t| s(x) * t.cos())),
    })
}

/// u₁(x,t) = (1−x²)^{α/2}(x²+x+1)cos t.
pub fn u1_parabolic(alpha: f64) -> Result<ParabolicProblem> {
    cosine_in_time(alpha, 2, quadratic)
}

/// u₂(x,t) = (1−x²)^{α/2} sin x cos t.
pub fn u2_parabolic(alpha: f64) -> Result<ParabolicProblem> {
    cosine_in_time(alpha, PROJECTION_DEGREE, f64::sin)
}

/// Polynomial source in x, constant in time, zero initial data.
pub fn custom_parabolic(coeffs: &[f64]) -> ParabolicProblem {
    let p = polynomial(coeffs);
    ParabolicProblem {
        source: Box::new(move |x, _| p(x)),
        initial: Box::new(|_| 0.0),
        exact: None,
    }
}
