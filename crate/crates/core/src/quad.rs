//! Numerical integration helpers: double-exponential (tanh-sinh) quadrature
//! for integrands with endpoint singularities, and fixed Gauss-Legendre panels.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::specfun::QuadratureRule;

/// Value of an integral together with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
}

const MAX_LEVEL: usize = 11;
const MIN_LEVEL: usize = 3;
// largest π/2·sinh(t) before the node distance to the endpoint underflows
const V_MAX: f64 = 680.0;

/// ∫ₐᵇ f by tanh-sinh quadrature, refined until successive levels agree to
/// `tol` relative to ∫|f|.
///
/// Nodes close to an endpoint are formed as `a + δ` or `b - δ` with δ computed
/// directly, so integrands singular at an endpoint located at 0 are sampled
/// without cancellation.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadEstimate> {
    tanh_sinh_floor(f, a, b, tol, 0.0)
}

/// [`tanh_sinh`] that also accepts a level change below `floor`, for
/// integrands that are rounding noise around zero.
pub fn tanh_sinh_floor(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, floor: f64) -> Result<QuadEstimate> {
    if a == b {
        return Ok(QuadEstimate {
            value: 0.0,
            error: 0.0,
        });
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Contract(format!("tanh_sinh: bad interval [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    let t_max = (V_MAX / FRAC_PI_2).asinh();

    // f at parameter t, times the transformation weight
    let term = |t: f64| -> Result<(f64, f64)> {
        let v = FRAC_PI_2 * t.abs().sinh();
        let ch = v.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (ch * ch);
        if w == 0.0 {
            return Ok((0.0, 0.0));
        }
        let delta = half * (-v).exp() / ch;
        let x = if t < 0.0 { a + delta } else { b - delta };
        let x = if t == 0.0 { a + half } else { x };
        if x <= a || x >= b {
            return Ok((0.0, 0.0));
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite(format!("integrand at x={x}")));
        }
        Ok((w * fx, w * fx.abs()))
    };

    let (mut sum, mut abs_sum) = term(0.0)?;
    let mut h = 1.0;
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        let (p, pa) = term(t)?;
        let (m, ma) = term(-t)?;
        sum += p + m;
        abs_sum += pa + ma;
        k += 1;
    }
    let mut estimate = sum * h;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            let (p, pa) = term(t)?;
            let (m, ma) = term(-t)?;
            sum += p + m;
            abs_sum += pa + ma;
            k += 2;
        }
        let next = sum * h;
        let err = (next - estimate).abs();
        estimate = next;
        let scale = abs_sum * h;
        if level >= MIN_LEVEL && err <= (tol * scale).max(floor).max(f64::MIN_POSITIVE) {
            return Ok(QuadEstimate {
                value: estimate,
                error: err,
            });
        }
        if level == MAX_LEVEL {
            return Err(Error::Tolerance(format!(
                "tanh_sinh on [{a}, {b}]: estimate {estimate:e}, change {err:e}"
            )));
        }
    }
    unreachable!()
}

/// Applies a reference Gauss-Legendre rule on (-1,1) to the panel [a, b].
pub fn gauss_panel(rule: &QuadratureRule, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}
