//! Path estimators: the walk-on-spheres Poisson functional and the
//! fixed-radius parabolic functional with the trapezoid source integral.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{domain, Error, Result};

use super::greens::{c_tilde, fixed_radius};
use super::interior::{interior_table, InteriorTable};
use super::jump::{jump_from_uniform, sample_direction_1d, JumpLaw};
use super::rng::{Purpose, RngStream};

/// Scalar callback of one variable.
pub type Fn1<'a> = &'a (dyn Fn(f64) -> f64 + Sync);
/// Scalar callback of (x, t).
pub type Fn2<'a> = &'a (dyn Fn(f64, f64) -> f64 + Sync);

/// Default step cap for Poisson walks.
pub const DEFAULT_STEP_CAP: usize = 100_000;

/// One simulated path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkOutcome {
    pub score: f64,
    pub steps: usize,
    pub exit_point: f64,
    pub exited: bool,
}

/// Source and exterior data of the Poisson functional.
#[derive(Clone, Copy)]
pub struct PoissonSpec<'a> {
    pub source: Option<Fn1<'a>>,
    pub exterior: Fn1<'a>,
    pub inner_samples: usize,
}

/// Source, exterior and initial data of the parabolic functional.
#[derive(Clone, Copy)]
pub struct ParabolicSpec<'a> {
    pub source: Option<Fn2<'a>>,
    pub exterior: Fn2<'a>,
    pub initial: Fn1<'a>,
}

/// Walk-on-spheres estimator for (−Δ)^{α/2}u = f in (-1,1), u = g outside.
#[derive(Debug, Clone)]
pub struct PoissonWalker {
    pub alpha: f64,
    pub shrink: f64,
    pub step_cap: usize,
    pub jump_law: JumpLaw,
    table: Arc<InteriorTable>,
    c_tilde: f64,
}

impl PoissonWalker {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_options(alpha, 1.0, DEFAULT_STEP_CAP, JumpLaw::default())
    }

    pub fn with_options(alpha: f64, shrink: f64, step_cap: usize, jump_law: JumpLaw) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(domain("PoissonWalker: alpha", alpha));
        }
        if !(shrink > 0.0 && shrink <= 1.0) {
            return Err(domain("PoissonWalker: shrink", shrink));
        }
        if step_cap == 0 {
            return Err(Error::Contract("step cap must be positive".into()));
        }
        Ok(Self {
            alpha,
            shrink,
            step_cap,
            jump_law,
            table: interior_table(0.0, alpha)?,
            c_tilde: c_tilde(alpha),
        })
    }

    /// ζ at the center of a ball of radius r.
    pub fn zeta(&self, r: f64) -> f64 {
        self.c_tilde * r.powf(self.alpha)
    }

    /// One realization of g(X_L) + Σ_{ℓ<L} ζ(X_ℓ)·(1/M₁)Σ_j f(Y_{ℓ+1}^j).
    pub fn walk(&self, x0: f64, spec: &PoissonSpec<'_>, rng: &RngStream) -> Result<WalkOutcome> {
        if !(x0.abs() < 1.0) {
            return Err(domain("poisson_walk: x0", x0));
        }
        let mut x = x0;
        let mut score = 0.0;
        let mut step = 0usize;
        loop {
            if step >= self.step_cap {
                return Err(Error::CappedWalk {
                    partial_score: score,
                    steps: step,
                });
            }
            let dist = 1.0 - x.abs();
            let r = self.shrink * dist;
            if let Some(f) = spec.source {
                let m1 = spec.inner_samples.max(1);
                let mut inner = rng.substream(step as u64, Purpose::Interior);
                let mut acc = 0.0;
                for _ in 0..m1 {
                    acc += f(x + r * self.table.sample_unit(&mut inner));
                }
                score += self.zeta(r) * acc / m1 as f64;
            }
            let omega = rng.substream(step as u64, Purpose::Jump).uniform();
            let dir = sample_direction_1d(&mut rng.substream(step as u64, Purpose::Direction));
            step += 1;
            let jump = jump_from_uniform(self.jump_law, r, self.alpha, omega)?;
            let toward_near = dir == x.signum() || (x == 0.0 && dir > 0.0);
            x = if self.alpha == 2.0 && self.shrink == 1.0 && toward_near {
                // classical walk: the exit lands exactly on the boundary
                dir
            } else {
                x + dir * jump
            };
            if x.abs() >= 1.0 {
                let g = (spec.exterior)(x);
                score += g;
                if !score.is_finite() {
                    return Err(Error::NonFinite(format!("poisson walk score at x0={x0}")));
                }
                return Ok(WalkOutcome {
                    score,
                    steps: step,
                    exit_point: x,
                    exited: true,
                });
            }
        }
    }
}

/// Convenience wrapper building a default walker.
pub fn poisson_walk(x0: f64, spec: &PoissonSpec<'_>, alpha: f64, rng: &RngStream) -> Result<WalkOutcome> {
    PoissonWalker::new(alpha)?.walk(x0, spec, rng)
}

/// Time argument of the source along a parabolic path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourceTime {
    /// f(X_ℓ, t_n − t_ℓ): time left to the terminal time, on every path.
    #[default]
    Remaining,
    /// f(X_ℓ, t_L − t_ℓ): measured from the last in-domain step, as printed.
    Printed,
}

impl fmt::Display for SourceTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SourceTime::Remaining => "remaining",
            SourceTime::Printed => "printed",
        })
    }
}

impl FromStr for SourceTime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "remaining" => Ok(SourceTime::Remaining),
            "printed" => Ok(SourceTime::Printed),
            other => Err(Error::Config(format!("unknown source time '{other}'"))),
        }
    }
}

/// Fixed-radius walk estimator for ∂_t u + (−Δ)^{α/2}u = f.
#[derive(Debug, Clone, Copy)]
pub struct ParabolicWalker {
    pub alpha: f64,
    pub jump_law: JumpLaw,
    pub source_time: SourceTime,
}

impl ParabolicWalker {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_options(alpha, JumpLaw::default(), SourceTime::default())
    }

    pub fn with_options(alpha: f64, jump_law: JumpLaw, source_time: SourceTime) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(domain("ParabolicWalker: alpha", alpha));
        }
        Ok(Self {
            alpha,
            jump_law,
            source_time,
        })
    }

    /// One realization of Ψ at (x0, t_n) with N = `n_sub` equal time steps.
    pub fn walk(
        &self,
        x0: f64,
        t_n: f64,
        n_sub: usize,
        spec: &ParabolicSpec<'_>,
        rng: &RngStream,
    ) -> Result<WalkOutcome> {
        if !(t_n > 0.0) {
            return Err(domain("parabolic_walk: t_n", t_n));
        }
        if n_sub == 0 {
            return Err(Error::Contract("parabolic_walk: N must be at least 1".into()));
        }
        if !(x0.abs() < 1.0) {
            return Err(domain("parabolic_walk: x0", x0));
        }
        let dt = t_n / n_sub as f64;
        let r = fixed_radius(dt, self.alpha)?;
        let mut centers = Vec::with_capacity(n_sub + 1);
        centers.push(x0);
        let mut x = x0;
        let mut exit_point = f64::NAN;
        let mut exited = false;
        for step in 0..n_sub {
            let omega = rng.substream(step as u64, Purpose::Jump).uniform();
            let dir = sample_direction_1d(&mut rng.substream(step as u64, Purpose::Direction));
            x += dir * jump_from_uniform(self.jump_law, r, self.alpha, omega)?;
            if x.abs() >= 1.0 {
                exited = true;
                exit_point = x;
                break;
            }
            centers.push(x);
        }
        let last = centers.len() - 1;
        let x_last = centers[last];
        let t_last = last as f64 * dt;
        let mut quad = 0.0;
        if let (Some(f), true) = (spec.source, last > 0) {
            // time argument of the source at center ℓ
            let t_end = match self.source_time {
                SourceTime::Remaining => t_n,
                SourceTime::Printed => t_last,
            };
            let mut inner = 0.0;
            for (l, &c) in centers.iter().enumerate().take(last).skip(1) {
                inner += f(c, t_end - l as f64 * dt);
            }
            quad = 0.5 * dt * (f(x0, t_end) + 2.0 * inner + f(x_last, t_end - t_last));
        }
        let payoff = if exited {
            (spec.exterior)(x_last, t_n - t_last)
        } else {
            (spec.initial)(x_last)
        };
        let score = payoff + quad;
        if !score.is_finite() {
            return Err(Error::NonFinite(format!("parabolic walk score at ({x0}, {t_n})")));
        }
        Ok(WalkOutcome {
            score,
            steps: last,
            exit_point: if exited { exit_point } else { x_last },
            exited,
        })
    }
}

/// Convenience wrapper with the default jump law.
pub fn parabolic_walk(
    x0: f64,
    t_n: f64,
    n_sub: usize,
    spec: &ParabolicSpec<'_>,
    alpha: f64,
    rng: &RngStream,
) -> Result<WalkOutcome> {
    ParabolicWalker::new(alpha)?.walk(x0, t_n, n_sub, spec, rng)
}
