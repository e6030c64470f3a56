//! Exit-jump sampling for a symmetric α-stable process leaving a ball.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::specfun::{beta, inverse_beta_masses};

use super::rng::RngStream;

/// Which formula turns ω ~ U(0,1) into a jump distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JumpLaw {
    /// J = r / sqrt(B(1-α/2, α/2) - B⁻¹(πω/sin(πα/2); 1-α/2, α/2)), as printed.
    Printed,
    /// J = r / sqrt(1 - B⁻¹(πω/sin(πα/2); 1-α/2, α/2)), the exit law from the
    /// ball center, i.e. r²/J² ~ Beta(α/2, 1-α/2).
    #[default]
    ExitLaw,
}

impl fmt::Display for JumpLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JumpLaw::Printed => "printed",
            JumpLaw::ExitLaw => "exit_law",
        })
    }
}

impl FromStr for JumpLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(JumpLaw::Printed),
            "exit_law" => Ok(JumpLaw::ExitLaw),
            other => Err(Error::Config(format!("unknown jump law '{other}'"))),
        }
    }
}

/// Jump distance for a given uniform ω ∈ (0,1).
pub fn jump_from_uniform(law: JumpLaw, r: f64, alpha: f64, omega: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(domain("sample_jump: alpha", alpha));
    }
    if !(r > 0.0) {
        return Err(domain("sample_jump: r", r));
    }
    if alpha == 2.0 {
        return Ok(r);
    }
    let (a, b) = (1.0 - alpha / 2.0, alpha / 2.0);
    let total = PI / (PI * alpha / 2.0).sin();
    let (w, wc) = inverse_beta_masses(omega * total, (1.0 - omega) * total, a, b);
    match law {
        JumpLaw::ExitLaw => Ok(r / wc.sqrt()),
        JumpLaw::Printed => Ok(r / (beta(a, b) - w).sqrt()),
    }
}

/// Samples a jump distance with the given law.
pub fn sample_jump_with(law: JumpLaw, r: f64, alpha: f64, rng: &mut RngStream) -> Result<f64> {
    jump_from_uniform(law, r, alpha, rng.uniform())
}

/// Samples a jump distance with the default law.
pub fn sample_jump(r: f64, alpha: f64, rng: &mut RngStream) -> Result<f64> {
    sample_jump_with(JumpLaw::default(), r, alpha, rng)
}

/// ±1 with probability 1/2 each.
pub fn sample_direction_1d(rng: &mut RngStream) -> f64 {
    if rng.uniform() < 0.5 {
        -1.0
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_formula_limits() {
        let j = jump_from_uniform(JumpLaw::Printed, 1.0, 1.0, 1e-15).unwrap();
        assert!((j - 1.0 / PI.sqrt()).abs() < 1e-6);
        let j = jump_from_uniform(JumpLaw::Printed, 1.0, 1.0, 1.0 - 1e-12).unwrap();
        assert!((j - 1.0 / (PI - 1.0).sqrt()).abs() < 1e-5);
    }

    #[test]
    fn linear_scaling() {
        for law in [JumpLaw::Printed, JumpLaw::ExitLaw] {
            for &w in &[0.1, 0.5, 0.93] {
                let a = jump_from_uniform(law, 0.3, 0.7, w).unwrap();
                let b = jump_from_uniform(law, 0.6, 0.7, w).unwrap();
                assert!((b - 2.0 * a).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn exit_law_lands_outside() {
        for &alpha in &[0.2, 0.6, 1.0, 1.4, 1.9] {
            for i in 1..100 {
                let w = i as f64 / 100.0;
                assert!(jump_from_uniform(JumpLaw::ExitLaw, 1.0, alpha, w).unwrap() >= 1.0);
            }
        }
    }

    #[test]
    fn exit_law_median_alpha_one() {
        // r²/J² ~ Beta(1/2,1/2), an arcsine law with median 1/2
        let j = jump_from_uniform(JumpLaw::ExitLaw, 1.0, 1.0, 0.5).unwrap();
        assert!((j - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn alpha_two_and_domain() {
        assert_eq!(jump_from_uniform(JumpLaw::ExitLaw, 0.4, 2.0, 0.3).unwrap(), 0.4);
        assert!(jump_from_uniform(JumpLaw::ExitLaw, 0.4, 2.5, 0.3).is_err());
        assert!(jump_from_uniform(JumpLaw::ExitLaw, 0.4, 0.0, 0.3).is_err());
    }

    #[test]
    fn fair_coin() {
        let mut rng = RngStream::new(11, 0, 0, 0);
        let n = 1_000_000;
        let s: f64 = (0..n).map(|_| sample_direction_1d(&mut rng)).sum();
        assert!((s / n as f64).abs() < 4.0 / (n as f64).sqrt());
    }
}
