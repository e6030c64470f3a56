//! Jacobi-Gauss rules, the incomplete beta function B(x; a, b) and its inverse.

use fracsmc::specfun::{gamma_fn, incomplete_beta, inverse_incomplete_beta, jacobi_gauss, JacobiIndex};

fn main() -> fracsmc::Result<()> {
    let alpha = 0.8;
    let index = JacobiIndex::symmetric(alpha / 2.0)?;
    let rule = jacobi_gauss(6, index);
    println!("Jacobi-Gauss rule, weight (1-x^2)^{}:", alpha / 2.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        println!("  x = {x:+.15}  w = {w:.15}");
    }

    // ∫ ω = 2^{2a+1} Γ(a+1)² / Γ(2a+2) with a = α/2
    let a = alpha / 2.0;
    let exact = 2f64.powf(2.0 * a + 1.0) * gamma_fn(a + 1.0)?.powi(2) / gamma_fn(2.0 * a + 2.0)?;
    let mass = rule.integrate(|_| 1.0);
    println!("mass {mass:.15} vs closed form {exact:.15}");

    println!("\nincomplete beta round trip, a = {a}, b = {}", 1.0 - a);
    for &x in &[1e-8, 0.1, 0.5, 0.9, 1.0 - 1e-8] {
        let y = incomplete_beta(x, a, 1.0 - a)?;
        let back = inverse_incomplete_beta(y, a, 1.0 - a)?;
        println!("  x = {x:.3e}  B = {y:.15}  inverse = {back:.3e}");
    }
    Ok(())
}
