//! The singular-integral fractional Laplacian against the closed form on
//! generalized Jacobi functions, and a Galerkin solve for a constant source.

use fracsmc::oracles::{frac_laplacian_direct, galerkin_solve, FracLapOracleConfig};
use fracsmc::specfun::{gamma_fn, jacobi_eval, JacobiIndex};
use fracsmc::spectral_basis::{frac_eigenvalue, gjf_eval};

fn main() -> fracsmc::Result<()> {
    let alpha = 1.0;
    let cfg = FracLapOracleConfig::new(alpha)?;
    let index = JacobiIndex::symmetric(alpha / 2.0)?;
    println!("alpha = {alpha}");
    for n in 0..4 {
        for &x in &[-0.7, 0.0, 0.45] {
            let direct = frac_laplacian_direct(|y| gjf_eval(n, alpha, y), x, &cfg)?;
            let closed = frac_eigenvalue(n, alpha) * jacobi_eval(n, index, x);
            println!("n = {n} x = {x:+.2}: direct {direct:+.12} closed form {closed:+.12}");
        }
    }

    let sol = galerkin_solve(|_| 1.0, alpha, 20)?;
    let exact = |x: f64| (1.0 - x * x).powf(alpha / 2.0) / gamma_fn(alpha + 1.0).unwrap_or(f64::NAN);
    println!("\nGalerkin degree {} for f = 1:", sol.degree());
    for &x in &[-0.5, 0.0, 0.9] {
        println!("  u({x:+.1}) = {:.15} vs {:.15}", sol.eval(x), exact(x));
    }
    Ok(())
}
