//! Interpolation in generalized Jacobi functions and the exact fractional
//! Laplacian of the interpolant, checked against the singular-integral oracle.

use fracsmc::oracles::{frac_laplacian_direct, FracLapOracleConfig};
use fracsmc::spectral_basis::{gjf_weight, GjfGrid, Interpolant1D};

fn main() -> fracsmc::Result<()> {
    let alpha = 1.3;
    let u = |x: f64| gjf_weight(alpha, x) * x.sin();
    let oracle = FracLapOracleConfig::new(alpha)?;

    println!("u = (1-x^2)^(alpha/2) sin x, alpha = {alpha}");
    println!("{:>4} {:>12} {:>12}", "N_x", "max |u-Iu|", "max |Lu-LIu|");
    for n_x in [2, 4, 8, 16] {
        let grid = GjfGrid::new(alpha, n_x)?;
        let iu = Interpolant1D::from_fn(&grid, u);
        let mut e_u = 0.0_f64;
        let mut e_l = 0.0_f64;
        for &x in &[-0.8, -0.3, 0.2, 0.65] {
            e_u = e_u.max((iu.eval(x) - u(x)).abs());
            let direct = frac_laplacian_direct(u, x, &oracle)?;
            e_l = e_l.max((iu.frac_laplacian_at(x) - direct).abs());
        }
        println!("{n_x:>4} {e_u:>12.3e} {e_l:>12.3e}");
    }
    Ok(())
}
