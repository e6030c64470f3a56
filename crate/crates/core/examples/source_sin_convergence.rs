//! Spectral convergence in N_x for f = sin x, measured against a degree-100
//! Galerkin solution.

use fracsmc::runner::presets;
use fracsmc::smc_poisson::{smc_solve, PoissonConfig};

fn main() -> fracsmc::Result<()> {
    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "alpha", "N_x=2", "N_x=4", "N_x=6", "N_x=8");
    for alpha in [0.4, 1.2, 2.0] {
        let problem = presets::source_sin(alpha)?;
        print!("{alpha:>5.1}");
        for n_x in [2, 4, 6, 8] {
            let mut cfg = PoissonConfig::new(alpha, n_x, 100);
            cfg.max_iter = 40;
            let sol = smc_solve(&problem.source, problem.exact.as_deref(), &cfg)?;
            print!(" {:>10.2e}", sol.final_report().e_inf.unwrap_or(f64::NAN));
        }
        println!();
    }
    Ok(())
}
