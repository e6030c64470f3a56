//! Plain walk-on-spheres (one sweep, many paths) against SMC at a comparable
//! wall-clock budget.

use std::time::Instant;

use fracsmc::runner::presets;
use fracsmc::smc_poisson::{smc_solve, PoissonConfig};

fn main() -> fracsmc::Result<()> {
    let alpha = 0.4;
    let problem = presets::u1(alpha)?;

    let smc = smc_solve(&problem.source, problem.exact.as_deref(), &PoissonConfig::new(alpha, 2, 50))?;
    let last = smc.final_report();
    println!(
        "SMC: {} sweeps, E_inf {:.2e}, {:.1} ms",
        smc.trace.len(),
        last.e_inf.unwrap_or(f64::NAN),
        last.elapsed.as_secs_f64() * 1e3
    );

    for paths in [1_000, 10_000, 100_000] {
        let mut cfg = PoissonConfig::new(alpha, 2, paths);
        cfg.max_iter = 1;
        let start = Instant::now();
        let wos = smc_solve(&problem.source, problem.exact.as_deref(), &cfg)?;
        println!(
            "WOS: {paths:>6} paths, E_inf {:.2e}, {:.1} ms",
            wos.final_report().e_inf.unwrap_or(f64::NAN),
            start.elapsed().as_secs_f64() * 1e3
        );
    }
    Ok(())
}
