//! Space-time SMC for u_t + (−Δ)^{α/2}u = f on (-1,1) × (0, 0.5] with
//! u = (1-x²)^{α/2}(x²+x+1) cos t.
//!
//! cargo run --example parabolic -- 2.0 256

use fracsmc::runner::presets;
use fracsmc::smc_parabolic::{stsmc_solve, ParabolicConfig};

fn main() -> fracsmc::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.4);
    let n_sub: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(if alpha == 2.0 { 256 } else { 64 });

    let problem = presets::u1_parabolic(alpha)?;
    let mut cfg = ParabolicConfig::new(alpha, 6, 6, 0.5, 100);
    cfg.n_sub = n_sub;
    cfg.tol = 1e-10;
    let sol = stsmc_solve(&problem.source, &problem.initial, problem.exact.as_deref(), &cfg)?;

    println!("alpha = {alpha}, N_x = N_t = 6, N_sub = {n_sub}");
    for r in &sol.trace {
        println!("k = {:>2}  update {:.2e}  E_inf {:.2e}", r.k, r.max_update, r.e_inf.unwrap_or(f64::NAN));
    }
    let exact = problem.exact.as_deref().expect("preset has a reference");
    println!("u(0.3, 0.5) = {:.12} (exact {:.12})", sol.eval(0.3, 0.5), exact(0.3, 0.5));
    Ok(())
}
