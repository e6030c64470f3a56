//! Walk-on-spheres estimates of the expected exit time, E τ = (1-x²)^{α/2}/Γ(α+1).
//!
//! cargo run --example poisson_walk -- 1.2 20000

use fracsmc::levy_walk::{PoissonSpec, PoissonWalker, RngStream};
use fracsmc::specfun::gamma_fn;

fn main() -> fracsmc::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1.2);
    let paths: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);

    let walker = PoissonWalker::new(alpha)?;
    let one = |_: f64| 1.0;
    let zero = |_: f64| 0.0;
    let spec = PoissonSpec {
        source: Some(&one),
        exterior: &zero,
        inner_samples: 4,
    };

    println!("alpha = {alpha}, {paths} paths per point");
    println!("{:>6} {:>10} {:>10} {:>9} {:>8}", "x", "estimate", "exact", "std.err", "steps");
    for (i, &x) in [-0.9, -0.5, 0.0, 0.3, 0.8].iter().enumerate() {
        let (mut s1, mut s2, mut steps) = (0.0, 0.0, 0usize);
        for p in 0..paths {
            let out = walker.walk(x, &spec, &RngStream::new(7, i as u64, p as u64, 0))?;
            s1 += out.score;
            s2 += out.score * out.score;
            steps += out.steps;
        }
        let n = paths as f64;
        let mean = s1 / n;
        let se = ((s2 / n - mean * mean).max(0.0) / n).sqrt();
        let exact = (1.0 - x * x).powf(alpha / 2.0) / gamma_fn(alpha + 1.0)?;
        println!(
            "{x:>6.2} {mean:>10.6} {exact:>10.6} {se:>9.2e} {:>8.2}",
            steps as f64 / n
        );
    }
    Ok(())
}
