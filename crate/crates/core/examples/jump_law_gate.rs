//! Compares the two candidate jump laws against exit positions of an
//! Euler-discretized stable process leaving (-1, 1) from the origin.
//!
//! cargo run --example jump_law_gate -- 100000

use fracsmc::runner::validate::{gate_decision, jump_law_gate, ks_critical};

fn main() -> fracsmc::Result<()> {
    let samples: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let threshold = 0.01_f64.max(ks_critical(samples));
    println!("{samples} samples, KS threshold {threshold:.4}");
    println!("{:>5} {:>10} {:>10}", "alpha", "printed", "exit_law");
    let mut rows = Vec::new();
    for alpha in [0.6, 1.0, 1.4] {
        let row = jump_law_gate(alpha, samples, 2024)?;
        println!("{alpha:>5.1} {:>10.4} {:>10.4}", row.ks_printed, row.ks_exit_law);
        rows.push(row);
    }
    match gate_decision(&rows, threshold) {
        Some(law) => println!("passing law: {law}"),
        None => println!("no law passes at every alpha"),
    }
    Ok(())
}
