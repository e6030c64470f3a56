//! Drives an experiment from config text and prints the CSV report.

use fracsmc::runner::{run, ExperimentConfig};

const CONFIG: &str = "
# u2 = (1-x^2)^(alpha/2) sin x
preset = u2
alpha = 1.5
n_x = 10
paths = 60
max_iter = 15
seed = 11
";

fn main() {
    let cfg = match ExperimentConfig::parse(CONFIG) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("bad config: {e}");
            std::process::exit(2);
        }
    };
    match run(&cfg, None) {
        Ok(out) => print!("{}", out.report),
        Err(e) => {
            eprintln!("run failed: {e}");
            std::process::exit(fracsmc::runner::exit_code(&e));
        }
    }
}
