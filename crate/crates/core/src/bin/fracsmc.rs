use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fracsmc::runner::validate::{run_suite, Suite};
use fracsmc::runner::{exit_code, run_to_file, ExperimentConfig, THREADS_ENV};
use fracsmc::Error;

#[derive(Parser)]
#[command(version, about = "Spectral Monte Carlo solvers for the fractional Laplacian on (-1, 1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    /// Report path; overrides the config `output` key.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the experiment described by a config file.
    Run { config: PathBuf },
    /// Run an invariant suite: specfun, basis, walk, oracle or all.
    Validate { suite: String },
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code(err) as u8)
}

fn run(path: &PathBuf, cli: &Cli) -> Result<(), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::parse(&text)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output = Some(out.clone());
    }
    let outcome = run_to_file(&cfg, cli.threads)?;
    match &cfg.output {
        Some(p) => {
            let last = outcome.trace.last().expect("at least one iteration");
            println!(
                "{} iterations, max_update {:.3e}, e_inf {}; report written to {}",
                last.k,
                last.max_update,
                last.e_inf.map_or("n/a".into(), |e| format!("{e:.3e}")),
                p.display()
            );
        }
        None => print!("{}", outcome.report),
    }
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn validate(name: &str, threads: Option<usize>) -> Result<bool, Error> {
    let suite: Suite = name.parse()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let checks = pool.install(|| run_suite(suite))?;
    for c in &checks {
        println!("{c}");
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", checks.len());
    Ok(passed == checks.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run { config } => match run(config, &cli) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Validate { suite } => match validate(suite, cli.threads) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => fail(&e),
        },
    }
}
