//! Experiment driver: configs, presets, CSV convergence reports and the
//! validation suites used by the `fracsmc` binary.

pub mod config;
pub mod presets;
pub mod validate;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::smc_parabolic::stsmc_solve;
use crate::smc_poisson::{smc_solve, IterationReport};

pub use config::{Equation, ExperimentConfig, Preset};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "FRACSMC_THREADS";

pub const CSV_HEADER: &str = "k,max_update,e_inf,capped_path_rate,elapsed_ms";

/// Exit status for a failed run: 2 for configuration problems, 3 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => 2,
        _ => 3,
    }
}

/// Solver trace plus the rendered report.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub trace: Vec<IterationReport>,
    pub warnings: Vec<String>,
    pub report: String,
}

/// Renders the CSV report: config echo, header, one row per iteration and
/// trailing warning comments.
pub fn render_report(cfg: &ExperimentConfig, trace: &[IterationReport], warnings: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", cfg.to_echo());
    let _ = writeln!(s, "{CSV_HEADER}");
    for r in trace {
        let e = r.e_inf.map_or(String::new(), |e| format!("{e:.16e}"));
        let ms = if cfg.timing { r.elapsed.as_secs_f64() * 1e3 } else { 0.0 };
        let _ = writeln!(
            s,
            "{},{:.16e},{e},{:.16e},{ms:.16e}",
            r.k, r.max_update, r.capped_path_rate
        );
    }
    for w in warnings {
        let _ = writeln!(s, "# warning: {w}");
    }
    s
}

/// Solves the configured problem on the current rayon pool.
pub fn execute(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let (trace, warnings) = match cfg.equation {
        Equation::Poisson => {
            let problem = match cfg.preset {
                Preset::U1 => presets::u1(cfg.alpha)?,
                Preset::U2 => presets::u2(cfg.alpha)?,
                Preset::SourceSin => presets::source_sin(cfg.alpha)?,
                Preset::Custom => presets::custom_poisson(&cfg.source_coeffs),
                other => return Err(Error::Config(format!("preset {other} is not a Poisson problem"))),
            };
            let sol = smc_solve(&problem.source, problem.exact.as_deref(), &cfg.poisson())?;
            let w = sol.warnings();
            (sol.trace, w)
        }
        Equation::Parabolic => {
            let problem = match cfg.preset {
                Preset::U1Parabolic => presets::u1_parabolic(cfg.alpha)?,
                Preset::U2Parabolic => presets::u2_parabolic(cfg.alpha)?,
                Preset::Custom => presets::custom_parabolic(&cfg.source_coeffs),
                other => return Err(Error::Config(format!("preset {other} is not a parabolic problem"))),
            };
            let sol = stsmc_solve(
                &problem.source,
                &problem.initial,
                problem.exact.as_deref(),
                &cfg.parabolic(),
            )?;
            let w = sol.warnings();
            (sol.trace, w)
        }
    };
    let report = render_report(cfg, &trace, &warnings);
    Ok(RunOutcome {
        trace,
        warnings,
        report,
    })
}

/// Solves on a dedicated pool of `threads` workers (all cores when `None`).
pub fn run(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<RunOutcome> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| execute(cfg))
}

/// Runs and writes the report to `cfg.output` when set.
pub fn run_to_file(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<RunOutcome> {
    let out = run(cfg, threads)?;
    if let Some(path) = &cfg.output {
        write_report(path, &out.report)?;
    }
    Ok(out)
}

fn write_report(path: &Path, report: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, report).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}
