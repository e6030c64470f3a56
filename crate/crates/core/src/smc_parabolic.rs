//! Space-time spectral Monte Carlo iteration for
//! ∂_t u + (−Δ)^{α/2}u = f on (-1,1)×(0,T], u = 0 outside, u(·,0) = u₀.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use crate::error::{domain, Error, Result};
use crate::levy_walk::{Fn1, Fn2, JumpLaw, ParabolicSpec, ParabolicWalker, SourceTime};
use crate::oracles::golden_points;
use crate::smc_poisson::{capped_warnings, mean_scores, IterationReport};
use crate::spectral_basis::{check_alpha, st_interpolate, GjfGrid, SpaceTimeInterpolant, TimeGrid};

/// Initial data handed to the residual walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidualInitial {
    /// u₀ − u^{(k)}(·, 0): the residual of the current iterate at t = 0.
    #[default]
    Consistent,
    /// Zero initial data.
    Zero,
}

impl fmt::Display for ResidualInitial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualInitial::Consistent => "consistent",
            ResidualInitial::Zero => "zero",
        })
    }
}

impl FromStr for ResidualInitial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "consistent" => Ok(ResidualInitial::Consistent),
            "zero" => Ok(ResidualInitial::Zero),
            other => Err(Error::Config(format!("unknown residual_initial '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicConfig {
    pub alpha: f64,
    pub n_x: usize,
    pub n_t: usize,
    pub horizon: f64,
    /// Time subdivisions per walk, N.
    pub n_sub: usize,
    pub paths: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub jump_law: JumpLaw,
    pub source_time: SourceTime,
    pub residual_initial: ResidualInitial,
}

impl ParabolicConfig {
    pub fn new(alpha: f64, n_x: usize, n_t: usize, horizon: f64, paths: usize) -> Self {
        Self {
            alpha,
            n_x,
            n_t,
            horizon,
            n_sub: 64,
            paths,
            max_iter: 60,
            tol: 1e-12,
            seed: 0,
            jump_law: JumpLaw::default(),
            source_time: SourceTime::default(),
            residual_initial: ResidualInitial::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(domain("ParabolicConfig: horizon", self.horizon));
        }
        if self.n_sub == 0 || self.paths == 0 || self.max_iter == 0 {
            return Err(Error::Contract("n_sub, paths and max_iter must be at least 1".into()));
        }
        if self.n_t == 0 {
            return Err(Error::Contract("the time grid needs N_t >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(domain("ParabolicConfig: tol", self.tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ParabolicSolution {
    pub interpolant: SpaceTimeInterpolant,
    pub trace: Vec<IterationReport>,
    pub config: ParabolicConfig,
}

impl ParabolicSolution {
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        self.interpolant.eval(x, t)
    }

    pub fn final_report(&self) -> &IterationReport {
        self.trace.last().expect("at least one iteration")
    }

    pub fn warnings(&self) -> Vec<String> {
        capped_warnings(&self.trace)
    }
}

/// f − ∂_t u − (−Δ)^{α/2}u for a space-time interpolant u.
pub fn st_residual_source<'a>(
    f: Fn2<'a>,
    interp: &SpaceTimeInterpolant,
) -> Result<impl Fn(f64, f64) -> f64 + Sync + 'a> {
    let op = interp.operator()?;
    Ok(move |x: f64, t: f64| f(x, t) - op.eval(x, t))
}

/// 20×20 quasi-random cloud in (-1,1)×(0,T).
fn space_time_cloud(horizon: f64) -> Vec<(f64, f64)> {
    let xs = golden_points(20);
    let ts: Vec<f64> = (1..=20)
        .map(|k| horizon * (k as f64 * 0.754_877_666_246_692_7).fract())
        .collect();
    xs.iter().flat_map(|&x| ts.iter().map(move |&t| (x, t))).collect()
}

fn zero2(_: f64, _: f64) -> f64 {
    0.0
}

/// Runs the ST-SMC iteration.
pub fn stsmc_solve(
    f: Fn2<'_>,
    u0: Fn1<'_>,
    exact: Option<Fn2<'_>>,
    cfg: &ParabolicConfig,
) -> Result<ParabolicSolution> {
    cfg.validate()?;
    let start = Instant::now();
    let grid: Arc<GjfGrid> = GjfGrid::new(cfg.alpha, cfg.n_x)?;
    let tgrid: Arc<TimeGrid> = TimeGrid::new(cfg.horizon, cfg.n_t)?;
    let walker = ParabolicWalker::with_options(cfg.alpha, cfg.jump_law, cfg.source_time)?;
    let (nx, nt) = (grid.len(), tgrid.len());
    let mut probe: Vec<(f64, f64)> = grid
        .nodes
        .iter()
        .flat_map(|&x| tgrid.nodes.iter().map(move |&t| (x, t)))
        .collect();
    probe.extend(space_time_cloud(cfg.horizon));

    let mut u = SpaceTimeInterpolant::zero(&grid, &tgrid);
    let mut trace = Vec::new();
    for k in 1..=cfg.max_iter {
        let source = st_residual_source(f, &u)?;
        let snapshot = &u;
        let initial = |x: f64| match (k, cfg.residual_initial) {
            (1, _) | (_, ResidualInitial::Consistent) => u0(x) - snapshot.eval(x, 0.0),
            (_, ResidualInitial::Zero) => 0.0,
        };
        let spec = ParabolicSpec {
            source: Some(&source),
            exterior: &zero2,
            initial: &initial,
        };
        let (update, capped) = mean_scores(nx * nt, cfg.paths, cfg.seed, k, |idx, rng| {
            let (x, t) = (grid.nodes[idx / nt], tgrid.nodes[idx % nt]);
            Ok(walker.walk(x, t, cfg.n_sub, &spec, rng)?.score)
        })?;
        let values: Vec<Vec<f64>> = u
            .values
            .iter()
            .zip(update.chunks(nt))
            .map(|(row, eps)| row.iter().zip(eps).map(|(a, b)| a + b).collect())
            .collect();
        u = st_interpolate(&grid, &tgrid, &values)?;
        let max_update = update.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
        let e_inf = exact.map(|g| {
            probe
                .iter()
                .fold(0.0_f64, |m, &(x, t)| m.max((u.eval(x, t) - g(x, t)).abs()))
        });
        trace.push(IterationReport {
            k,
            max_update,
            e_inf,
            capped_path_rate: capped,
            elapsed: start.elapsed(),
        });
        if max_update < cfg.tol {
            break;
        }
    }
    Ok(ParabolicSolution {
        interpolant: u,
        trace,
        config: cfg.clone(),
    })
}
