//! Line-oriented `key = value` experiment configs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::levy_walk::{JumpLaw, SourceTime};
use crate::smc_parabolic::{ParabolicConfig, ResidualInitial};
use crate::smc_poisson::PoissonConfig;
use crate::spectral_basis::check_alpha;

const ECHO_PREFIX: &str = "# config: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Poisson,
    Parabolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    U1,
    U2,
    U1Parabolic,
    U2Parabolic,
    SourceSin,
    Custom,
}

impl Preset {
    fn equation(self) -> Option<Equation> {
        match self {
            Preset::U1 | Preset::U2 | Preset::SourceSin => Some(Equation::Poisson),
            Preset::U1Parabolic | Preset::U2Parabolic => Some(Equation::Parabolic),
            Preset::Custom => None,
        }
    }
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($variant:path => $name:literal),+) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::Config(format!(concat!("unknown ", $what, " '{}'"), other))),
                }
            }
        }
    };
}

keyword_enum!(Equation, "equation", Equation::Poisson => "poisson", Equation::Parabolic => "parabolic");
keyword_enum!(Preset, "preset",
    Preset::U1 => "u1", Preset::U2 => "u2", Preset::U1Parabolic => "u1_parabolic",
    Preset::U2Parabolic => "u2_parabolic", Preset::SourceSin => "source_sin", Preset::Custom => "custom");

/// One experiment: problem preset, discretization and Monte Carlo budget.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub equation: Equation,
    pub preset: Preset,
    pub alpha: f64,
    pub n_x: usize,
    pub n_t: usize,
    pub t_final: f64,
    pub n_sub: usize,
    pub paths: usize,
    pub inner_samples: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub shrink: f64,
    pub jump_law: JumpLaw,
    pub source_time: SourceTime,
    pub residual_initial: ResidualInitial,
    /// Whether the report carries wall-clock times.
    pub timing: bool,
    /// Monomial coefficients of the custom source, lowest degree first.
    pub source_coeffs: Vec<f64>,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(equation: Equation, preset: Preset, alpha: f64, n_x: usize, paths: usize) -> Self {
        Self {
            equation,
            preset,
            alpha,
            n_x,
            n_t: 4,
            t_final: 0.5,
            n_sub: 64,
            paths,
            inner_samples: 32,
            max_iter: 60,
            tol: 1e-12,
            seed: 0,
            shrink: 1.0,
            jump_law: JumpLaw::default(),
            source_time: SourceTime::default(),
            residual_initial: ResidualInitial::default(),
            timing: true,
            source_coeffs: Vec::new(),
            output: None,
        }
    }

    /// Parses the file format: one `key = value` per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Self::from_pairs(pairs)
    }

    /// The single-line echo written at the top of every report.
    pub fn to_echo(&self) -> String {
        let body: Vec<String> = self.pairs().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{ECHO_PREFIX}{}", body.join("; "))
    }

    pub fn from_echo(line: &str) -> Result<Self> {
        let body = line
            .strip_prefix(ECHO_PREFIX)
            .ok_or_else(|| Error::Config("not a config echo line".into()))?;
        let pairs = body
            .split("; ")
            .map(|kv| {
                kv.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| Error::Config(format!("bad echo entry '{kv}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(pairs)
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("equation", self.equation.to_string()),
            ("preset", self.preset.to_string()),
            ("alpha", format!("{:?}", self.alpha)),
            ("n_x", self.n_x.to_string()),
            ("n_t", self.n_t.to_string()),
            ("t_final", format!("{:?}", self.t_final)),
            ("n_sub", self.n_sub.to_string()),
            ("source_time", self.source_time.to_string()),
            ("residual_initial", self.residual_initial.to_string()),
            ("inner_samples", self.inner_samples.to_string()),
            ("shrink", format!("{:?}", self.shrink)),
            ("paths", self.paths.to_string()),
            ("max_iter", self.max_iter.to_string()),
            ("tol", format!("{:?}", self.tol)),
            ("seed", self.seed.to_string()),
            ("jump_law", self.jump_law.to_string()),
            ("timing", self.timing.to_string()),
        ];
        if !self.source_coeffs.is_empty() {
            let c: Vec<String> = self.source_coeffs.iter().map(|c| format!("{c:?}")).collect();
            out.push(("source_coeffs", c.join(",")));
        }
        if let Some(p) = &self.output {
            out.push(("output", p.display().to_string()));
        }
        out
    }

    fn from_pairs(pairs: Vec<(String, String)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if map.insert(k.clone(), v).is_some() {
                return Err(Error::Config(format!("duplicate key '{k}'")));
            }
        }
        let mut take = |k: &str| map.remove(k);
        let required = |v: Option<String>, k: &str| v.ok_or_else(|| Error::Config(format!("missing key '{k}'")));

        let preset: Preset = required(take("preset"), "preset")?.parse()?;
        let equation: Equation = match (take("equation"), preset.equation()) {
            (Some(e), _) => e.parse()?,
            (None, Some(e)) => e,
            (None, None) => return Err(Error::Config("missing key 'equation'".into())),
        };
        let alpha = num(&required(take("alpha"), "alpha")?, "alpha")?;
        let n_x = num(&required(take("n_x"), "n_x")?, "n_x")?;
        let paths = num(&required(take("paths"), "paths")?, "paths")?;
        let mut cfg = Self::new(equation, preset, alpha, n_x, paths);
        if let Some(v) = take("n_t") {
            cfg.n_t = num(&v, "n_t")?;
        }
        if let Some(v) = take("t_final") {
            cfg.t_final = num(&v, "t_final")?;
        }
        if let Some(v) = take("n_sub") {
            cfg.n_sub = num(&v, "n_sub")?;
        }
        if let Some(v) = take("inner_samples") {
            cfg.inner_samples = num(&v, "inner_samples")?;
        }
        if let Some(v) = take("max_iter") {
            cfg.max_iter = num(&v, "max_iter")?;
        }
        if let Some(v) = take("tol") {
            cfg.tol = num(&v, "tol")?;
        }
        if let Some(v) = take("seed") {
            cfg.seed = num(&v, "seed")?;
        }
        if let Some(v) = take("shrink") {
            cfg.shrink = num(&v, "shrink")?;
        }
        if let Some(v) = take("jump_law") {
            cfg.jump_law = v.parse()?;
        }
        if let Some(v) = take("source_time") {
            cfg.source_time = v.parse()?;
        }
        if let Some(v) = take("residual_initial") {
            cfg.residual_initial = v.parse()?;
        }
        if let Some(v) = take("timing") {
            cfg.timing = num(&v, "timing")?;
        }
        if let Some(v) = take("source_coeffs") {
            cfg.source_coeffs = v
                .split(',')
                .map(|c| num(c.trim(), "source_coeffs"))
                .collect::<Result<_>>()?;
        }
        if let Some(v) = take("output") {
            cfg.output = Some(PathBuf::from(v));
        }
        if let Some(k) = map.keys().next() {
            return Err(Error::Config(format!("unknown key '{k}'")));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Range and consistency checks; every failure is a config error.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if check_alpha(self.alpha).is_err() {
            return bad(format!("alpha = {} is outside (0, 2]", self.alpha));
        }
        if let Some(eq) = self.preset.equation() {
            if eq != self.equation {
                return bad(format!("preset {} needs equation = {eq}", self.preset));
            }
        }
        if self.preset == Preset::Custom && self.source_coeffs.is_empty() {
            return bad("preset custom needs source_coeffs".into());
        }
        if self.paths == 0 || self.max_iter == 0 || self.inner_samples == 0 || self.n_sub == 0 {
            return bad("paths, max_iter, inner_samples and n_sub must be at least 1".into());
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol = {} must be positive", self.tol));
        }
        if !(self.shrink > 0.0 && self.shrink <= 1.0) {
            return bad(format!("shrink = {} is outside (0, 1]", self.shrink));
        }
        if self.equation == Equation::Parabolic {
            if self.n_t == 0 {
                return bad("n_t must be at least 1".into());
            }
            if !(self.t_final > 0.0) || !self.t_final.is_finite() {
                return bad(format!("t_final = {} must be positive", self.t_final));
            }
        }
        Ok(())
    }

    pub fn poisson(&self) -> PoissonConfig {
        PoissonConfig {
            alpha: self.alpha,
            n_x: self.n_x,
            paths: self.paths,
            inner_samples: self.inner_samples,
            max_iter: self.max_iter,
            tol: self.tol,
            seed: self.seed,
            shrink: self.shrink,
            jump_law: self.jump_law,
            ..PoissonConfig::new(self.alpha, self.n_x, self.paths)
        }
    }

    pub fn parabolic(&self) -> ParabolicConfig {
        ParabolicConfig {
            n_sub: self.n_sub,
            max_iter: self.max_iter,
            tol: self.tol,
            seed: self.seed,
            jump_law: self.jump_law,
            source_time: self.source_time,
            residual_initial: self.residual_initial,
            ..ParabolicConfig::new(self.alpha, self.n_x, self.n_t, self.t_final, self.paths)
        }
    }
}

fn num<T: FromStr>(v: &str, key: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("bad value '{v}' for '{key}'")))
}
