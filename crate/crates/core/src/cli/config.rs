//! `key = value` configuration files.
//!
//! One assignment per line, `#` starts a comment. Numeric parameters accept
//! comma-separated lists, which only `sweep` expands; every other command
//! needs a single value.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fock::RelationMode;
use crate::params::{DeformationParams, ParamError};

pub const DEFAULT_DIM: usize = 16;
pub const DEFAULT_N_MAX: i64 = 20;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Tensor checks allocate `dim^4`-sized matrices.
pub const MAX_HOPF_DIM: usize = 16;
/// Smallest dimension with a non-empty interior for two-step words.
pub const MIN_REP_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {0}: {1}")]
    ParseError(usize, String),
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("invalid parameters: {0}")]
    ValidationError(#[from] ParamError),
    #[error("{0}")]
    Invalid(String),
}

impl ConfigError {
    pub fn kind(&self) -> &'static str {
        match self {
            ConfigError::ParseError(..) => "ParseError",
            ConfigError::MissingKey(_) => "MissingKey",
            ConfigError::ValidationError(e) => e.kind(),
            ConfigError::Invalid(_) => "InvalidConfig",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json|csv)")),
        }
    }
}

/// Raw settings from a config file and/or flags, before validation. Empty
/// vectors mean "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub l: Vec<f64>,
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
    pub dim: Option<usize>,
    pub n_max: Option<i64>,
    pub tol: Option<f64>,
    pub mode: Option<RelationMode>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub dim: usize,
    pub n_max: i64,
    pub tol: f64,
    pub mode: RelationMode,
    pub format: Format,
}

/// One fully resolved parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub params: DeformationParams,
    pub hopf: Option<(f64, f64)>,
    pub run: RunOptions,
}

fn parse_list(line: usize, key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
    value
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| ConfigError::ParseError(line, format!("`{key}`: {e}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse::<T>()
        .map_err(|e| ConfigError::ParseError(line, format!("`{key}`: {e}")))
}

/// Parses config text into unvalidated settings.
pub fn parse_settings(source: &str) -> Result<Settings, ConfigError> {
    let mut s = Settings::default();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (key, value) = text.split_once('=').ok_or_else(|| {
            ConfigError::ParseError(line, format!("expected `key = value`, got `{text}`"))
        })?;
        let key = key.trim();
        match key {
            "p" => s.p = parse_list(line, key, value)?,
            "q" => s.q = parse_list(line, key, value)?,
            "alpha" => s.alpha = parse_list(line, key, value)?,
            "beta" => s.beta = parse_list(line, key, value)?,
            "l" => s.l = parse_list(line, key, value)?,
            "beta1" => s.beta1 = parse_list(line, key, value)?,
            "beta2" => s.beta2 = parse_list(line, key, value)?,
            "dim" => s.dim = Some(parse_one(line, key, value)?),
            "n_max" => s.n_max = Some(parse_one(line, key, value)?),
            "tol" => s.tol = Some(parse_one(line, key, value)?),
            "mode" => s.mode = Some(parse_one(line, key, value)?),
            "format" => s.format = Some(parse_one(line, key, value)?),
            other => {
                return Err(ConfigError::ParseError(
                    line,
                    format!("unknown key `{other}`"),
                ))
            }
        }
    }
    Ok(s)
}

/// Parses and validates a single-point configuration.
pub fn parse_config(source: &str) -> Result<Config, ConfigError> {
    parse_settings(source)?.resolve()
}

fn single(name: &'static str, values: &[f64]) -> Result<Option<f64>, ConfigError> {
    match values {
        [] => Ok(None),
        [v] => Ok(Some(*v)),
        _ => Err(ConfigError::Invalid(format!(
            "`{name}` has {} values; lists are only accepted by sweep",
            values.len()
        ))),
    }
}

impl Settings {
    /// Values given in `other` replace those in `self`.
    pub fn overridden_by(mut self, other: Settings) -> Settings {
        macro_rules! take_vec {
            ($($f:ident),*) => {$( if !other.$f.is_empty() { self.$f = other.$f; } )*};
        }
        macro_rules! take_opt {
            ($($f:ident),*) => {$( if other.$f.is_some() { self.$f = other.$f; } )*};
        }
        take_vec!(p, q, alpha, beta, l, beta1, beta2);
        take_opt!(dim, n_max, tol, mode, format);
        self
    }

    pub fn run_options(&self) -> Result<RunOptions, ConfigError> {
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(ConfigError::Invalid(format!(
                "tol must be positive, got {tol}"
            )));
        }
        let n_max = self.n_max.unwrap_or(DEFAULT_N_MAX);
        if n_max < 0 {
            return Err(ConfigError::Invalid(format!(
                "n_max must be non-negative, got {n_max}"
            )));
        }
        Ok(RunOptions {
            dim: self.dim.unwrap_or(DEFAULT_DIM),
            n_max,
            tol,
            mode: self.mode.unwrap_or_default(),
            format: self.format.unwrap_or_default(),
        })
    }

    /// Resolves to one validated point. `beta` falls back to `beta2` when
    /// only the Hopf offsets are given.
    pub fn resolve(&self) -> Result<Config, ConfigError> {
        let p = single("p", &self.p)?.ok_or(ConfigError::MissingKey("p"))?;
        let q = single("q", &self.q)?.ok_or(ConfigError::MissingKey("q"))?;
        let alpha = single("alpha", &self.alpha)?.ok_or(ConfigError::MissingKey("alpha"))?;
        let l = single("l", &self.l)?.ok_or(ConfigError::MissingKey("l"))?;
        let beta1 = single("beta1", &self.beta1)?;
        let beta2 = single("beta2", &self.beta2)?;
        let hopf = match (beta1, beta2) {
            (Some(b1), Some(b2)) => Some((b1, b2)),
            (None, None) => None,
            (None, Some(_)) => return Err(ConfigError::MissingKey("beta1")),
            (Some(_), None) => return Err(ConfigError::MissingKey("beta2")),
        };
        let beta = match (single("beta", &self.beta)?, beta2) {
            (Some(b), _) => b,
            (None, Some(b2)) => b2,
            (None, None) => return Err(ConfigError::MissingKey("beta")),
        };
        let params = DeformationParams::new(p, q, alpha, beta, l)?;
        Ok(Config {
            params,
            hopf,
            run: self.run_options()?,
        })
    }

    /// Every point of the grid, in lexicographic order over
    /// `(p, q, alpha, beta, l, beta1, beta2)` with each list sorted ascending.
    /// Each point is returned unvalidated.
    pub fn grid(&self) -> Vec<Settings> {
        fn axis(v: &[f64]) -> Vec<Option<f64>> {
            if v.is_empty() {
                return vec![None];
            }
            let mut v = v.to_vec();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v.into_iter().map(Some).collect()
        }
        let axes = [
            axis(&self.p),
            axis(&self.q),
            axis(&self.alpha),
            axis(&self.beta),
            axis(&self.l),
            axis(&self.beta1),
            axis(&self.beta2),
        ];
        let mut points: Vec<[Option<f64>; 7]> = vec![[None; 7]];
        for (i, values) in axes.iter().enumerate() {
            points = points
                .into_iter()
                .flat_map(|pt| {
                    values.iter().map(move |v| {
                        let mut next = pt;
                        next[i] = *v;
                        next
                    })
                })
                .collect();
        }
        points
            .into_iter()
            .map(|pt| {
                let v = |x: Option<f64>| x.into_iter().collect::<Vec<_>>();
                Settings {
                    p: v(pt[0]),
                    q: v(pt[1]),
                    alpha: v(pt[2]),
                    beta: v(pt[3]),
                    l: v(pt[4]),
                    beta1: v(pt[5]),
                    beta2: v(pt[6]),
                    ..self.clone()
                }
            })
            .collect()
    }
}
