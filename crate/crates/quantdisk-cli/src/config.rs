//! Run configuration: defaults, then an optional key=value file, then flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use num_traits::Signed;
use quantdisk::exact::{parse_rational, rat, Rational};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Pretty,
}

impl Output {
    pub fn parse_name(s: &str) -> CliResult<Self> {
        <Output as ValueEnum>::from_str(s, true).map_err(|_| CliError::Usage(format!("unknown output format {s:?} (json, csv, pretty)")))
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Output::Json => "json",
            Output::Csv => "csv",
            Output::Pretty => "pretty",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: String,
    pub hbar: Rational,
    pub n: usize,
    pub gamma_max: u32,
    pub depth: u32,
    pub tolerance: Rational,
    pub epsilon: Rational,
    pub output: Output,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: "disk".into(),
            hbar: rat(1, 2),
            n: 1,
            gamma_max: 3,
            depth: 16,
            tolerance: rat(1, 10_000_000_000),
            epsilon: rat(1, 1),
            output: Output::Json,
        }
    }
}

/// Values given on the command line; `None` means not set.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub model: Option<String>,
    pub hbar: Option<String>,
    pub n: Option<usize>,
    pub gamma_max: Option<u32>,
    pub depth: Option<u32>,
    pub tolerance: Option<String>,
    pub epsilon: Option<String>,
    pub output: Option<Output>,
}

const KEYS: [&str; 8] = ["model", "hbar", "n", "gamma-max", "depth", "tolerance", "epsilon", "output"];

/// Parses `key = value` lines; `#` starts a comment. Keys mirror the long flags.
pub fn parse_config_text(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", k + 1)))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key {key:?}", k + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| CliError::Usage(format!("{key}: cannot parse {v:?}")))
}

fn parse_q(key: &str, v: &str) -> CliResult<Rational> {
    parse_rational(v).map_err(|e| CliError::Usage(format!("{key}: {e}")))
}

impl RunConfig {
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            for (key, v) in parse_config_text(&text)? {
                cfg.set(&key, &v)?;
            }
        }
        let f = flags;
        if let Some(v) = &f.model {
            cfg.model = v.clone();
        }
        if let Some(v) = &f.hbar {
            cfg.hbar = parse_q("--hbar", v)?;
        }
        if let Some(v) = f.n {
            cfg.n = v;
        }
        if let Some(v) = f.gamma_max {
            cfg.gamma_max = v;
        }
        if let Some(v) = f.depth {
            cfg.depth = v;
        }
        if let Some(v) = &f.tolerance {
            cfg.tolerance = parse_q("--tolerance", v)?;
        }
        if let Some(v) = &f.epsilon {
            cfg.epsilon = parse_q("--epsilon", v)?;
        }
        if let Some(v) = f.output {
            cfg.output = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str) -> CliResult<()> {
        match key {
            "model" => self.model = v.to_string(),
            "hbar" => self.hbar = parse_q(key, v)?,
            "n" => self.n = parse_num(key, v)?,
            "gamma-max" => self.gamma_max = parse_num(key, v)?,
            "depth" => self.depth = parse_num(key, v)?,
            "tolerance" => self.tolerance = parse_q(key, v)?,
            "epsilon" => self.epsilon = parse_q(key, v)?,
            "output" => self.output = Output::parse_name(v)?,
            _ => unreachable!("keys are checked while parsing"),
        }
        Ok(())
    }

    fn validate(&self) -> CliResult<()> {
        if self.depth < self.gamma_max {
            return Err(CliError::Usage(format!("depth {} must be at least gamma-max {}", self.depth, self.gamma_max)));
        }
        if !self.tolerance.is_positive() {
            return Err(CliError::Usage("tolerance must be positive".into()));
        }
        if self.n == 0 {
            return Err(CliError::Usage("n must be at least 1".into()));
        }
        Ok(())
    }
}
