//! Flat `key = value` run settings, read from a TOML file and overlaid by
//! command-line flags.
//!
//! Keys mirror the flags: `alpha`, `omega`, `T`, `mass`, `r`, `p`, `f`,
//! `subsystem`, `variable`, `range`, `source`, `seed`, `restarts`, `out`.
//! `T` and `mass` are mutually exclusive within one layer; a later layer
//! setting either one replaces both.

use std::path::{Path, PathBuf};

use toml::Value;

use crate::error::{Error, Result};
use crate::measures::SearchConfig;
use crate::noise::FilterParams;
use crate::reduced::{ModelParams, Subsystem};
use crate::spacetime::hawking_temperature;
use crate::sweep::{default_t_range, Range, Source, SweepVariable};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub alpha: Option<f64>,
    pub omega: Option<f64>,
    pub temperature: Option<f64>,
    pub mass: Option<f64>,
    pub r: Option<f64>,
    pub p: Option<f64>,
    pub filter: Option<FilterParams>,
    pub subsystems: Option<Vec<Subsystem>>,
    pub variable: Option<SweepVariable>,
    pub range: Option<Range>,
    pub source: Option<Source>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        let mut s = Settings::default();
        for (key, value) in &table {
            match key.as_str() {
                "alpha" => s.alpha = Some(number(key, value)?),
                "omega" => s.omega = Some(number(key, value)?),
                "T" => s.temperature = Some(number(key, value)?),
                "mass" => s.mass = Some(number(key, value)?),
                "r" => s.r = Some(number(key, value)?),
                "p" => s.p = Some(number(key, value)?),
                "f" => {
                    s.filter = Some(match value {
                        Value::String(t) => t.parse()?,
                        _ => FilterParams::active(number(key, value)?)?,
                    })
                }
                "subsystem" => s.subsystems = Some(parse_subsystems(text_value(key, value)?)?),
                "variable" => s.variable = Some(text_value(key, value)?.parse()?),
                "range" => s.range = Some(text_value(key, value)?.parse()?),
                "source" => s.source = Some(text_value(key, value)?.parse()?),
                "seed" => s.seed = Some(integer(key, value)?),
                "restarts" => s.restarts = Some(integer(key, value)? as usize),
                "out" => s.out = Some(PathBuf::from(text_value(key, value)?)),
                other => return Err(Error::Config(format!("unknown key {other:?}"))),
            }
        }
        if s.temperature.is_some() && s.mass.is_some() {
            return Err(Error::Config("T and mass are mutually exclusive".into()));
        }
        Ok(s)
    }

    /// `over` wins wherever it is set.
    pub fn overlay(self, over: Settings) -> Settings {
        let hawking_given = over.temperature.is_some() || over.mass.is_some();
        Settings {
            alpha: over.alpha.or(self.alpha),
            omega: over.omega.or(self.omega),
            temperature: if hawking_given { over.temperature } else { self.temperature },
            mass: if hawking_given { over.mass } else { self.mass },
            r: over.r.or(self.r),
            p: over.p.or(self.p),
            filter: over.filter.or(self.filter),
            subsystems: over.subsystems.or(self.subsystems),
            variable: over.variable.or(self.variable),
            range: over.range.or(self.range),
            source: over.source.or(self.source),
            seed: over.seed.or(self.seed),
            restarts: over.restarts.or(self.restarts),
            out: over.out.or(self.out),
        }
    }

    /// Model parameters, with defaults for anything unset.
    pub fn model_params(&self) -> Result<ModelParams> {
        let d = ModelParams::default();
        let temperature = match (self.temperature, self.mass) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("T and mass are mutually exclusive".into()))
            }
            (Some(t), None) => t,
            (None, Some(m)) => hawking_temperature(m)?,
            (None, None) => d.temperature,
        };
        let mp = ModelParams {
            alpha: self.alpha.unwrap_or(d.alpha),
            omega: self.omega.unwrap_or(d.omega),
            temperature,
            r: self.r.unwrap_or(d.r),
            p: self.p.unwrap_or(d.p),
            filter: self.filter.unwrap_or(d.filter),
        };
        mp.validate()?;
        Ok(mp)
    }

    pub fn subsystems_or(&self, default: &[Subsystem]) -> Vec<Subsystem> {
        self.subsystems.clone().unwrap_or_else(|| default.to_vec())
    }

    pub fn search(&self) -> SearchConfig {
        let d = SearchConfig::default();
        SearchConfig {
            restarts: self.restarts.unwrap_or(d.restarts),
            seed: self.seed.unwrap_or(d.seed),
            ..d
        }
    }

    pub fn source(&self) -> Source {
        self.source.unwrap_or_default()
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable.unwrap_or(SweepVariable::T)
    }

    pub fn range(&self) -> Range {
        self.range.unwrap_or_else(default_t_range)
    }
}

/// Comma-separated subsystem tags, or `all`.
pub fn parse_subsystems(s: &str) -> Result<Vec<Subsystem>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Subsystem::ALL.to_vec());
    }
    s.split(',').map(str::parse).collect()
}

fn number(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(Error::Config(format!("{key} must be a number"))),
    }
}

fn integer(key: &str, v: &Value) -> Result<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        _ => Err(Error::Config(format!("{key} must be a nonnegative integer"))),
    }
}

fn text_value<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    match v {
        Value::String(s) => Ok(s),
        _ => Err(Error::Config(format!("{key} must be a string"))),
    }
}
