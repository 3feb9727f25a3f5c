//! Line-oriented `key = value` experiment configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown keys are
//! rejected so typos do not silently fall back to defaults.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::covers::CoverSpec;
use crate::error::{Error, Result};
use crate::farey::SurfaceModel;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub sample_count: usize,
    pub slope_size_bound: u64,
    pub model: SurfaceModel,
    pub cover: Option<CoverSpec>,
    pub threshold: i64,
    pub epsilon: f64,
    pub min_length: f64,
    pub oracle_bound: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 1,
            sample_count: 10_000,
            slope_size_bound: 10_000,
            model: SurfaceModel::TorusFarey,
            cover: None,
            threshold: 4,
            epsilon: 0.05,
            min_length: 1.0,
            oracle_bound: 34,
        }
    }
}

const KEYS: [&str; 9] = [
    "seed",
    "sample_count",
    "slope_size_bound",
    "model",
    "cover",
    "threshold",
    "epsilon",
    "min_length",
    "oracle_bound",
];

fn parse_field<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("slope_size_bound", self.slope_size_bound > 0),
            ("oracle_bound", self.oracle_bound > 0),
            ("epsilon", self.epsilon > 0.0),
            ("min_length", self.min_length > 0.0),
        ];
        for (key, ok) in positive {
            if !ok {
                return Err(Error::Config(format!("{key} must be positive")));
            }
        }
        if self.threshold < crate::antichain::MIN_THRESHOLD {
            return Err(Error::ThresholdTooSmall(self.threshold));
        }
        Ok(())
    }

    /// Sets one key; used by the parser and by command-line overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "seed" => self.seed = parse_field(key, value)?,
            "sample_count" => self.sample_count = parse_field(key, value)?,
            "slope_size_bound" => self.slope_size_bound = parse_field(key, value)?,
            "model" => self.model = value.parse()?,
            "cover" => {
                self.cover = if value == "none" {
                    None
                } else {
                    Some(value.parse()?)
                }
            }
            "threshold" => self.threshold = parse_field(key, value)?,
            "epsilon" => self.epsilon = parse_field(key, value)?,
            "min_length" => self.min_length = parse_field(key, value)?,
            "oracle_bound" => self.oracle_bound = parse_field(key, value)?,
            other => {
                return Err(Error::Config(format!(
                    "unknown key {other:?}; expected one of {}",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            cfg.set(key.trim(), value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "sample_count = {}", self.sample_count)?;
        writeln!(f, "slope_size_bound = {}", self.slope_size_bound)?;
        writeln!(f, "model = {}", self.model)?;
        match &self.cover {
            Some(c) => writeln!(f, "cover = {c}")?,
            None => writeln!(f, "cover = none")?,
        }
        writeln!(f, "threshold = {}", self.threshold)?;
        writeln!(f, "epsilon = {:?}", self.epsilon)?;
        writeln!(f, "min_length = {:?}", self.min_length)?;
        writeln!(f, "oracle_bound = {}", self.oracle_bound)
    }
}
