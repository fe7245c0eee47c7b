//! Flat `key = value` configuration.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Settings shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Config {
    pub default_q: u64,
    pub default_eta: f64,
    pub default_epsilon: f64,
    pub quad_tol: f64,
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            default_q: 3,
            default_eta: 0.1,
            default_epsilon: 0.05,
            quad_tol: 1e-8,
            jobs: 1,
        }
    }
}

/// Values given on the command line; `Some` wins over the file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub default_q: Option<u64>,
    pub default_eta: Option<f64>,
    pub default_epsilon: Option<f64>,
    pub quad_tol: Option<f64>,
    pub jobs: Option<usize>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad value `{value}` for `{key}`")))
}

impl Config {
    /// Parses `key = value` lines over the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "default_Q" => cfg.default_q = parse_value(key, value, i + 1)?,
                "default_eta" => cfg.default_eta = parse_value(key, value, i + 1)?,
                "default_epsilon" => cfg.default_epsilon = parse_value(key, value, i + 1)?,
                "quad_tol" => cfg.quad_tol = parse_value(key, value, i + 1)?,
                "jobs" => cfg.jobs = parse_value(key, value, i + 1)?,
                other => return Err(Error::Parse(format!("line {}: unknown key `{other}`", i + 1))),
            }
        }
        cfg.validate()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn with_overrides(mut self, o: &Overrides) -> Result<Self> {
        if let Some(v) = o.default_q {
            self.default_q = v;
        }
        if let Some(v) = o.default_eta {
            self.default_eta = v;
        }
        if let Some(v) = o.default_epsilon {
            self.default_epsilon = v;
        }
        if let Some(v) = o.quad_tol {
            self.quad_tol = v;
        }
        if let Some(v) = o.jobs {
            self.jobs = v;
        }
        self.validate()
    }

    fn validate(self) -> Result<Self> {
        if self.default_q < 3 || self.default_q % 2 == 0 {
            return Err(Error::Domain("default_Q must be odd and at least 3".into()));
        }
        if !(self.default_eta > 0.0 && self.default_eta <= 0.125) {
            return Err(Error::Domain("default_eta must lie in (0, 1/8]".into()));
        }
        if !(self.default_epsilon > 0.0 && self.default_epsilon < 1.0) {
            return Err(Error::Domain("default_epsilon must lie in (0, 1)".into()));
        }
        if !(self.quad_tol > 0.0) {
            return Err(Error::Domain("quad_tol must be positive".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Domain("jobs must be at least 1".into()));
        }
        Ok(self)
    }
}
