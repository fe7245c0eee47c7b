//! Run manifests and output locations.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::config::Config;
use super::scan::{digest, write_csv, ScanRecord};
use crate::error::Result;

/// Environment variable that relocates relative output paths.
pub const OUT_DIR_ENV: &str = "CIRCLE_OUT_DIR";

/// Joins a relative `path` onto `$CIRCLE_OUT_DIR` when it is set.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Milliseconds since the Unix epoch.
pub fn unix_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// What produced an output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config: ConfigSnapshot,
    pub seed: Option<u64>,
    pub version: String,
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
    /// SHA-256 of the CSV with `wall_ns` zeroed.
    pub output_digest: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    #[serde(rename = "default_Q")]
    pub default_q: u64,
    pub default_eta: f64,
    pub default_epsilon: f64,
    pub quad_tol: f64,
    pub jobs: usize,
}

impl From<&Config> for ConfigSnapshot {
    fn from(c: &Config) -> Self {
        Self {
            default_q: c.default_q,
            default_eta: c.default_eta,
            default_epsilon: c.default_epsilon,
            quad_tol: c.quad_tol,
            jobs: c.jobs,
        }
    }
}

/// Manifest path for an output file: `<path>.manifest.json`.
pub fn manifest_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes the CSV and its manifest; returns the manifest.
pub fn write_scan(
    path: &Path,
    records: &[ScanRecord],
    command_line: Vec<String>,
    config: &Config,
    started_unix_ms: u64,
) -> Result<RunManifest> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    write_csv(records, &mut out)?;
    std::io::Write::flush(&mut out)?;
    let manifest = RunManifest {
        command_line,
        config: config.into(),
        seed: None,
        version: env!("CARGO_PKG_VERSION").to_string(),
        started_unix_ms,
        finished_unix_ms: unix_millis(),
        output_digest: digest(records)?,
    };
    std::fs::write(manifest_path(path), serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest)
}
