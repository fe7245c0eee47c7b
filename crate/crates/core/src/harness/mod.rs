//! Scans, exponent fits, configuration, manifests and verification suites
//! behind the command-line tool.

mod config;
mod fit;
mod manifest;
mod scan;
mod verify;

pub use config::{Config, Overrides};
pub use fit::{fit_dyadic, fit_exponent, DyadicBlock, ExponentFit, MIN_BLOCKS};
pub use manifest::{manifest_path, resolve_output, unix_millis, write_scan, ConfigSnapshot, RunManifest, OUT_DIR_ENV};
pub use scan::{
    digest, read_csv, scan, sign_changes, to_csv_bytes, write_csv, ScanOptions, ScanRecord, BRUTE_SCAN_LIMIT, HEADER,
    SCHEMA_LINE,
};
pub use verify::{run_suite, Check, Suite, SuiteReport};
