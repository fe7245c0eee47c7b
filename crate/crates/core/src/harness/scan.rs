//! Error-term scans and their CSV form.

use std::io::{BufRead, BufReader, Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::counting::{count_lattice, delta_from_count, CountMethod};
use crate::error::{domain, Error, Result};

/// Schema line written before the CSV header.
pub const SCHEMA_LINE: &str = "# gausscircle-scan schema=1";
/// Column header.
pub const HEADER: &str = "t,P,delta,normalized,method,wall_ns";
/// Above this `t` the brute method needs [`ScanOptions::slow_ok`].
pub const BRUTE_SCAN_LIMIT: u64 = 1_000_000;

/// One scanned value of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub t: u64,
    #[serde(rename = "P")]
    pub p: u64,
    pub delta: f64,
    /// `delta / t^{1/4}`.
    pub normalized: f64,
    pub method: CountMethod,
    pub wall_ns: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub method: CountMethod,
    pub jobs: usize,
    /// Record per-row wall time; otherwise `wall_ns` is 0.
    pub timing: bool,
    pub slow_ok: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            method: CountMethod::Rows,
            jobs: 1,
            timing: true,
            slow_ok: false,
        }
    }
}

fn record(t: u64, opts: &ScanOptions) -> Result<ScanRecord> {
    let start = Instant::now();
    let p = count_lattice(t, opts.method)?.count;
    let wall_ns = if opts.timing { start.elapsed().as_nanos() as u64 } else { 0 };
    let delta = delta_from_count(t, p);
    Ok(ScanRecord {
        t,
        p,
        delta,
        normalized: delta / (t as f64).powf(0.25),
        method: opts.method,
        wall_ns,
    })
}

/// Scans `t_min, t_min + stride, ... <= t_max` in ascending order.
pub fn scan(t_min: u64, t_max: u64, stride: u64, opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    if t_min < 1 || t_min > t_max {
        return domain("scan needs 1 <= t_min <= t_max");
    }
    if stride == 0 {
        return domain("stride must be at least 1");
    }
    if opts.jobs == 0 {
        return domain("jobs must be at least 1");
    }
    if opts.method == CountMethod::Brute && t_max > BRUTE_SCAN_LIMIT && !opts.slow_ok {
        return domain(format!("brute scans past t = {BRUTE_SCAN_LIMIT} need --slow-ok"));
    }
    if t_max > opts.method.max_t() {
        return Err(Error::OutOfRange(format!(
            "t = {t_max} for method {} (max {})",
            opts.method,
            opts.method.max_t()
        )));
    }
    let ts: Vec<u64> = (t_min..=t_max).step_by(stride as usize).collect();
    if opts.jobs == 1 {
        return ts.iter().map(|&t| record(t, opts)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    pool.install(|| ts.par_iter().map(|&t| record(t, opts)).collect())
}

/// Writes the schema line, header and records.
pub fn write_csv<W: Write>(records: &[ScanRecord], mut out: W) -> Result<()> {
    writeln!(out, "{SCHEMA_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// CSV bytes of `records`.
pub fn to_csv_bytes(records: &[ScanRecord]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(buf)
}

/// Reads a scan CSV, rejecting other schema versions.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ScanRecord>> {
    let mut reader = BufReader::new(input);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    let first = first.trim_end();
    if first != SCHEMA_LINE {
        return Err(Error::Parse(format!("unsupported scan schema line `{first}`")));
    }
    let mut rdr = csv::Reader::from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header.join(",") != HEADER {
        return Err(Error::Parse(format!("unexpected header `{}`", header.join(","))));
    }
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// SHA-256 of the CSV with every `wall_ns` set to 0, as lowercase hex.
pub fn digest(records: &[ScanRecord]) -> Result<String> {
    let canonical: Vec<ScanRecord> = records.iter().map(|r| ScanRecord { wall_ns: 0, ..*r }).collect();
    Ok(hex::encode(Sha256::digest(to_csv_bytes(&canonical)?)))
}

/// Sign changes of `delta` along the records.
pub fn sign_changes(records: &[ScanRecord]) -> usize {
    records
        .windows(2)
        .filter(|w| (w[0].delta < 0.0) != (w[1].delta < 0.0))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        let rows = scan(1, 5, 1, &ScanOptions::default()).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].p, 5);
        assert_eq!(rows[4].p, 21);
    }

    #[test]
    fn csv_round_trip() {
        let rows = scan(1, 40, 3, &ScanOptions::default()).unwrap();
        let bytes = to_csv_bytes(&rows).unwrap();
        assert_eq!(read_csv(&bytes[..]).unwrap(), rows);
    }

    #[test]
    fn rejects_other_schema() {
        let text = "# gausscircle-scan schema=2\nt,P,delta,normalized,method,wall_ns\n";
        assert!(read_csv(text.as_bytes()).is_err());
        assert!(read_csv("t,P\n".as_bytes()).is_err());
    }

    #[test]
    fn brute_guard() {
        let opts = ScanOptions {
            method: CountMethod::Brute,
            ..Default::default()
        };
        assert!(scan(1, BRUTE_SCAN_LIMIT + 1, BRUTE_SCAN_LIMIT, &opts).is_err());
    }
}
