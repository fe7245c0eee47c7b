use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use gausscircle::counting::CountMethod;
use gausscircle::harness::*;

fn cli(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gausscircle"))
        .args(args)
        .current_dir(dir)
        .env_remove(OUT_DIR_ENV)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_command() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["count", "--t", "25", "--method", "rows"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "P(25) = 81");
    assert_eq!(stdout(&cli(&["count", "--t", "0"], dir.path())).trim(), "P(0) = 1");
    let o = cli(&["count", "--t", "-1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(cli(&["count", "--t", "200000000", "--method", "brute"], dir.path()).status.code(), Some(2));
}

#[test]
fn scan_records() {
    let rows = scan(1, 100, 1, &ScanOptions::default()).unwrap();
    assert_eq!(rows.len(), 100);
    assert_eq!((rows[0].t, rows[0].p), (1, 5));
    for r in &rows {
        let expect = r.delta / (r.t as f64).powf(0.25);
        assert!((r.normalized - expect).abs() <= 1e-9 * expect.abs());
        assert_eq!(r.method, CountMethod::Rows);
    }
    let one = scan(5, 5, 1, &ScanOptions::default()).unwrap();
    assert_eq!(one.len(), 1);
    assert!((one[0].delta - (21.0 - 5.0 * PI)).abs() < 1e-12);
    assert!(scan(0, 5, 1, &ScanOptions::default()).is_err());
    assert!(scan(6, 5, 1, &ScanOptions::default()).is_err());
    assert!(scan(1, 5, 0, &ScanOptions::default()).is_err());
    assert_eq!(scan(1, 100, 7, &ScanOptions::default()).unwrap().len(), 15);
}

#[test]
fn parallel_scan_matches_serial() {
    let base = ScanOptions {
        timing: false,
        ..Default::default()
    };
    let serial = scan(1, 20_000, 3, &base).unwrap();
    let parallel = scan(1, 20_000, 3, &ScanOptions { jobs: 4, ..base }).unwrap();
    assert_eq!(to_csv_bytes(&serial).unwrap(), to_csv_bytes(&parallel).unwrap());
    let timed = scan(1, 20_000, 3, &ScanOptions { jobs: 2, timing: true, ..base }).unwrap();
    assert_eq!(digest(&timed).unwrap(), digest(&serial).unwrap());
}

#[test]
fn csv_schema_is_checked() {
    let rows = scan(1, 10, 1, &ScanOptions::default()).unwrap();
    let bytes = to_csv_bytes(&rows).unwrap();
    let text = String::from_utf8(bytes.clone()).unwrap();
    assert!(text.starts_with(&format!("{SCHEMA_LINE}\n{HEADER}\n")));
    assert_eq!(read_csv(&bytes[..]).unwrap(), rows);
    let bumped = text.replace("schema=1", "schema=9");
    assert!(read_csv(bumped.as_bytes()).is_err());
    let empty = to_csv_bytes(&[]).unwrap();
    assert!(read_csv(&empty[..]).unwrap().is_empty());
}

#[test]
fn scan_command_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["scan", "--t-min", "1", "--t-max", "3000", "--out", "a.csv", "--no-timing"];
    assert!(cli(&args, dir.path()).status.success());
    let first = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert!(cli(&args, dir.path()).status.success());
    let second = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(first, second);
    let manifest: RunManifest =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.manifest.json")).unwrap()).unwrap();
    let records = read_csv(&first[..]).unwrap();
    assert_eq!(manifest.output_digest, digest(&records).unwrap());
    assert_eq!(records.len(), 3000);
    assert!(manifest.finished_unix_ms >= manifest.started_unix_ms);
    assert_eq!(manifest.version, env!("CARGO_PKG_VERSION"));

    let o = cli(&["scan", "--t-min", "1", "--t-max", "10", "--out", "missing/dir/x.csv"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    let o = cli(&["scan", "--t-min", "1", "--t-max", "2000000", "--method", "brute", "--out", "b.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gausscircle"))
        .args(["scan", "--t-min", "1", "--t-max", "10", "--out", "s.csv"])
        .current_dir(dir.path())
        .env(OUT_DIR_ENV, out.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(out.path().join("s.csv").exists());
    assert!(!dir.path().join("s.csv").exists());
}

fn synthetic(power: f64) -> Vec<ScanRecord> {
    (1..=4096u64)
        .map(|t| {
            let d = (t as f64).powf(power);
            ScanRecord {
                t,
                p: 0,
                delta: d,
                normalized: d / (t as f64).powf(0.25),
                method: CountMethod::Rows,
                wall_ns: 0,
            }
        })
        .collect()
}

#[test]
fn exponent_fits() {
    for power in [0.25, 0.5] {
        let fit = fit_exponent(&synthetic(power), 1).unwrap();
        assert!((fit.slope - power).abs() < 1e-6);
        assert!(fit.band.0 <= fit.slope && fit.slope <= fit.band.1);
        assert_eq!(fit.blocks.len(), 13);
    }
    assert!(matches!(fit_exponent(&synthetic(0.5)[..7], 1), Err(gausscircle::Error::TooFewBlocks { .. })));
}

#[test]
fn fit_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("syn.csv");
    write_csv(&synthetic(0.5), std::fs::File::create(&path).unwrap()).unwrap();
    let o = cli(&["fit-exponent", path.to_str().unwrap()], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("slope = 0.500000"));
    write_csv(&synthetic(0.5)[..5], std::fs::File::create(&path).unwrap()).unwrap();
    assert_eq!(cli(&["fit-exponent", path.to_str().unwrap()], dir.path()).status.code(), Some(4));
    std::fs::write(&path, "t,P\n1,5\n").unwrap();
    assert_eq!(cli(&["fit-exponent", path.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.cfg"), "# settings\ndefault_Q = 5\nquad_tol = 1e-9\n").unwrap();
    let o = cli(&["approx", "--t", "100", "--config", "c.cfg"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("(Q = 5,"));
    let o = cli(&["approx", "--t", "100", "--config", "c.cfg", "--q", "7"], dir.path());
    assert!(stdout(&o).contains("(Q = 7,"));
    let o = cli(&["approx", "--t", "100", "--config", "c.cfg", "--q", "11"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = cli(&["approx", "--t", "100", "--config", "c.cfg", "--q", "3"], dir.path());
    assert!(stdout(&o).contains("(Q = 3,"));
    std::fs::write(dir.path().join("bad.cfg"), "colour = blue\n").unwrap();
    assert_eq!(cli(&["count", "--t", "4", "--config", "bad.cfg"], dir.path()).status.code(), Some(2));
    assert_eq!(cli(&["count", "--t", "4", "--config", "nope.cfg"], dir.path()).status.code(), Some(3));
}

#[test]
fn verify_command() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["verify", "--suite", "kernel-identity"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify-kernel-identity.json")).unwrap()).unwrap();
    assert_eq!(report["suite"], "kernel-identity");
    assert_eq!(report["pass"], true);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["residual"].as_f64().unwrap() <= 1e-9);
        assert!(c["name"].is_string() && c["bound"].is_number() && c["pass"] == true);
    }
    assert_eq!(cli(&["verify", "--suite", "bogus"], dir.path()).status.code(), Some(2));
}

#[test]
fn em2d_suite_passes() {
    let rep = run_suite(Suite::Em2d, &Config::default()).unwrap();
    assert!(rep.pass);
    assert!(rep.checks.len() >= 12);
    assert!("bogus".parse::<Suite>().is_err());
}

#[test]
fn nearfar_and_approx_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["nearfar", "--t", "30"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("E_direct =") && text.contains("pick_check ="));
    let o = cli(&["approx", "--t", "10", "--quadrature"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("T_polygon ="));
}
