//! Scans the lattice discrepancy, writes the CSV and fits the dyadic exponent.

use gausscircle::harness::{digest, fit_exponent, read_csv, scan, sign_changes, write_csv, ScanOptions};

fn main() -> gausscircle::Result<()> {
    let opts = ScanOptions {
        jobs: 2,
        timing: false,
        ..Default::default()
    };
    let records = scan(1, 100_000, 1, &opts)?;
    let path = std::env::temp_dir().join("gausscircle-scan.csv");
    write_csv(&records, std::fs::File::create(&path)?)?;
    let back = read_csv(std::fs::File::open(&path)?)?;
    assert_eq!(back, records);
    println!("{} rows in {}", records.len(), path.display());
    println!("digest {}", digest(&records)?);
    println!("sign changes: {}", sign_changes(&records));
    let fit = fit_exponent(&records, 1)?;
    println!("slope {:.4} +- {:.4}", fit.slope, fit.stderr);
    for b in &fit.blocks {
        println!("  2^{:<2} max |delta| = {:>9.4} at t = {}", b.k, b.max_abs, b.t_at_max);
    }
    Ok(())
}
