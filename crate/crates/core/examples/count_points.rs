//! Counts lattice points in a few disks with every method.

use gausscircle::counting::{count_lattice, delta, representations, CountMethod};

fn main() -> gausscircle::Result<()> {
    for t in [1u64, 5, 25, 1000, 123_456] {
        let rows = count_lattice(t, CountMethod::Rows)?.count;
        let brute = count_lattice(t, CountMethod::Brute)?.count;
        let kernel = count_lattice(t, CountMethod::Kernel)?.count;
        assert_eq!(rows, brute);
        assert_eq!(rows, kernel);
        println!(
            "P({t}) = {rows}  delta = {:+.6}  r2({t}) = {}",
            delta(t)?,
            representations(t)
        );
    }
    let big = 10u64.pow(12);
    println!("P(10^12) = {}", count_lattice(big, CountMethod::Rows)?.count);
    Ok(())
}
