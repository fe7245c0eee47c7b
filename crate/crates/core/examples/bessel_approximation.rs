//! Bessel-sum approximations to P(t) with Q near t^(1/4).

use gausscircle::asymptotics::{f_bessel, BesselForm, TruncationParams};

fn main() -> gausscircle::Result<()> {
    println!("{:>6} {:>3} {:>14} {:>8} {:>10} {:>10}", "t", "Q", "F", "P", "|F - P|", "err Q/rt");
    for (t, q) in [(100u64, 3u64), (400, 5), (1600, 7), (6400, 9)] {
        let r = f_bessel(t, &TruncationParams::standard(q)?, BesselForm::Printed)?;
        println!(
            "{t:>6} {q:>3} {:>14.6} {:>8} {:>10.4} {:>10.4}",
            r.approx_value, r.exact_p, r.abs_error, r.normalized_error
        );
    }
    let full = f_bessel(400, &TruncationParams::standard(5)?, BesselForm::Printed)?;
    let short = f_bessel(400, &TruncationParams::short_cutoff(5)?, BesselForm::Printed)?;
    println!("cutoff Q^2 vs Q at t = 400: {:.6}", full.approx_value - short.approx_value);
    Ok(())
}
