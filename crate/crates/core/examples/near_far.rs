//! The oscillatory sum near the circle and the sawtooth identity.

use gausscircle::near_far::{default_r, e_sum, inner_integral, l_sum, pick_check, psi_circle_sum, Mode, Region};

fn main() -> gausscircle::Result<()> {
    for r in [1.0, 2.0, 4.0, 8.0] {
        let d = inner_integral(r, 3, 4, 25, Mode::Direct)?;
        let s = inner_integral(r, 3, 4, 25, Mode::Stationary)?;
        println!("r = {r}: direct {d:+.8}  stationary {s:+.8}");
    }
    for t in [25u64, 49, 100] {
        let r = default_r(t);
        let reg = Region::new(t);
        let d = e_sum(t, r, Mode::Direct)?;
        let s = e_sum(t, r, Mode::Stationary)?;
        println!(
            "t = {t}, R = {r}, m <= {}, n in [{}, {}]: direct {d:+.6}  reduced {s:+.6}",
            reg.m_hi, reg.n_lo, reg.n_hi
        );
    }
    println!("L(100, 3) = {:.10}", l_sum(100, 3, 9, 1e-10)?);
    for t in [100u64, 1000, 10_000] {
        println!("t = {t}: sawtooth sum {:+.6}, residual {:+.6}", psi_circle_sum(t)?, pick_check(t)?);
    }
    Ok(())
}
