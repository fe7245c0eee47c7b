//! The edge constant `a_L` as the limit of a Gaussian-smoothed integral.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{integrate_1d_with, QuadOptions};

/// Smoothing parameters used for the limit at slopes `|s| <= 1`.
pub const EPSILON_LADDER: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// Largest disagreement tolerated between extrapolants.
pub const LADDER_TOL: f64 = 1e-4;

const CUTOFF: f64 = 12.0;

fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Periodized Gaussian of width `sigma`.
fn delta_eps(t: f64, sigma: f64) -> f64 {
    let lo = (t - CUTOFF * sigma).ceil() as i64;
    let hi = (t + CUTOFF * sigma).floor() as i64;
    let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
    (lo..=hi)
        .map(|n| {
            let z = (t - n as f64) / sigma;
            norm * (-0.5 * z * z).exp()
        })
        .sum()
}

/// Smoothed sawtooth `u - int_0^u delta_eps`.
fn psi_eps(u: f64, sigma: f64) -> f64 {
    let pad = (CUTOFF * sigma).ceil() as i64 + 1;
    let lo = u.min(0.0).floor() as i64 - pad;
    let hi = u.max(0.0).ceil() as i64 + pad;
    let mut g = crate::numerics::KahanSum::new();
    for n in lo..=hi {
        let n = n as f64;
        g.add(normal_cdf((u - n) / sigma) - normal_cdf(-n / sigma));
    }
    u - g.value()
}

/// `-int_0^{1/2} delta_eps(t) psi_eps(s t) dt` at smoothing `eps`.
pub fn smoothed_edge_integral(slope: f64, eps: f64) -> Result<f64> {
    let sigma = eps.sqrt();
    let mut brk: Vec<f64> = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, CUTOFF]
        .iter()
        .map(|k| k * sigma)
        .filter(|&x| x < 0.5)
        .collect();
    let s = slope.abs();
    if s > 0.0 {
        let mut k = 1.0;
        while k / s < 0.5 && brk.len() < 10_000 {
            brk.push(k / s);
            k += 1.0;
        }
    }
    let opts = QuadOptions::new(1e-14).breakpoints(brk);
    let r = integrate_1d_with(
        |t| delta_eps(t, sigma) * psi_eps(slope * t, sigma),
        0.0,
        0.5,
        &opts,
    )?;
    Ok(-r.value)
}

/// Value of the Neville tableau at `h = 0`.
fn extrapolate(h: &[f64], v: &[f64]) -> f64 {
    let mut p = v.to_vec();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (h[i], h[i + level]);
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    }
    p[0]
}

/// Edge constant `a_L` for the line of slope `m2/m1`.
///
/// The smoothed integral is evaluated on [`EPSILON_LADDER`] (divided by
/// `s^2` when `|s| > 1`) and extrapolated to zero in `sqrt(eps)`.
pub fn a_l(m2: i64, m1: i64) -> Result<f64> {
    if m1 == 0 {
        return crate::error::domain("a_L needs m1 != 0");
    }
    edge_constant(m2 as f64 / m1 as f64)
}

/// Smoothing ladder used for `slope`.
pub fn epsilon_ladder(slope: f64) -> [f64; 5] {
    let scale = (slope * slope).max(1.0);
    EPSILON_LADDER.map(|e| e / scale)
}

/// [`a_l`] for a real slope.
pub fn edge_constant(slope: f64) -> Result<f64> {
    if !slope.is_finite() {
        return crate::error::domain("slope must be finite");
    }
    if slope == 0.0 {
        return Ok(0.0);
    }
    let ladder = epsilon_ladder(slope);
    let h: Vec<f64> = ladder.iter().map(|e| e.sqrt()).collect();
    let v = ladder
        .iter()
        .map(|&e| smoothed_edge_integral(slope, e))
        .collect::<Result<Vec<f64>>>()?;
    let full = extrapolate(&h, &v);
    let fine = extrapolate(&h[1..], &v[1..]);
    let gap = (full - fine).abs();
    if gap > LADDER_TOL || !full.is_finite() {
        return Err(Error::Extrapolation(gap));
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_eps_is_periodic_and_odd() {
        let s = 0.05;
        for &u in &[0.1, 0.37, 0.8] {
            assert!((psi_eps(u + 1.0, s) - psi_eps(u, s)).abs() < 1e-13);
            assert!((psi_eps(-u, s) + psi_eps(u, s)).abs() < 1e-13);
        }
        assert!((psi_eps(0.5, 1e-3) - 0.0).abs() < 1e-13);
        assert!((psi_eps(0.25, 1e-3) + 0.25).abs() < 1e-12);
    }

    #[test]
    fn delta_has_unit_mass() {
        let sigma = 0.03;
        let r = crate::numerics::integrate_1d(|t| delta_eps(t, sigma), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slope_zero_vanishes() {
        assert_eq!(a_l(0, 3).unwrap(), 0.0);
        assert!(a_l(1, 0).is_err());
    }
}
