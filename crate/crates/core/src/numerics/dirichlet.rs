//! Complex exponential and Dirichlet-kernel sums.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `e(x) = exp(2 pi i x)` with `x` reduced modulo 1 first.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let u = x - x.round();
    let (s, c) = (2.0 * PI * u).sin_cos();
    Complex64::new(c, s)
}

/// Distance from `x` to the nearest integer.
#[inline]
pub fn dist_to_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// `sum_{p=-R}^{R} p^j e(p x)` for `j` in `{0, 1}`.
pub fn dirichlet_sum(x: f64, r: u64, j: u32) -> crate::Result<Complex64> {
    if j > 1 {
        return crate::error::domain("dirichlet_sum supports j = 0 or 1");
    }
    let u = x - x.round();
    let mut acc = super::ComplexSum::new();
    if j == 0 {
        acc.add(Complex64::new(1.0, 0.0));
    }
    for p in 1..=r {
        let w = e(p as f64 * u);
        if j == 0 {
            acc.add(Complex64::new(2.0 * w.re, 0.0));
        } else {
            acc.add(Complex64::new(0.0, 2.0 * p as f64 * w.im));
        }
    }
    Ok(acc.value())
}

/// Real Dirichlet kernel `sum_{|p|<=R} e(p x / Q)` with `Q = 2R+1`, and its
/// first derivative in `x`.
pub fn kernel_with_derivative(x: f64, q: u64) -> (f64, f64) {
    let r = q / 2;
    let qf = q as f64;
    let u = x / qf - (x / qf).round();
    let theta = 2.0 * PI * u;
    let (s1, c1) = theta.sin_cos();
    let two_c = 2.0 * c1;
    let (mut cp, mut cc) = (1.0, c1);
    let (mut sp, mut sc) = (0.0, s1);
    let mut val = 1.0;
    let mut der = 0.0;
    for p in 1..=r {
        val += 2.0 * cc;
        der -= 2.0 * p as f64 * sc;
        let cn = two_c * cc - cp;
        let sn = two_c * sc - sp;
        cp = cc;
        cc = cn;
        sp = sc;
        sc = sn;
    }
    (val, der * 2.0 * PI / qf)
}
