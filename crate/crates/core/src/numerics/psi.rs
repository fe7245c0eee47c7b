//! Sawtooth functions and periodic Bernoulli functions.

use std::f64::consts::PI;

/// Integer-detection tolerance for [`psi1`].
pub const INTEGER_TOL: f64 = 1.0 / (1u64 << 40) as f64;

/// Number of retained harmonics in a truncated Fourier series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourierDepth(usize);

impl FourierDepth {
    pub fn new(n: usize) -> crate::Result<Self> {
        if n == 0 {
            return crate::error::domain("Fourier depth must be at least 1");
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Sawtooth `x - floor(x) - 1/2`, equal to 0 at integers.
#[inline]
pub fn psi1(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= INTEGER_TOL {
        return 0.0;
    }
    x - x.floor() - 0.5
}

/// Sawtooth `x - floor(x) - 1/2` with the value `-1/2` at integers.
#[inline]
pub fn psi_floor(x: f64) -> f64 {
    x - x.floor() - 0.5
}

/// Truncated series `-(1/pi) sum_{n=1}^N sin(2 pi n x)/n`.
pub fn psi_fourier(x: f64, depth: FourierDepth) -> f64 {
    let u = x - x.round();
    let (s1, c1) = (2.0 * PI * u).sin_cos();
    // sin(n theta) by the Chebyshev recurrence.
    let two_c = 2.0 * c1;
    let (mut prev, mut cur) = (0.0, s1);
    let mut acc = 0.0;
    for n in 1..=depth.get() {
        acc += cur / n as f64;
        let next = two_c * cur - prev;
        prev = cur;
        cur = next;
    }
    -acc / PI
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    for m in 1..=n {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..m {
            acc += binom * b[k];
            binom *= (m + 1 - k) as f64 / (k + 1) as f64;
        }
        b[m] = -acc / (m + 1) as f64;
    }
    b
}

/// Periodic Bernoulli function `B_k({x})/k!`.
///
/// With this scaling `psi_k' = psi_{k-1}` and `psi_k` has mean zero, which
/// pins it down uniquely for `k >= 2`. `k = 1` delegates to [`psi1`].
pub fn psi_k(x: f64, k: u32) -> f64 {
    assert!(k >= 1, "psi_k needs k >= 1");
    if k == 1 {
        return psi1(x);
    }
    let k = k as usize;
    let b = bernoulli_numbers(k);
    let u = x - x.floor();
    // sum_j (B_j / j!) u^{k-j} / (k-j)!, Horner in u.
    let mut fact = vec![1.0; k + 1];
    for i in 1..=k {
        fact[i] = fact[i - 1] * i as f64;
    }
    let mut acc = 0.0;
    for j in 0..=k {
        acc = acc * u + b[j] / fact[j] / fact[k - j];
    }
    acc
}

/// Fourier expansion of `psi_k` truncated at `depth` harmonics, `k >= 2`.
///
/// Even `k = 2m`: `(-1)^{m-1} 2 sum_{p>=1} cos(2 pi p x) / (2 pi p)^{2m}`.
/// Odd `k = 2m-1`: `(-1)^m 2 sum_{p>=1} sin(2 pi p x) / (2 pi p)^{2m-1}`.
pub fn psi_k_fourier(x: f64, k: u32, depth: FourierDepth) -> f64 {
    assert!(k >= 2, "psi_k_fourier needs k >= 2");
    let u = x - x.round();
    let mut acc = crate::numerics::KahanSum::new();
    let even = k % 2 == 0;
    for p in (1..=depth.get()).rev() {
        let theta = 2.0 * PI * p as f64 * u;
        let trig = if even { theta.cos() } else { theta.sin() };
        acc.add(trig / (2.0 * PI * p as f64).powi(k as i32));
    }
    let m = k.div_ceil(2);
    let sign = if even {
        if (m - 1) % 2 == 0 { 1.0 } else { -1.0 }
    } else if m % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    sign * 2.0 * acc.value()
}
