//! Exact lattice-point counts in disks, the error term and the kernel identity.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{build_refined_polygon, isqrt};

/// Largest `t` accepted by [`CountMethod::Rows`].
pub const ROWS_MAX_T: u64 = 1_000_000_000_000;
/// Largest `t` accepted by [`CountMethod::Brute`].
pub const BRUTE_MAX_T: u64 = 100_000_000;
/// Largest `t` accepted by [`CountMethod::Kernel`].
pub const KERNEL_MAX_T: u64 = 1_000_000;
/// Modulus used by [`CountMethod::Kernel`].
pub const KERNEL_Q: u64 = 3;

/// How [`count_lattice`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    /// Exhaustive test of every point in a bounding quarter box.
    Brute,
    /// One exact square root per row.
    Rows,
    /// Sum of the Dirichlet kernel over the refined hull with `Q = 3`.
    Kernel,
}

impl CountMethod {
    pub fn max_t(self) -> u64 {
        match self {
            CountMethod::Brute => BRUTE_MAX_T,
            CountMethod::Rows => ROWS_MAX_T,
            CountMethod::Kernel => KERNEL_MAX_T,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Brute => "brute",
            CountMethod::Rows => "rows",
            CountMethod::Kernel => "kernel",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(CountMethod::Brute),
            "rows" => Ok(CountMethod::Rows),
            "kernel" => Ok(CountMethod::Kernel),
            other => Err(Error::Parse(format!("unknown count method `{other}`"))),
        }
    }
}

/// `P(t)` with the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub t: u64,
    pub count: u64,
    pub method: CountMethod,
}

/// Number of `(m, n)` with `m^2 + n^2 <= t`.
pub fn count_lattice(t: u64, method: CountMethod) -> Result<CountResult> {
    if t > method.max_t() {
        return Err(Error::OutOfRange(format!(
            "t = {t} for method {method} (max {})",
            method.max_t()
        )));
    }
    let count = match method {
        CountMethod::Rows => count_rows(t),
        CountMethod::Brute => count_brute(t),
        CountMethod::Kernel => count_kernel(t)?,
    };
    Ok(CountResult { t, count, method })
}

fn count_rows(t: u64) -> u64 {
    let s = isqrt(t);
    let mut total = 2 * s + 1;
    for m in 1..=s {
        total += 2 * (2 * isqrt(t - m * m) + 1);
    }
    total
}

fn count_brute(t: u64) -> u64 {
    let s = isqrt(t) as i32;
    let squares: Vec<i32> = (0..=s).map(|n| n * n).collect();
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        // SAFETY: the CPU supports AVX2.
        return 1 + 4 * unsafe { quadrant_avx2(&squares, t as i32) };
    }
    1 + 4 * quadrant(&squares, t as i32)
}

/// Points with `m >= 1`, `n >= 0` in the box, tested one by one.
#[inline(always)]
fn quadrant(squares: &[i32], t: i32) -> u64 {
    let mut total = 0u64;
    for &m2 in &squares[1..] {
        let rest = t - m2;
        let mut inside = 0i32;
        for &sq in squares {
            inside = inside.wrapping_add((sq <= rest) as i32);
        }
        total += inside as u64;
    }
    total
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn quadrant_avx2(squares: &[i32], t: i32) -> u64 {
    quadrant(squares, t)
}

fn count_kernel(t: u64) -> Result<u64> {
    if t == 0 {
        return Ok(1);
    }
    let check = verify_identity_2(t, KERNEL_Q)?;
    if !check.inclusion_verified {
        return Err(Error::Domain(format!("hull of Delta_(t={t}) contains points outside the disk")));
    }
    Ok(check.sum.round() as u64)
}

const PI_LO: f64 = 1.224_646_799_147_353_2e-16;

/// `P(t) - pi t`, with `pi t` carried in double-double precision.
pub fn delta(t: u64) -> Result<f64> {
    let p = count_lattice(t, CountMethod::Rows)?.count;
    Ok(delta_from_count(t, p))
}

/// `P - pi t` for a known count `P`.
pub fn delta_from_count(t: u64, p: u64) -> f64 {
    let tf = t as f64;
    let prod = PI * tf;
    let err = PI.mul_add(tf, -prod);
    ((p as f64 - prod) - err) - PI_LO * tf
}

/// Number of `(m, n)` with `m^2 + n^2 = t`.
pub fn representations(t: u64) -> u64 {
    if t == 0 {
        return 1;
    }
    let mut r = 0;
    for m in 0..=isqrt(t) {
        let rest = t - m * m;
        let n = isqrt(rest);
        if n * n == rest {
            r += if m == 0 || n == 0 { 2 } else { 4 };
        }
    }
    r
}

/// Normalized two-dimensional Dirichlet kernel at a lattice point.
///
/// Closed form `prod sin(pi r) / (Q sin(pi r / Q))` over the residues of
/// `m` and `n` modulo `Q`.
pub fn kernel2d(m: i64, n: i64, q: u64) -> Result<f64> {
    if q == 0 || q % 2 == 0 {
        return domain("Q must be an odd positive integer");
    }
    let factor = |v: i64| {
        let r = v.rem_euclid(q as i64);
        if r == 0 {
            1.0
        } else {
            let r = r as f64;
            (PI * r).sin() / ((PI * r / q as f64).sin() * q as f64)
        }
    };
    Ok(factor(m) * factor(n))
}

/// Outcome of checking `P(t) = sum_{Delta_{t,Q}} f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub t: u64,
    pub q: u64,
    pub sum: f64,
    pub count: u64,
    pub residual: f64,
    /// Every lattice point of the hull satisfies `m^2 + n^2 <= Q^2 t`.
    pub inclusion_verified: bool,
    pub holds: bool,
}

/// Sums the kernel over the refined hull and compares with `P(t)`.
pub fn verify_identity_2(t: u64, q: u64) -> Result<IdentityCheck> {
    let poly = build_refined_polygon(t, q)?;
    let norm = q * q * t;
    let mut inclusion = true;
    let mut sum = crate::numerics::KahanSum::new();
    for row in poly.row_ranges() {
        let w = isqrt(norm - (row.y * row.y) as u64) as i64;
        if row.x_hi > w || row.x_lo < -w {
            inclusion = false;
        }
        let fy = kernel2d(0, row.y, q)?;
        if fy.abs() < 1e-300 {
            continue;
        }
        for x in row.x_lo..=row.x_hi {
            sum.add(kernel2d(x, 0, q)? * fy);
        }
    }
    let count = count_rows(t);
    let sum = sum.value();
    let residual = (sum - count as f64).abs();
    Ok(IdentityCheck {
        t,
        q,
        sum,
        count,
        residual,
        inclusion_verified: inclusion,
        holds: inclusion && residual <= 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        for method in [CountMethod::Brute, CountMethod::Rows, CountMethod::Kernel] {
            assert_eq!(count_lattice(0, method).unwrap().count, 1);
            assert_eq!(count_lattice(1, method).unwrap().count, 5);
            assert_eq!(count_lattice(25, method).unwrap().count, 81);
        }
    }

    #[test]
    fn range_guards() {
        assert!(count_lattice(BRUTE_MAX_T + 1, CountMethod::Brute).is_err());
        assert!(count_lattice(ROWS_MAX_T + 1, CountMethod::Rows).is_err());
        assert!(count_lattice(ROWS_MAX_T, CountMethod::Rows).is_ok());
    }

    #[test]
    fn delta_small() {
        assert!((delta(1).unwrap() - (5.0 - PI)).abs() < 1e-15);
        assert!((delta(2).unwrap() - (9.0 - 2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel2d(21, -12, 3).unwrap(), 1.0);
        assert!(kernel2d(1, 0, 3).unwrap().abs() < 1e-12);
        assert_eq!(kernel2d(17, -4, 1).unwrap(), 1.0);
        assert!(kernel2d(1, 1, 4).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in [CountMethod::Brute, CountMethod::Rows, CountMethod::Kernel] {
            assert_eq!(m.as_str().parse::<CountMethod>().unwrap(), m);
        }
        assert!("fast".parse::<CountMethod>().is_err());
    }
}
