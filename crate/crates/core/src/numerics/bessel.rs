//! Bessel functions `J_0` and `J_1`.

use std::f64::consts::{FRAC_PI_4, PI};

const SERIES_LIMIT: f64 = 12.0;

/// Bessel function of the first kind of order 0 or 1 at `x >= 0`.
pub fn bessel_j(order: u32, x: f64) -> crate::Result<f64> {
    if order > 1 {
        return crate::error::domain("only orders 0 and 1 are supported");
    }
    if !(x >= 0.0) || !x.is_finite() {
        return crate::error::domain("Bessel argument must be finite and non-negative");
    }
    Ok(if order == 0 { j0(x) } else { j1(x) })
}

/// `J_0(x)` for `x >= 0`.
pub fn j0(x: f64) -> f64 {
    if x < SERIES_LIMIT {
        series(0, x)
    } else {
        hankel(0, x)
    }
}

/// `J_1(x)` for `x >= 0`.
pub fn j1(x: f64) -> f64 {
    if x < SERIES_LIMIT {
        series(1, x)
    } else {
        hankel(1, x)
    }
}

fn series(order: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let h2 = h * h;
    let mut term = if order == 0 { 1.0 } else { h };
    let mut acc = crate::numerics::KahanSum::new();
    acc.add(term);
    let nu = order as f64;
    for k in 1..200 {
        let k = k as f64;
        term *= -h2 / (k * (k + nu));
        acc.add(term);
        if term.abs() < 1e-18 * acc.value().abs().max(1e-300) && k > h {
            break;
        }
    }
    acc.value()
}

/// Hankel asymptotic expansion, summed up to its smallest term.
fn hankel(order: u32, x: f64) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        }
        let mag = a.abs();
        if k >= 6 && (mag > prev || mag < 1e-17) {
            break;
        }
        prev = mag;
        // Terms alternate P, Q, P, Q with signs +, +, -, -.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
    }
    // cos(x - phi) and sin(x - phi) expanded to avoid rounding x - phi.
    let phi = (order as f64) * PI / 2.0 + FRAC_PI_4;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}
