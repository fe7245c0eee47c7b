use crate::error::{domain, Result};
use crate::numerics::{integrate_1d_with, psi_floor, psi_k, QuadOptions};

fn integer_breakpoints(a: f64, b: f64) -> Vec<f64> {
    let lo = a.floor() as i64 + 1;
    let hi = b.ceil() as i64 - 1;
    (lo..=hi).map(|k| k as f64).collect()
}

/// First-order Euler-Maclaurin right-hand side
/// `int phi + int phi' psi + psi(a) phi(a) - psi(b) phi(b)` with
/// `psi(t) = t - floor(t) - 1/2` (value `-1/2` at integers).
///
/// Equals the sum of `phi(p)` over integers `a < p <= b`.
pub fn em1d(
    phi: impl Fn(f64) -> f64,
    dphi: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64> {
    if !(a <= b) {
        return domain("em1d needs a <= b");
    }
    let opts = QuadOptions::new(tol / 2.0).breakpoints(integer_breakpoints(a, b));
    let main = integrate_1d_with(&phi, a, b, &opts)?.value;
    let corr = integrate_1d_with(|x| dphi(x) * psi_floor(x), a, b, &opts)?.value;
    Ok(main + corr + psi_floor(a) * phi(a) - psi_floor(b) * phi(b))
}

/// Euler-Maclaurin expansion of depth `N` with periodic Bernoulli functions.
///
/// `derivatives[j]` is `phi^(j)`; at least `N + 1` entries are required.
/// Equals the sum of `chi(n) phi(n)` where endpoint integers count 1/2.
pub fn em1d_expansion(derivatives: &[&dyn Fn(f64) -> f64], a: f64, b: f64, depth: u32) -> Result<f64> {
    if depth == 0 {
        return domain("expansion depth must be at least 1");
    }
    if derivatives.len() < depth as usize + 1 {
        return domain(format!(
            "depth {depth} needs {} derivative handles, got {}",
            depth + 1,
            derivatives.len()
        ));
    }
    if !(a <= b) {
        return domain("em1d_expansion needs a <= b");
    }
    let tol = 1e-13 * (1.0 + (b - a));
    let opts = QuadOptions::new(tol).breakpoints(integer_breakpoints(a, b));
    let phi = derivatives[0];
    let mut total = integrate_1d_with(phi, a, b, &opts)?.value;
    for j in 1..=depth {
        let d = derivatives[j as usize - 1];
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * (psi_k(b, j) * d(b) - psi_k(a, j) * d(a));
    }
    let top = derivatives[depth as usize];
    let rem = integrate_1d_with(|u| psi_k(u, depth) * top(u), a, b, &opts)?.value;
    let sign = if (depth + 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(total + sign * rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn em1d_examples() {
        assert!((em1d(|p| p, |_| 1.0, 0.0, 10.0, 1e-12).unwrap() - 55.0).abs() < 1e-10);
        assert!((em1d(|_| 1.0, |_| 0.0, 0.5, 5.5, 1e-12).unwrap() - 5.0).abs() < 1e-10);
        assert!((em1d(|p| p * p, |p| 2.0 * p, 0.0, 3.0, 1e-12).unwrap() - 14.0).abs() < 1e-10);
    }

    #[test]
    fn expansion_cubic() {
        let d: [&dyn Fn(f64) -> f64; 5] = [
            &|p| p * p * p,
            &|p| 3.0 * p * p,
            &|p| 6.0 * p,
            &|_| 6.0,
            &|_| 0.0,
        ];
        assert!((em1d_expansion(&d, -0.5, 4.5, 4).unwrap() - 100.0).abs() < 1e-10);
        assert!(em1d_expansion(&d[..3], -0.5, 4.5, 4).is_err());
    }

    #[test]
    fn expansion_integer_endpoints_half_weight() {
        let d: [&dyn Fn(f64) -> f64; 3] = [&|p| p, &|_| 1.0, &|_| 0.0];
        // 0/2 + 1 + 2 + 3/2
        assert!((em1d_expansion(&d, 0.0, 3.0, 2).unwrap() - 4.5).abs() < 1e-12);
    }
}
