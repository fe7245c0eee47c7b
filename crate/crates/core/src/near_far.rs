//! The oscillatory sum near the circle, its stationary-phase reduction, the
//! exponential-sum functional `L(t, R)` and the sawtooth sum over the circle.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::counting::delta;
use crate::error::{domain, Error, Result};
use crate::geometry::isqrt;
use crate::numerics::{cos_over_r_integral, e, gauss_legendre, integrate_1d_with, psi_floor, KahanSum, QuadOptions};

/// Largest `t` for [`e_sum`] in direct mode.
pub const DIRECT_MAX_T: u64 = 100;
/// Largest `t` for [`e_sum`] in reduced mode.
pub const REDUCED_MAX_T: u64 = 1_000_000;
/// Largest `t` for [`l_sum`].
pub const L_SUM_MAX_T: u64 = 10_000;

const THETA_LO: f64 = PI / 8.0;
const THETA_HI: f64 = 3.0 * PI / 4.0;

/// Index range of the sum near the circle: `1 <= m <= alpha`, `sqrt(t)/2 <= n <= 2 sqrt(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub m_lo: u64,
    pub m_hi: u64,
    pub n_lo: u64,
    pub n_hi: u64,
}

impl Region {
    pub fn new(t: u64) -> Self {
        let mut n_lo = isqrt(t / 4);
        while 4 * n_lo * n_lo < t {
            n_lo += 1;
        }
        Self {
            m_lo: 1,
            m_hi: alpha(t),
            n_lo,
            n_hi: isqrt(4 * t),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.m_lo > self.m_hi || self.n_lo > self.n_hi
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (self.m_lo..=self.m_hi).flat_map(move |m| (self.n_lo..=self.n_hi).map(move |n| (m, n)))
    }
}

/// Largest integer `a` with `2 a^2 <= t`.
pub fn alpha(t: u64) -> u64 {
    isqrt(t / 2)
}

/// Width exponent `eta` with `tau = floor(t^eta)`, plus `alpha` and the region bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitParams {
    pub t: u64,
    pub eta: f64,
    pub tau: u64,
    pub alpha: u64,
    pub region: Region,
}

impl SplitParams {
    pub fn new(t: u64, eta: f64) -> Result<Self> {
        if t == 0 {
            return domain("t must be positive");
        }
        if !(eta > 0.0 && eta <= 0.125) {
            return domain("eta must lie in (0, 1/8]");
        }
        let tau = ((t as f64).powf(eta).floor() as u64).max(1);
        Ok(Self {
            t,
            eta,
            tau,
            alpha: alpha(t),
            region: Region::new(t),
        })
    }
}

/// Cutoff `floor(t^{1/4 + epsilon})`, at least 1.
pub fn cutoff_r(t: u64, epsilon: f64) -> u64 {
    ((t as f64).powf(0.25 + epsilon).floor() as u64).max(1)
}

/// [`cutoff_r`] with `epsilon = 0.05`.
pub fn default_r(t: u64) -> u64 {
    cutoff_r(t, 0.05)
}

fn smooth_step(u: f64) -> f64 {
    let g = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    let (a, b) = (g(u), g(1.0 - u));
    a / (a + b)
}

/// Smooth bump: 1 on `[pi/4, pi/2]`, 0 outside `(pi/8, 3 pi/4)`.
pub fn bump_v(theta: f64) -> f64 {
    if theta <= THETA_LO || theta >= THETA_HI {
        0.0
    } else if theta < PI / 4.0 {
        smooth_step((theta - THETA_LO) / (PI / 8.0))
    } else if theta <= PI / 2.0 {
        1.0
    } else {
        smooth_step((THETA_HI - theta) / (PI / 4.0))
    }
}

/// How [`inner_integral`] and [`e_sum`] evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Oscillatory quadrature in `theta` (and `r`).
    Direct,
    /// Leading stationary-phase term.
    Stationary,
}

/// Phase `sqrt(t) csc theta - m cot theta`.
#[inline]
fn phase(theta: f64, m: f64, rt: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (rt - m * c) / s
}

/// `|d phase / d theta|` bound on `[theta, theta_hi]` within the support.
fn phase_slope(theta: f64, m: f64, rt: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    ((rt * c - m) / (s * s)).abs() + (rt + m) * 0.05
}

#[inline]
fn amplitude(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    bump_v(theta) * s.sqrt() * c
}

/// Inner `theta` integral of the near-circle expression at radius `r`.
///
/// `Direct` integrates `r^{-1/2} v sin^{1/2} cos * cos 2 pi (r (phase - n) - 1/8)`
/// over the bump's support. `Stationary` returns
/// `m sqrt(t - m^2) / (r t^{5/4}) cos 2 pi r (sqrt(t - m^2) - n)`.
pub fn inner_integral(r: f64, m: u64, n: u64, t: u64, mode: Mode) -> Result<f64> {
    if !(r >= 1.0) {
        return domain("r must be at least 1");
    }
    if 2 * m * m > t {
        return domain("m must satisfy 2 m^2 <= t");
    }
    let (tf, mf, nf) = (t as f64, m as f64, n as f64);
    match mode {
        Mode::Stationary => {
            let s = (tf - mf * mf).sqrt();
            Ok(mf * s / (r * tf.powf(1.25)) * (2.0 * PI * r * (s - nf)).cos())
        }
        Mode::Direct => {
            let rt = tf.sqrt();
            let freq = r * phase_slope(THETA_LO, mf, rt);
            let opts = QuadOptions::new(1e-12).frequency(freq).breakpoints(vec![PI / 4.0, PI / 2.0]);
            let v = integrate_1d_with(
                |th| amplitude(th) * (2.0 * PI * (r * (phase(th, mf, rt) - nf) - 0.125)).cos(),
                THETA_LO,
                THETA_HI,
                &opts,
            )?;
            Ok(v.value / r.sqrt())
        }
    }
}

/// Panels on `[a, b]` each spanning at most half a period of `freq(theta)`.
fn graded_panels(a: f64, b: f64, freq: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut x = a;
    while x < b {
        let w = (0.5 / freq(x).max(1e-3)).min(b - a);
        let mut y = (x + w).min(b);
        // Guard against the frequency growing inside the panel.
        while y > x + 1e-12 && freq(y) * (y - x) > 0.5 {
            y = x + 0.5 * (y - x);
        }
        out.push((x, y));
        x = y;
    }
    out
}

/// Direct-mode sum for one `m`, all `n` at once, at one Gauss order.
fn direct_row(t: u64, r_max: f64, m: u64, n_lo: u64, n_hi: u64, order: usize) -> Vec<f64> {
    let rule = gauss_legendre(order);
    let (tf, mf) = (t as f64, m as f64);
    let rt = tf.sqrt();
    let theta_panels = graded_panels(THETA_LO, THETA_HI, |th| r_max * phase_slope(th, mf, rt));
    let phi_max = phase(THETA_LO, mf, rt).max(phase(THETA_HI, mf, rt));
    let r_freq = phi_max.max(n_hi as f64) + n_hi as f64;
    let r_panels = crate::numerics::quadrature::initial_panels(1.0, r_max, &[], r_freq);
    let count = (n_hi - n_lo + 1) as usize;
    let mut acc = vec![KahanSum::new(); count];
    for &(ta, tb) in &theta_panels {
        for (th, wt) in rule.mapped(ta, tb) {
            let amp = amplitude(th);
            if amp == 0.0 {
                continue;
            }
            let ph = phase(th, mf, rt);
            for &(ra, rb) in &r_panels {
                for (r, wr) in rule.mapped(ra, rb) {
                    let w = wt * wr * amp / r.sqrt();
                    let mut z = e(r * (ph - n_lo as f64) - 0.125);
                    let step = e(-r);
                    for a in acc.iter_mut() {
                        a.add(w * z.re);
                        z *= step;
                    }
                }
            }
        }
    }
    acc.iter().map(|a| a.value()).collect()
}

/// Near-circle sum over the region, `sum (t/(m n)) int_1^R I dr` (`Direct`), or
/// its reduced form `sum sqrt(t-m^2)/(t^{1/4} n) int_1^R cos 2 pi r (sqrt(t-m^2) - n) dr/r`
/// (`Stationary`), the `r` integral by cosine integrals.
pub fn e_sum(t: u64, r: u64, mode: Mode) -> Result<f64> {
    if t == 0 {
        return domain("t must be positive");
    }
    if r == 0 {
        return domain("R must be at least 1");
    }
    let region = Region::new(t);
    if region.is_empty() || r == 1 {
        return Ok(0.0);
    }
    let tf = t as f64;
    match mode {
        Mode::Stationary => {
            if t > REDUCED_MAX_T {
                return Err(Error::OutOfRange(format!("t = {t} for the reduced sum")));
            }
            let mut acc = KahanSum::new();
            for (m, n) in region.pairs() {
                let s = (tf - (m * m) as f64).sqrt();
                let w = 2.0 * PI * (s - n as f64);
                let integral = if w == 0.0 {
                    (r as f64).ln()
                } else {
                    cos_over_r_integral(w, r as f64)
                };
                acc.add(s / (tf.powf(0.25) * n as f64) * integral);
            }
            Ok(acc.value())
        }
        Mode::Direct => {
            if t > DIRECT_MAX_T {
                return Err(Error::OutOfRange(format!("t = {t} for the direct sum (max {DIRECT_MAX_T})")));
            }
            let mut lo = KahanSum::new();
            let mut hi = KahanSum::new();
            for m in region.m_lo..=region.m_hi {
                let a = direct_row(t, r as f64, m, region.n_lo, region.n_hi, 8);
                let b = direct_row(t, r as f64, m, region.n_lo, region.n_hi, 12);
                for (k, (x, y)) in a.iter().zip(&b).enumerate() {
                    let n = region.n_lo + k as u64;
                    let c = tf / (m * n) as f64;
                    lo.add(c * x);
                    hi.add(c * y);
                }
            }
            let err = (lo.value() - hi.value()).abs();
            if err > 1e-6 * (1.0 + hi.value().abs()) {
                return Err(Error::NotConverged {
                    value: hi.value().into(),
                    error_estimate: err,
                    evaluations: 0,
                });
            }
            Ok(hi.value())
        }
    }
}

/// `int_0^alpha cos 2 pi (a x + q sqrt(t - x^2)) dx`.
pub fn l_integral(t: u64, a: i64, q: i64, tol: f64) -> Result<f64> {
    let tf = t as f64;
    let al = alpha(t) as f64;
    let freq = (a.unsigned_abs() + q.unsigned_abs()) as f64;
    let opts = QuadOptions::new(tol).frequency(freq);
    let r = integrate_1d_with(
        |x| (2.0 * PI * (a as f64 * x + q as f64 * (tf - x * x).sqrt())).cos(),
        0.0,
        al,
        &opts,
    )?;
    Ok(r.value)
}

/// `L(t, R) = sum_{p,q != 0} sum_{|mu| <= mu_max} (1/|q|) int_0^alpha cos 2 pi ((p + mu Q) x + q sqrt(t - x^2)) dx`
/// with `Q = 2R + 1`.
pub fn l_sum(t: u64, r: u64, mu_max: u64, tol: f64) -> Result<f64> {
    if t == 0 || t > L_SUM_MAX_T {
        return Err(Error::OutOfRange(format!("t = {t} for L_sum (1..={L_SUM_MAX_T})")));
    }
    if r == 0 {
        return domain("R must be at least 1");
    }
    let q_mod = 2 * r + 1;
    if mu_max > q_mod * q_mod {
        return domain("mu_max must not exceed Q^2");
    }
    let ri = r as i64;
    let terms = (4 * r * r * (2 * mu_max + 1)) as f64;
    let per = tol / terms;
    let mut acc = KahanSum::new();
    for p in (-ri..=ri).filter(|&p| p != 0) {
        for q in (-ri..=ri).filter(|&q| q != 0) {
            for mu in -(mu_max as i64)..=mu_max as i64 {
                let a = p + mu * q_mod as i64;
                acc.add(l_integral(t, a, q, per)? / q.unsigned_abs() as f64);
            }
        }
    }
    Ok(acc.value())
}

/// `sum_{m=1}^{alpha} psi(sqrt(t - m^2))` with `psi = -1/2` at integers.
pub fn psi_circle_sum(t: u64) -> Result<f64> {
    if t < 2 {
        return domain("psi_circle_sum needs t >= 2");
    }
    let mut acc = KahanSum::new();
    for m in 1..=alpha(t) {
        let rest = t - m * m;
        let root = isqrt(rest);
        let frac = if root * root == rest { 0.0 } else { (rest as f64).sqrt() - root as f64 };
        acc.add(psi_floor(frac));
    }
    Ok(acc.value())
}

/// `psi_circle_sum(t) - (pi t - P(t)) / 8`.
pub fn pick_check(t: u64) -> Result<f64> {
    Ok(psi_circle_sum(t)? + delta(t)? / 8.0)
}

/// All near/far quantities at one `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NearFarReport {
    pub t: u64,
    pub r: u64,
    pub e_direct: Option<f64>,
    pub e_reduced: f64,
    pub l_value: f64,
    pub psi_sum: f64,
    pub pick_residual: f64,
}

/// Computes a [`NearFarReport`]; the direct sum only when `t <= DIRECT_MAX_T`.
pub fn near_far_report(t: u64, r: u64, mu_max: u64, tol: f64) -> Result<NearFarReport> {
    let e_direct = if t <= DIRECT_MAX_T { Some(e_sum(t, r, Mode::Direct)?) } else { None };
    Ok(NearFarReport {
        t,
        r,
        e_direct,
        e_reduced: e_sum(t, r, Mode::Stationary)?,
        l_value: l_sum(t, r, mu_max, tol)?,
        psi_sum: psi_circle_sum(t)?,
        pick_residual: pick_check(t)?,
    })
}
