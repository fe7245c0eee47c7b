//! Disk approximations `F(t, Q)` to the circle count: direct quadrature and
//! Bessel sums.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::counting::{count_lattice, CountMethod};
use crate::error::{domain, Error, Result};
use crate::euler_maclaurin::{t_polygon, DirichletKernel2D};
use crate::geometry::build_refined_polygon;
use crate::numerics::{e, gauss_legendre, j1, psi1, psi_fourier, ComplexSum, FourierDepth, KahanSum, QuadratureResult};

/// Largest Bessel argument accepted by [`f_bessel`].
pub const MAX_BESSEL_ARGUMENT: f64 = 1e8;
/// Largest `t` accepted by [`f_quadrature`] and [`compare_t_vs_f`].
pub const QUADRATURE_MAX_T: u64 = 400;

/// Kernel modulus, Fourier depth and shift cutoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruncationParams {
    pub q: u64,
    pub r: u64,
    pub fourier_n: u64,
    pub mu_max: u64,
    pub nu_max: u64,
}

impl TruncationParams {
    pub fn new(q: u64, fourier_n: u64, mu_max: u64, nu_max: u64) -> Result<Self> {
        if q < 3 || q % 2 == 0 {
            return domain("Q must be odd and at least 3");
        }
        if fourier_n < q {
            return domain("Fourier depth must be at least Q");
        }
        if mu_max == 0 || nu_max == 0 || mu_max > q * q || nu_max > q * q {
            return domain("shift cutoffs must lie in 1..=Q^2");
        }
        Ok(Self {
            q,
            r: q / 2,
            fourier_n,
            mu_max,
            nu_max,
        })
    }

    /// Depth and both cutoffs at `Q^2`.
    pub fn standard(q: u64) -> Result<Self> {
        Self::new(q, q * q, q * q, q * q)
    }

    /// Same depth, cutoffs at `Q`.
    pub fn short_cutoff(q: u64) -> Result<Self> {
        Self::new(q, q * q, q, q)
    }
}

/// `F(t, Q)` compared with the exact count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproximationReport {
    pub t: u64,
    pub params: TruncationParams,
    pub approx_value: f64,
    pub exact_p: u64,
    pub abs_error: f64,
    /// `abs_error * Q / sqrt(t)`.
    pub normalized_error: f64,
}

impl ApproximationReport {
    fn new(t: u64, params: TruncationParams, approx_value: f64) -> Result<Self> {
        let exact_p = count_lattice(t, CountMethod::Rows)?.count;
        let abs_error = (approx_value - exact_p as f64).abs();
        Ok(Self {
            t,
            params,
            approx_value,
            exact_p,
            abs_error,
            normalized_error: abs_error * params.q as f64 / (t as f64).sqrt(),
        })
    }
}

/// `int_{x^2+y^2<=t} e(a x + b y)`, i.e. `sqrt(t/(a^2+b^2)) J_1(2 pi sqrt(t (a^2+b^2)))`,
/// and `pi t` at the origin.
pub fn disk_fourier_integral(a: f64, b: f64, t: f64) -> f64 {
    let r2 = a * a + b * b;
    if r2 == 0.0 {
        return PI * t;
    }
    (t / r2).sqrt() * j1(2.0 * PI * (t * r2).sqrt())
}

/// Which coefficients the single-shift families of the Bessel sum carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum BesselForm {
    /// `3 sum_mu D(p + mu Q, q)`.
    #[default]
    Printed,
    /// `sum_mu (3/2 + p/(2 Q mu)) D(p + mu Q, q) + (3/2 + q/(2 Q mu)) D(p, q + mu Q)`,
    /// the term-by-term expansion of the disk formula.
    Expanded,
}

fn checked_d(a: i64, b: i64, t: f64) -> Result<f64> {
    let (a, b) = (a as f64, b as f64);
    let arg = 2.0 * PI * (t * (a * a + b * b)).sqrt();
    if arg > MAX_BESSEL_ARGUMENT {
        return Err(Error::Overflow(format!("J_1 argument {arg:e}")));
    }
    Ok(disk_fourier_integral(a, b, t))
}

/// Bessel-sum approximation to `P(t)` with the given cutoffs.
pub fn f_bessel(t: u64, params: &TruncationParams, form: BesselForm) -> Result<ApproximationReport> {
    if t == 0 {
        return domain("t must be positive");
    }
    if params.q * params.q > t {
        return domain(format!("Q = {} exceeds sqrt(t) for t = {t}", params.q));
    }
    let value = bessel_sum(t as f64, params, form)?;
    ApproximationReport::new(t, *params, value)
}

/// The Bessel sum itself, for any real `t > 0`.
pub fn bessel_sum(t: f64, params: &TruncationParams, form: BesselForm) -> Result<f64> {
    let r = params.r as i64;
    let q = params.q as i64;
    let qf = params.q as f64;
    let mus: Vec<i64> = (-(params.mu_max as i64)..=params.mu_max as i64).filter(|&m| m != 0).collect();
    let nus: Vec<i64> = (-(params.nu_max as i64)..=params.nu_max as i64).filter(|&n| n != 0).collect();
    let mut acc = KahanSum::new();
    for p in -r..=r {
        for qq in -r..=r {
            acc.add(checked_d(p, qq, t)?);
            for &mu in &mus {
                match form {
                    BesselForm::Printed => acc.add(3.0 * checked_d(p + mu * q, qq, t)?),
                    BesselForm::Expanded => {
                        let m = mu as f64;
                        acc.add((1.5 + p as f64 / (2.0 * qf * m)) * checked_d(p + mu * q, qq, t)?);
                        acc.add((1.5 + qq as f64 / (2.0 * qf * m)) * checked_d(p, qq + mu * q, t)?);
                    }
                }
                for &nu in &nus {
                    let c = (p as f64 / mu as f64 + qq as f64 / nu as f64) / (2.0 * qf);
                    acc.add(-c * checked_d(p + mu * q, qq + nu * q, t)?);
                }
            }
        }
    }
    Ok(acc.value())
}

/// How the sawtooth enters [`f_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PsiMode {
    /// `psi_1` itself, with panels split at its jumps.
    Exact,
    /// The truncated series with `fourier_n` harmonics.
    Fourier,
}

struct Frame {
    rho: f64,
    q: f64,
    r: i64,
    mode: PsiMode,
    depth: FourierDepth,
}

impl Frame {
    fn psi(&self, x: f64) -> f64 {
        match self.mode {
            PsiMode::Exact => psi1(self.q * x),
            PsiMode::Fourier => psi_fourier(self.q * x, self.depth),
        }
    }

    /// Highest frequency in cycles per unit length.
    fn frequency(&self) -> f64 {
        let psi = match self.mode {
            PsiMode::Exact => 0.0,
            PsiMode::Fourier => self.depth.get() as f64 * self.q,
        };
        2.0 * self.r as f64 + psi
    }
}

fn panels_1d(a: f64, b: f64, mut cuts: Vec<f64>, freq: f64) -> Vec<(f64, f64)> {
    crate::numerics::quadrature::initial_panels(a, b, {
        cuts.retain(|&c| c > a && c < b);
        &cuts
    }, freq)
}

/// Angular panels for `x = rho sin phi`, split where `Q x` or `Q rho cos phi` is an integer.
fn phi_panels(fr: &Frame) -> Vec<(f64, f64)> {
    let qr = fr.q * fr.rho;
    let kmax = qr.floor() as i64;
    let mut cuts = Vec::new();
    for k in -kmax..=kmax {
        let s = (k as f64 / qr).clamp(-1.0, 1.0);
        cuts.push(s.asin());
        if k > 0 {
            let c = (k as f64 / qr).acos();
            cuts.push(c);
            cuts.push(-c);
        }
    }
    let freq_phi = fr.frequency() * fr.rho;
    panels_1d(-FRAC_PI_2, FRAC_PI_2, cuts, freq_phi)
}

fn f_quadrature_at_order(fr: &Frame, phis: &[(f64, f64)], order: usize) -> (Complex64, usize) {
    let rule = gauss_legendre(order);
    let r = fr.r;
    let qf = fr.q;
    let nq = (2 * r + 1) as usize;
    let mut area = vec![[ComplexSum::new(); 4]; nq * nq];
    let mut bnd = vec![ComplexSum::new(); nq * nq];
    let mut evals = 0usize;
    let mut g0 = vec![Complex64::default(); nq];
    let mut g1 = vec![Complex64::default(); nq];
    for &(pa, pb) in phis {
        for (phi, wphi) in rule.mapped(pa, pb) {
            let (sn, cs) = phi.sin_cos();
            let x = fr.rho * sn;
            let h = fr.rho * cs;
            let jac = wphi * fr.rho * cs;
            // Inner integrals over |y| <= h for every q.
            g0.iter_mut().for_each(|v| *v = Complex64::default());
            g1.iter_mut().for_each(|v| *v = Complex64::default());
            let kmax = (qf * h).floor() as i64;
            let cuts: Vec<f64> = (-kmax..=kmax).map(|k| k as f64 / qf).collect();
            for (ya, yb) in panels_1d(-h, h, cuts, fr.frequency()) {
                for (y, wy) in rule.mapped(ya, yb) {
                    let py = fr.psi(y);
                    evals += 1;
                    for (i, qq) in (-r..=r).enumerate() {
                        let ph = e(qq as f64 * y) * wy;
                        g0[i] += ph;
                        g1[i] += ph * py;
                    }
                }
            }
            let px = fr.psi(x);
            // Boundary point (S, Y) = (h, x) with dy = jac.
            let (s, yb) = (h, x);
            let ps = fr.psi(s);
            let pms = fr.psi(-s);
            let pyb = px;
            for (i, p) in (-r..=r).enumerate() {
                let ex = e(p as f64 * x) * jac;
                for (j, qq) in (-r..=r).enumerate() {
                    let k = i * nq + j;
                    area[k][0].add(ex * g0[j]);
                    area[k][1].add(ex * g0[j] * px);
                    area[k][2].add(ex * g1[j]);
                    area[k][3].add(ex * g1[j] * px);
                    let (pf, qf2) = (p as f64, qq as f64);
                    let e1 = e(pf * s + qf2 * yb);
                    let e2 = e(-pf * s + qf2 * yb);
                    let e3 = e(pf * yb + qf2 * s);
                    let e4 = e(pf * yb - qf2 * s);
                    let single = (e1 * ps - e2 * pms + e3 * ps - e4 * pms) * (-1.5 / qf);
                    let cq = Complex64::new(0.0, -PI * qf2 / (qf * qf));
                    let cp = Complex64::new(0.0, -PI * pf / (qf * qf));
                    let double = cq * (e1 * ps - e2 * pms) * pyb + cp * (e3 * ps - e4 * pms) * pyb;
                    bnd[k].add((single + double) * jac);
                }
            }
            evals += 1;
        }
    }
    let mut total = ComplexSum::new();
    for (i, p) in (-r..=r).enumerate() {
        for (j, qq) in (-r..=r).enumerate() {
            let k = i * nq + j;
            let a = area[k].map(|s| s.value());
            let (pf, qf2) = (p as f64, qq as f64);
            total.add(a[0]);
            total.add(a[1] * Complex64::new(0.0, 2.0 * PI * pf / qf));
            total.add(a[2] * Complex64::new(0.0, 2.0 * PI * qf2 / qf));
            total.add(a[3] * (-4.0 * PI * PI * pf * qf2 / (qf * qf)));
            total.add(bnd[k].value());
        }
    }
    (total.value(), evals)
}

/// The disk formula for `F(t, Q)` by direct quadrature.
///
/// Works in the frame where the disk has radius `sqrt(t)`; the outer
/// variable is the angle `phi` with `x = sqrt(t) sin phi`, and the panels
/// are split wherever `Q x`, `Q y` or `Q sqrt(t - y^2)` is an integer.
pub fn f_quadrature(t: u64, params: &TruncationParams, mode: PsiMode, tol: f64) -> Result<QuadratureResult> {
    if t == 0 || t > QUADRATURE_MAX_T {
        return Err(Error::OutOfRange(format!("t = {t} for the quadrature path (1..={QUADRATURE_MAX_T})")));
    }
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let fr = Frame {
        rho: (t as f64).sqrt(),
        q: params.q as f64,
        r: params.r as i64,
        mode,
        depth: FourierDepth::new(params.fourier_n as usize)?,
    };
    let phis = phi_panels(&fr);
    let mut evaluations = 0;
    let mut last = None;
    for (lo, hi) in [(8, 12), (12, 20), (20, 32)] {
        let (a, ea) = f_quadrature_at_order(&fr, &phis, lo);
        let (b, eb) = f_quadrature_at_order(&fr, &phis, hi);
        evaluations += ea + eb;
        let err = (a - b).norm();
        last = Some((b, err));
        if err <= tol {
            return Ok(QuadratureResult {
                value: b,
                error_estimate: err,
                evaluations,
            });
        }
    }
    let (value, error_estimate) = last.expect("order ladder is non-empty");
    Err(Error::NotConverged {
        value,
        error_estimate,
        evaluations,
    })
}

/// `|T(Delta_{t,Q}, f) - F(t, Q)|` against `(sqrt(t)/Q) ln^2 Q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TvsF {
    pub t: u64,
    pub q: u64,
    pub t_value: f64,
    pub f_value: f64,
    pub difference: f64,
    pub scale: f64,
    pub ratio: f64,
}

/// Compares the polygon functional on `Delta_{t,Q}` with the exact-sawtooth disk formula.
pub fn compare_t_vs_f(t: u64, params: &TruncationParams, tol: f64) -> Result<TvsF> {
    if t > QUADRATURE_MAX_T {
        return Err(Error::OutOfRange(format!("t = {t} for compare_t_vs_f")));
    }
    let poly = build_refined_polygon(t, params.q)?;
    let report = t_polygon(&poly, &DirichletKernel2D::new(params.q), tol)?;
    let f = f_quadrature(t, params, PsiMode::Exact, tol)?;
    let qf = params.q as f64;
    let scale = (t as f64).sqrt() / qf * qf.ln().powi(2);
    let difference = (report.t_value.re - f.value.re).abs();
    Ok(TvsF {
        t,
        q: params.q,
        t_value: report.t_value.re,
        f_value: f.value.re,
        difference,
        scale,
        ratio: difference / scale,
    })
}
