//! Named verification suites with per-check residuals.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::Serialize;

use super::config::Config;
use crate::asymptotics::{
    bessel_sum, compare_t_vs_f, disk_fourier_integral, f_bessel, f_quadrature, BesselForm, PsiMode, TruncationParams,
};
use crate::counting::verify_identity_2;
use crate::error::{Error, Result};
use crate::euler_maclaurin::{
    em1d, em1d_expansion, Constant, DirichletKernel2D, PlaneWave, Polynomial, SmoothFunction2D, t_polygon,
};
use crate::geometry::{LatticePoint, LatticePolygon};
use crate::near_far::{e_sum, inner_integral, l_sum, pick_check, Mode};
use crate::numerics::{e, integrate_disk, KahanSum};
use crate::Complex64;

/// Largest fitted constant any suite accepts.
pub const FITTED_CONSTANT_BOUND: f64 = 10.0;
/// Bound on `|pick_check(t)|` for `t <= 2000`.
pub const PICK_BOUND: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Em1d,
    Em2d,
    KernelIdentity,
    Bessel,
    Approximation,
    NearFar,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Em1d,
        Suite::Em2d,
        Suite::KernelIdentity,
        Suite::Bessel,
        Suite::Approximation,
        Suite::NearFar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Em1d => "em1d",
            Suite::Em2d => "em2d",
            Suite::KernelIdentity => "kernel-identity",
            Suite::Bessel => "bessel",
            Suite::Approximation => "approximation",
            Suite::NearFar => "nearfar",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// One measured residual against its bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            bound,
            pass: residual.is_finite() && residual <= bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Runs one suite, or all of them with check names prefixed by suite.
pub fn run_suite(suite: Suite, config: &Config) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::INDIVIDUAL {
                for mut c in run_suite(s, config)?.checks {
                    c.name = format!("{}/{}", s.name(), c.name);
                    all.push(c);
                }
            }
            all
        }
        Suite::Em1d => em1d_suite()?,
        Suite::Em2d => em2d_suite(config.quad_tol)?,
        Suite::KernelIdentity => kernel_suite()?,
        Suite::Bessel => bessel_suite()?,
        Suite::Approximation => approximation_suite(config.quad_tol)?,
        Suite::NearFar => nearfar_suite()?,
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

fn em1d_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cubic = |x: f64| x * x * x - 2.0 * x;
    let dcubic = |x: f64| 3.0 * x * x - 2.0;
    for (a, b) in [(0.3, 7.2), (1.0, 10.0), (-2.5, 3.0)] {
        let exact: f64 = ((a as f64).floor() as i64 + 1..=(b as f64).floor() as i64)
            .map(|p| cubic(p as f64))
            .sum();
        let v = em1d(cubic, dcubic, a, b, 1e-12)?;
        out.push(Check::new(format!("cubic on [{a}, {b}]"), (v - exact).abs(), 1e-10 * (1.0 + exact.abs())));
    }
    let d: [&dyn Fn(f64) -> f64; 5] = [
        &|x| x.powi(4),
        &|x| 4.0 * x.powi(3),
        &|x| 12.0 * x * x,
        &|x| 24.0 * x,
        &|_| 24.0,
    ];
    let v = em1d_expansion(&d, 0.5, 6.5, 4)?;
    let exact: f64 = (1..=6).map(|p| (p as f64).powi(4)).sum();
    out.push(Check::new("quartic expansion depth 4", (v - exact).abs(), 1e-10 * exact));
    let n = 1000;
    let v = em1d(|x| x.powi(-2), |x| -2.0 * x.powi(-3), 0.5, n as f64, 1e-12)?;
    let exact: f64 = (1..=n).rev().map(|p| (p as f64).powi(-2)).collect::<KahanSum>().value();
    out.push(Check::new("sum of 1/p^2 to 1000", (v - exact).abs(), 1e-8));
    Ok(out)
}

fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
    v.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
}

fn em2d_suite(tol: f64) -> Result<Vec<Check>> {
    let polygons = [
        ("triangle", LatticePolygon::new(pts(&[(0, 0), (5, 0), (0, 3)]))?),
        ("square", LatticePolygon::new(pts(&[(0, 0), (3, 0), (3, 3), (0, 3)]))?),
        ("pentagon", LatticePolygon::new(pts(&[(0, 0), (4, 1), (5, 4), (2, 6), (-1, 3)]))?),
    ];
    let constant = Constant(Complex64::new(1.0, 0.0));
    let poly = Polynomial::new(vec![(2, 1, 0.3), (0, 1, 1.0), (1, 0, -0.5)]);
    let wave = PlaneWave::new(1, 2, 5);
    let kernel = DirichletKernel2D::new(3);
    let functions: [(&str, &dyn SmoothFunction2D); 4] =
        [("constant", &constant), ("polynomial", &poly), ("plane wave", &wave), ("kernel", &kernel)];
    let mut out = Vec::new();
    for (pn, p) in &polygons {
        for (fname, f) in functions {
            let r = t_polygon(p, f, tol)?;
            out.push(Check::new(format!("{pn} x {fname} identity"), r.identity_residual(), 10.0 * tol));
            let excess = ((r.lattice_sum - r.t_value).norm() - r.boundary_abs_sum).max(0.0);
            out.push(Check::new(format!("{pn} x {fname} inequality"), excess, 10.0 * tol));
        }
    }
    Ok(out)
}

fn kernel_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [1, 3, 5, 7, 9] {
        let mut worst = 0.0f64;
        for t in 1..=50 {
            let c = verify_identity_2(t, q)?;
            worst = worst.max(if c.inclusion_verified { c.residual } else { f64::INFINITY });
        }
        out.push(Check::new(format!("Q = {q}, t = 1..50"), worst, 1e-9));
    }
    Ok(out)
}

fn bessel_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (a, b, t) in [(1.0, 0.0, 1.0), (2.0, 1.0, 3.0), (0.0, 3.0, 2.5), (1.0, -1.0, 7.0), (0.5, 0.25, 11.0)] {
        let exact = disk_fourier_integral(a, b, t);
        let freq = f64::hypot(a, b);
        let q = integrate_disk(|x, y| e(a * x + b * y), t, freq, 1e-10)?;
        out.push(Check::new(format!("disk ({a}, {b}), t = {t}"), (q.value.re - exact).abs(), 1e-6));
    }
    let t = 5.0;
    let near = disk_fourier_integral(1e-4, 0.0, t);
    out.push(Check::new("continuity at the origin", (near - PI * t).abs(), 1e-3 * t));
    let sym = (disk_fourier_integral(2.0, 3.0, t) - disk_fourier_integral(-3.0, -2.0, t)).abs();
    out.push(Check::new("rotation symmetry", sym, 1e-12));
    Ok(out)
}

fn approximation_suite(tol: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (t, q) in [(100, 3), (400, 5)] {
        let r = f_bessel(t, &TruncationParams::standard(q)?, BesselForm::Printed)?;
        out.push(Check::new(
            format!("Bessel sum t = {t}, Q = {q}: error Q/sqrt(t)"),
            r.normalized_error,
            FITTED_CONSTANT_BOUND,
        ));
    }
    let params = TruncationParams::standard(3)?;
    let quad = f_quadrature(10, &params, PsiMode::Fourier, tol)?;
    let bessel = bessel_sum(10.0, &params, BesselForm::Expanded)?;
    out.push(Check::new("disk quadrature vs Bessel sum, t = 10", (quad.value.re - bessel).abs(), 1e-3));
    out.push(Check::new("disk quadrature imaginary part", quad.value.im.abs(), 1e-9));
    let cmp = compare_t_vs_f(25, &params, tol)?;
    out.push(Check::new("polygon vs disk, t = 25, Q = 3", cmp.ratio, FITTED_CONSTANT_BOUND));
    Ok(out)
}

fn nearfar_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let t = 25u64;
    let d = e_sum(t, 3, Mode::Direct)?;
    let r = e_sum(t, 3, Mode::Stationary)?;
    out.push(Check::new(
        "near sum direct vs reduced, t = 25",
        (d - r).abs() / (t as f64).ln().powi(2),
        FITTED_CONSTANT_BOUND,
    ));
    let mut worst = 0.0f64;
    for (r, m, n) in [(1.0, 1, 3), (2.5, 3, 4), (4.0, 2, 8)] {
        let v = inner_integral(r, m, n, 25, Mode::Direct)?;
        worst = worst.max(v.abs() - PI / r.sqrt());
    }
    out.push(Check::new("inner integral crude bound", worst.max(0.0), 0.0));
    let a = l_sum(100, 3, 9, 1e-8)?;
    let b = l_sum(100, 3, 9, 1e-10)?;
    out.push(Check::new("L(100, 3) across tolerances", (a - b).abs(), 1e-6));
    let mut worst = 0.0f64;
    for t in 2..=2000 {
        worst = worst.max(pick_check(t)?.abs());
    }
    out.push(Check::new("|sawtooth sum - (pi t - P)/8|, t <= 2000", worst, PICK_BOUND));
    Ok(out)
}
