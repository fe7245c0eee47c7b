//! Gauss-Legendre rules, adaptive Gauss-Kronrod integration and a polar
//! disk integrator.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalars the integrators accept.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Default
{
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Integral value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T = Complex64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const MAX_CACHED_ORDER: usize = 64;

impl GaussLegendre {
    /// Computes the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Applies the rule on `[a, b]`.
    #[inline]
    pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(&self, a: f64, b: f64, mut f: F) -> T {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(c + h * x) * *w;
        }
        acc * h
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (c + h * x, h * w))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Cached rule of order `n`; orders above 64 are built on the fly.
pub fn gauss_legendre(n: usize) -> std::borrow::Cow<'static, GaussLegendre> {
    static RULES: OnceLock<Vec<GaussLegendre>> = OnceLock::new();
    if n == 0 || n > MAX_CACHED_ORDER {
        return std::borrow::Cow::Owned(GaussLegendre::new(n.max(1)));
    }
    let rules = RULES.get_or_init(|| (1..=MAX_CACHED_ORDER).map(GaussLegendre::new).collect());
    std::borrow::Cow::Borrowed(&rules[n - 1])
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    abs: f64,
}

fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> Panel<T> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.magnitude() * WGK[7];
    let mut fv = [(T::default(), T::default()); 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv[j] = (f1, f2);
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).magnitude();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j].0 - mean).magnitude() + (fv[j].1 - mean).magnitude());
    }
    let hh = h.abs();
    let resasc = resasc * hh;
    let resabs = resabs * hh;
    let mut err = ((resk - resg) * h).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Panel {
        a,
        b,
        value: resk * h,
        error: err,
        abs: resabs,
    }
}

/// Options for [`integrate_1d_with`].
#[derive(Debug, Clone)]
pub struct QuadOptions {
    /// Absolute tolerance on the total error estimate.
    pub tol: f64,
    /// Interior points where the integrand may be non-smooth.
    pub breakpoints: Vec<f64>,
    /// Largest oscillation frequency of the integrand in cycles per unit length.
    pub frequency: f64,
    /// Panel budget.
    pub max_panels: usize,
}

impl QuadOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            breakpoints: Vec::new(),
            frequency: 0.0,
            max_panels: 50_000,
        }
    }

    pub fn breakpoints(mut self, points: Vec<f64>) -> Self {
        self.breakpoints = points;
        self
    }

    pub fn frequency(mut self, cycles_per_unit: f64) -> Self {
        self.frequency = cycles_per_unit;
        self
    }
}

#[derive(PartialEq)]
struct HeapKey(f64, usize);

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .total_cmp(&other.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Splits `[a, b]` at `breakpoints` and into pieces no longer than half a period.
pub fn initial_panels(a: f64, b: f64, breakpoints: &[f64], frequency: f64) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a && x < b && x.is_finite())
        .collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + x.abs()));
    let mut panels = Vec::with_capacity(cuts.len());
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let pieces = if frequency > 0.0 {
            ((hi - lo) * 2.0 * frequency).ceil().max(1.0) as usize
        } else {
            1
        };
        let step = (hi - lo) / pieces as f64;
        for k in 0..pieces {
            let x0 = lo + step * k as f64;
            let x1 = if k + 1 == pieces { hi } else { x0 + step };
            panels.push((x0, x1));
        }
    }
    panels
}

/// Adaptive Gauss-Kronrod (7-15) integration of `f` over `[a, b]`.
pub fn integrate_1d<T: QuadValue, F: FnMut(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult<T>> {
    integrate_1d_with(f, a, b, &QuadOptions::new(tol))
}

/// [`integrate_1d`] with breakpoints, a frequency hint and a panel budget.
pub fn integrate_1d_with<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult<T>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: T::default(),
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut panels: Vec<Panel<T>> = initial_panels(lo, hi, &opts.breakpoints, opts.frequency)
        .into_iter()
        .map(|(x0, x1)| gk15(&mut f, x0, x1))
        .collect();
    let mut evaluations = 15 * panels.len();
    let mut heap: BinaryHeap<HeapKey> = panels
        .iter()
        .enumerate()
        .map(|(i, p)| HeapKey(p.error, i))
        .collect();
    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        let total_abs: f64 = panels.iter().map(|p| p.abs).sum();
        let floor = 64.0 * f64::EPSILON * total_abs;
        if total_err <= opts.tol.max(floor) {
            let mut value = T::default();
            for p in &panels {
                value = value + p.value;
            }
            return Ok(QuadratureResult {
                value: value * sign,
                error_estimate: total_err,
                evaluations,
            });
        }
        let Some(HeapKey(_, idx)) = heap.pop() else {
            break;
        };
        let (pa, pb) = (panels[idx].a, panels[idx].b);
        let mid = 0.5 * (pa + pb);
        if panels.len() >= opts.max_panels || mid <= pa || mid >= pb {
            let mut value = T::default();
            for p in &panels {
                value = value + p.value;
            }
            return Err(Error::NotConverged {
                value: (value * sign).to_complex(),
                error_estimate: total_err,
                evaluations,
            });
        }
        let left = gk15(&mut f, pa, mid);
        let right = gk15(&mut f, mid, pb);
        evaluations += 30;
        heap.push(HeapKey(left.error, idx));
        panels[idx] = left;
        heap.push(HeapKey(right.error, panels.len()));
        panels.push(right);
    }
    Err(Error::NotConverged {
        value: Complex64::new(0.0, 0.0),
        error_estimate: f64::INFINITY,
        evaluations,
    })
}

/// Integrates `g(x, y)` over the disk `x^2 + y^2 <= t` in polar coordinates.
///
/// Panels are sized so that each spans at most half a period of the
/// fastest oscillation (`frequency`, cycles per unit length). The error
/// estimate compares two Gauss orders; panels are halved until it meets `tol`.
pub fn integrate_disk<G: FnMut(f64, f64) -> Complex64>(
    mut g: G,
    t: f64,
    frequency: f64,
    tol: f64,
) -> Result<QuadratureResult<Complex64>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain("disk radius squared must be positive".into()));
    }
    let rho = t.sqrt();
    let base_r = ((rho * 2.0 * frequency).ceil() as usize).max(1);
    let base_th = ((2.0 * PI * rho * 2.0 * frequency).ceil() as usize).max(8);
    let mut evaluations = 0;
    let mut last = None;
    for level in 0..6 {
        let nr = base_r << level;
        let nth = base_th << level;
        let mut eval = |order: usize, evaluations: &mut usize| {
            let rule = gauss_legendre(order);
            let mut acc = crate::numerics::ComplexSum::new();
            for i in 0..nr {
                let r0 = rho * i as f64 / nr as f64;
                let r1 = rho * (i + 1) as f64 / nr as f64;
                for (r, wr) in rule.mapped(r0, r1) {
                    for j in 0..nth {
                        let a0 = 2.0 * PI * j as f64 / nth as f64;
                        let a1 = 2.0 * PI * (j + 1) as f64 / nth as f64;
                        for (th, wt) in rule.mapped(a0, a1) {
                            let (s, c) = th.sin_cos();
                            acc.add(g(r * c, r * s) * (wr * wt * r));
                            *evaluations += 1;
                        }
                    }
                }
            }
            acc.value()
        };
        let lo = eval(8, &mut evaluations);
        let hi = eval(12, &mut evaluations);
        let err = (hi - lo).norm();
        last = Some((hi, err));
        if err <= tol.max(1e-14 * hi.norm()) {
            return Ok(QuadratureResult {
                value: hi,
                error_estimate: err,
                evaluations,
            });
        }
    }
    let (value, error_estimate) = last.unwrap_or_default();
    Err(Error::NotConverged {
        value,
        error_estimate,
        evaluations,
    })
}
