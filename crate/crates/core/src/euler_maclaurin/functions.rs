//! Smooth test functions on the plane.

use num_complex::Complex64;

use crate::numerics::{e, kernel_with_derivative};

/// A `C^2` function with the derivatives the planar formula needs.
pub trait SmoothFunction2D: Sync {
    fn value(&self, x: f64, y: f64) -> Complex64;
    fn dx(&self, x: f64, y: f64) -> Complex64;
    fn dy(&self, x: f64, y: f64) -> Complex64;
    fn dxy(&self, x: f64, y: f64) -> Complex64;

    /// Fastest oscillation in cycles per unit length.
    fn frequency_hint(&self) -> f64 {
        0.0
    }

    /// `[value, dx, dy, dxy]` in one call.
    fn eval_all(&self, x: f64, y: f64) -> [Complex64; 4] {
        [self.value(x, y), self.dx(x, y), self.dy(x, y), self.dxy(x, y)]
    }
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// A constant function.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub Complex64);

impl SmoothFunction2D for Constant {
    fn value(&self, _: f64, _: f64) -> Complex64 {
        self.0
    }
    fn dx(&self, _: f64, _: f64) -> Complex64 {
        Complex64::default()
    }
    fn dy(&self, _: f64, _: f64) -> Complex64 {
        Complex64::default()
    }
    fn dxy(&self, _: f64, _: f64) -> Complex64 {
        Complex64::default()
    }
}

/// Real polynomial `sum c x^i y^j`.
#[derive(Debug, Clone, Default)]
pub struct Polynomial {
    pub terms: Vec<(u32, u32, f64)>,
}

impl Polynomial {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Self {
        Self { terms }
    }

    fn eval(&self, x: f64, y: f64, di: u32, dj: u32) -> f64 {
        let falling = |n: u32, k: u32| (0..k).map(|r| (n - r) as f64).product::<f64>();
        self.terms
            .iter()
            .filter(|&&(i, j, _)| i >= di && j >= dj)
            .map(|&(i, j, c)| {
                c * falling(i, di) * falling(j, dj) * x.powi((i - di) as i32) * y.powi((j - dj) as i32)
            })
            .sum()
    }
}

impl SmoothFunction2D for Polynomial {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        re(self.eval(x, y, 0, 0))
    }
    fn dx(&self, x: f64, y: f64) -> Complex64 {
        re(self.eval(x, y, 1, 0))
    }
    fn dy(&self, x: f64, y: f64) -> Complex64 {
        re(self.eval(x, y, 0, 1))
    }
    fn dxy(&self, x: f64, y: f64) -> Complex64 {
        re(self.eval(x, y, 1, 1))
    }
}

/// Plane wave `e((p x + q y) / d)`.
#[derive(Debug, Clone, Copy)]
pub struct PlaneWave {
    pub p: i64,
    pub q: i64,
    pub d: u64,
}

impl PlaneWave {
    pub fn new(p: i64, q: i64, d: u64) -> Self {
        assert!(d > 0, "plane wave denominator must be positive");
        Self { p, q, d }
    }

    fn phase(&self, x: f64, y: f64) -> Complex64 {
        let d = self.d as f64;
        e((self.p as f64 * x + self.q as f64 * y) / d)
    }

    fn k(&self) -> (f64, f64) {
        let w = 2.0 * std::f64::consts::PI / self.d as f64;
        (w * self.p as f64, w * self.q as f64)
    }
}

impl SmoothFunction2D for PlaneWave {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        self.phase(x, y)
    }
    fn dx(&self, x: f64, y: f64) -> Complex64 {
        self.phase(x, y) * Complex64::new(0.0, self.k().0)
    }
    fn dy(&self, x: f64, y: f64) -> Complex64 {
        self.phase(x, y) * Complex64::new(0.0, self.k().1)
    }
    fn dxy(&self, x: f64, y: f64) -> Complex64 {
        let (kx, ky) = self.k();
        self.phase(x, y) * (-kx * ky)
    }
    fn frequency_hint(&self) -> f64 {
        self.p.unsigned_abs().max(self.q.unsigned_abs()) as f64 / self.d as f64
    }
}

/// Normalized two-dimensional Dirichlet kernel `K(x) K(y) / Q^2` with
/// `K(x) = sum_{|p| <= R} e(p x / Q)`, `Q = 2R + 1`.
///
/// At lattice points it is the indicator of `Q | m` and `Q | n`.
#[derive(Debug, Clone, Copy)]
pub struct DirichletKernel2D {
    pub q: u64,
}

impl DirichletKernel2D {
    pub fn new(q: u64) -> Self {
        assert!(q % 2 == 1, "kernel modulus must be odd");
        Self { q }
    }
}

impl SmoothFunction2D for DirichletKernel2D {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        self.eval_all(x, y)[0]
    }
    fn dx(&self, x: f64, y: f64) -> Complex64 {
        self.eval_all(x, y)[1]
    }
    fn dy(&self, x: f64, y: f64) -> Complex64 {
        self.eval_all(x, y)[2]
    }
    fn dxy(&self, x: f64, y: f64) -> Complex64 {
        self.eval_all(x, y)[3]
    }
    fn frequency_hint(&self) -> f64 {
        (self.q / 2) as f64 / self.q as f64
    }
    fn eval_all(&self, x: f64, y: f64) -> [Complex64; 4] {
        let (kx, dkx) = kernel_with_derivative(x, self.q);
        let (ky, dky) = kernel_with_derivative(y, self.q);
        let s = 1.0 / (self.q * self.q) as f64;
        [re(kx * ky * s), re(dkx * ky * s), re(kx * dky * s), re(dkx * dky * s)]
    }
}

type BoxedFn = Box<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// A function given by closures for the value and its derivatives.
pub struct ClosureFunction {
    pub value: BoxedFn,
    pub dx: BoxedFn,
    pub dy: BoxedFn,
    pub dxy: BoxedFn,
    pub frequency_hint: f64,
}

impl SmoothFunction2D for ClosureFunction {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        (self.value)(x, y)
    }
    fn dx(&self, x: f64, y: f64) -> Complex64 {
        (self.dx)(x, y)
    }
    fn dy(&self, x: f64, y: f64) -> Complex64 {
        (self.dy)(x, y)
    }
    fn dxy(&self, x: f64, y: f64) -> Complex64 {
        (self.dxy)(x, y)
    }
    fn frequency_hint(&self) -> f64 {
        self.frequency_hint
    }
}

/// `f(x - dx, y - dy)` for an integer shift.
pub struct Translated<'a, F: SmoothFunction2D + ?Sized> {
    pub inner: &'a F,
    pub shift: (i64, i64),
}

impl<F: SmoothFunction2D + ?Sized> Translated<'_, F> {
    fn at(&self, x: f64, y: f64) -> (f64, f64) {
        (x - self.shift.0 as f64, y - self.shift.1 as f64)
    }
}

impl<F: SmoothFunction2D + ?Sized> SmoothFunction2D for Translated<'_, F> {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        let (u, v) = self.at(x, y);
        self.inner.value(u, v)
    }
    fn dx(&self, x: f64, y: f64) -> Complex64 {
        let (u, v) = self.at(x, y);
        self.inner.dx(u, v)
    }
    fn dy(&self, x: f64, y: f64) -> Complex64 {
        let (u, v) = self.at(x, y);
        self.inner.dy(u, v)
    }
    fn dxy(&self, x: f64, y: f64) -> Complex64 {
        let (u, v) = self.at(x, y);
        self.inner.dxy(u, v)
    }
    fn frequency_hint(&self) -> f64 {
        self.inner.frequency_hint()
    }
    fn eval_all(&self, x: f64, y: f64) -> [Complex64; 4] {
        let (u, v) = self.at(x, y);
        self.inner.eval_all(u, v)
    }
}
