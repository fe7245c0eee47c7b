use num_complex::Complex64;

/// Neumaier-compensated accumulator for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated accumulator for complex values, one [`KahanSum`] per component.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Compensated sum of a slice.
pub fn compensated_sum(xs: &[f64]) -> f64 {
    xs.iter().copied().collect::<KahanSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_large_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(&xs), 2.0);
    }

    #[test]
    fn complex_parts_independent() {
        let mut s = ComplexSum::new();
        s.add(Complex64::new(1e16, 1.0));
        s.add(Complex64::new(1.0, -1e16));
        s.add(Complex64::new(-1e16, 1e16));
        assert_eq!(s.value(), Complex64::new(1.0, 1.0));
    }
}
