//! Sine and cosine integrals.

use std::f64::consts::FRAC_PI_2;

use super::quadrature::gauss_legendre;

const ASYMPTOTIC_FROM: f64 = 50.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn panel_integral(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let rule = gauss_legendre(16);
    let panels = x.ceil().max(1.0) as usize;
    let h = x / panels as f64;
    let mut acc = super::KahanSum::new();
    for i in 0..panels {
        acc.add(rule.integrate(h * i as f64, h * (i + 1) as f64, &f));
    }
    acc.value()
}

/// Auxiliary functions `f(x)`, `g(x)` with `Si(x) = pi/2 - f cos x - g sin x`.
fn auxiliary(x: f64) -> (f64, f64) {
    let inv2 = 1.0 / (x * x);
    let (mut f, mut g) = (0.0, 0.0);
    let mut tf = 1.0 / x;
    let mut tg = inv2;
    let mut prev = f64::INFINITY;
    for k in 0..40 {
        if tf.abs() > prev {
            break;
        }
        prev = tf.abs();
        f += tf;
        g += tg;
        let kk = 2.0 * k as f64;
        tf *= -(kk + 1.0) * (kk + 2.0) * inv2;
        tg *= -(kk + 2.0) * (kk + 3.0) * inv2;
    }
    (f, g)
}

/// `Si(x) = int_0^x sin(u)/u du`.
pub fn sine_integral(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax == 0.0 {
        0.0
    } else if ax <= ASYMPTOTIC_FROM {
        panel_integral(|u| u.sin() / u, ax)
    } else {
        let (f, g) = auxiliary(ax);
        FRAC_PI_2 - f * ax.cos() - g * ax.sin()
    };
    v.copysign(x)
}

/// Entire cosine integral `Cin(x) = int_0^x (1 - cos u)/u du`; even in `x`.
pub fn cin(x: f64) -> f64 {
    let ax = x.abs();
    if ax == 0.0 {
        0.0
    } else if ax <= ASYMPTOTIC_FROM {
        panel_integral(
            |u| {
                let s = (0.5 * u).sin();
                2.0 * s * s / u
            },
            ax,
        )
    } else {
        let (f, g) = auxiliary(ax);
        let ci = f * ax.sin() - g * ax.cos();
        EULER_GAMMA + ax.ln() - ci
    }
}

/// `int_1^R cos(k r)/r dr` for `R >= 1`.
pub fn cos_over_r_integral(k: f64, r: f64) -> f64 {
    r.ln() - cin(k * r) + cin(k)
}

/// `int_1^R sin(k r)/r dr` for `R >= 1`.
pub fn sin_over_r_integral(k: f64, r: f64) -> f64 {
    sine_integral(k * r) - sine_integral(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_reference_values() {
        assert!((sine_integral(1.0) - 0.946_083_070_367_183_0).abs() < 1e-15);
        assert!((sine_integral(std::f64::consts::PI) - 1.851_937_051_982_466).abs() < 1e-14);
        assert!((sine_integral(100.0) - 1.562_225_466_889_056).abs() < 1e-14);
    }

    #[test]
    fn branches_agree() {
        let (f, g) = auxiliary(ASYMPTOTIC_FROM);
        let asym = FRAC_PI_2 - f * ASYMPTOTIC_FROM.cos() - g * ASYMPTOTIC_FROM.sin();
        assert!((asym - sine_integral(ASYMPTOTIC_FROM)).abs() < 1e-14);
        let ci = f * ASYMPTOTIC_FROM.sin() - g * ASYMPTOTIC_FROM.cos();
        assert!((EULER_GAMMA + ASYMPTOTIC_FROM.ln() - ci - cin(ASYMPTOTIC_FROM)).abs() < 1e-13);
    }

    #[test]
    fn cin_reference() {
        // Cin(1) = gamma - Ci(1), Ci(1) = 0.337403922900968...
        assert!((cin(1.0) - (EULER_GAMMA - 0.337_403_922_900_968_1)).abs() < 1e-15);
    }
}
