mod common;

use std::f64::consts::PI;

use common::simpson;
use gausscircle::numerics::*;
use gausscircle::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `J_n(x)` by the periodic trapezoid rule on `(1/2 pi) int_0^{2 pi} cos(n s - x sin s) ds`.
fn bessel_oracle(n: u32, x: f64) -> f64 {
    let m = 400 + 2 * x.ceil() as usize;
    let h = 2.0 * PI / m as f64;
    let s: f64 = (0..m).map(|i| (n as f64 * i as f64 * h - x * (i as f64 * h).sin()).cos()).sum();
    s / m as f64
}

#[test]
fn psi1_values() {
    assert_eq!(psi1(0.75), 0.25);
    assert_eq!(psi1(3.0), 0.0);
    assert_eq!(psi1(-0.25), 0.25);
    assert_eq!(psi1(5.0 + 1e-13), 0.0);
    assert_eq!(psi_floor(3.0), -0.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn psi1_is_periodic(x in -50.0f64..50.0, n in -1000i64..1000) {
        let a = psi1(x);
        let b = psi1(x + n as f64);
        prop_assert!((a - b).abs() < 1e-9 || a == 0.0 || b == 0.0);
        prop_assert!((-0.5..0.5).contains(&a));
    }
}

#[test]
fn fourier_sawtooth_values() {
    for n in [1, 7, 100] {
        let d = FourierDepth::new(n).unwrap();
        assert_eq!(psi_fourier(0.0, d), 0.0);
        assert!(psi_fourier(0.5, d).abs() < 1e-12);
    }
}

#[test]
fn fourier_sawtooth_l1_gap() {
    for n in [64, 256] {
        let d = FourierDepth::new(n).unwrap();
        let m = 200_000;
        let gap: f64 = (0..m)
            .map(|i| {
                let x = (i as f64 + 0.5) / m as f64;
                (psi_fourier(x, d) - psi1(x)).abs()
            })
            .sum::<f64>()
            / m as f64;
        assert!(gap <= 2.0 / n as f64, "N = {n}: gap {gap}");
    }
}

/// Mean-zero antiderivative of `g` on [0, 1), tabulated by Simpson.
fn antiderivative(g: impl Fn(f64) -> f64 + Copy, x: f64) -> f64 {
    let raw = |u: f64| simpson(g, 0.0, u, 400);
    let mean = simpson(raw, 0.0, 1.0, 200);
    raw(x) - mean
}

#[test]
fn bernoulli_functions_by_integration() {
    let psi2 = |x: f64| antiderivative(|u| u - 0.5, x);
    for x in [0.0, 0.2, 0.5, 0.9] {
        assert!((psi_k(x, 2) - psi2(x)).abs() < 1e-8, "x = {x}");
    }
    assert!((psi_k(0.0, 2) - 1.0 / 12.0).abs() < 1e-15);
    for x in [0.0, 0.3, 0.75] {
        let v = antiderivative(|u| psi_k(u, 2), x);
        assert!((psi_k(x, 3) - v).abs() < 1e-8, "x = {x}");
    }
    assert!(psi_k(0.0, 3).abs() < 1e-15);
    assert!(simpson(|u| psi_k(u, 2), 0.0, 1.0, 1000).abs() < 1e-12);
    assert!(simpson(|u| psi_k(u, 4), 0.0, 1.0, 1000).abs() < 1e-12);
}

proptest! {
    #[test]
    fn psi_k_derivative_chain(x in -5.0f64..5.0, k in 3u32..7) {
        prop_assume!((x - x.round()).abs() > 1e-3);
        let h = 1e-5;
        let fd = (psi_k(x + h, k) - psi_k(x - h, k)) / (2.0 * h);
        prop_assert!((fd - psi_k(x, k - 1)).abs() < 1e-8);
    }

    #[test]
    fn psi_k_is_periodic(x in 0.0f64..1.0, k in 2u32..8, n in -20i64..20) {
        prop_assert!((psi_k(x, k) - psi_k(x + n as f64, k)).abs() < 1e-10);
    }
}

#[test]
fn fourier_bernoulli_convergence() {
    let deep = FourierDepth::new(10_000).unwrap();
    assert!((psi_k_fourier(0.0, 2, deep) - 1.0 / 12.0).abs() < 1e-4);
    assert!((psi_k_fourier(0.5, 2, deep) + 1.0 / 24.0).abs() < 1e-4);
    for k in [3, 5, 7] {
        assert!(psi_k_fourier(0.0, k, deep).abs() < 1e-15);
    }
    let mut worst = 0.0f64;
    for k in 2..=5u32 {
        for n in [16usize, 64, 256] {
            let d = FourierDepth::new(n).unwrap();
            for i in 0..50 {
                let x = i as f64 / 50.0 + 0.003;
                let err = (psi_k_fourier(x, k, d) - psi_k(x, k)).abs();
                worst = worst.max(err / (n as f64).powi(1 - k as i32));
            }
        }
    }
    println!("fitted Fourier constant c = {worst:.4}");
    assert!(worst < 1.0);
}

#[test]
fn bessel_fixed_points() {
    assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
    assert!(bessel_j(2, 1.0).is_err());
    let j = bessel_j(1, 100.0).unwrap();
    let oracle = simpson(|s| (s - 100.0 * s.sin()).cos(), 0.0, PI, 20_000) / PI;
    assert!((j - oracle).abs() < 1e-8);
    assert!(j.abs() <= 100f64.powf(-0.5));
}

#[test]
fn bessel_against_integral_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut xs: Vec<f64> = (0..300).map(|_| rng.gen_range(0.0..60.0)).collect();
    xs.extend((0..100).map(|_| rng.gen_range(60.0..5000.0)));
    xs.extend([11.999, 12.0, 12.001, 1e5 + 0.37, 999_999.5]);
    for x in xs {
        for n in [0, 1] {
            let v = bessel_j(n, x).unwrap();
            let o = bessel_oracle(n, x);
            assert!((v - o).abs() < 1e-10, "J{n}({x}) = {v}, oracle {o}");
            assert!(v.abs() <= 1.0);
        }
    }
}

#[test]
fn sine_integral_values() {
    assert_eq!(sine_integral(0.0), 0.0);
    assert!((sine_integral(PI) - 1.851_937_052).abs() < 1e-6);
    let oracle = simpson(|u| if u == 0.0 { 1.0 } else { u.sin() / u }, 0.0, PI, 2000);
    assert!((sine_integral(PI) - oracle).abs() < 1e-10);
    for x in [10.0, 49.0, 51.0, 120.0] {
        let o = simpson(|u| if u == 0.0 { 1.0 } else { u.sin() / u }, 0.0, x, 40_000);
        assert!((sine_integral(x) - o).abs() < 1e-9, "Si({x})");
    }
}

proptest! {
    #[test]
    fn sine_integral_odd_and_bounded(x in -1e4f64..1e4) {
        prop_assert_eq!(sine_integral(-x), -sine_integral(x));
        prop_assert!(sine_integral(x).abs() <= sine_integral(PI) + 1e-15);
    }
}

#[test]
fn cosine_over_r_integral_matches_quadrature() {
    for (k, r) in [(0.3, 3.0), (2.0, 5.0), (-7.5, 2.0), (40.0, 10.0)] {
        let o = simpson(|u: f64| (k * u).cos() / u, 1.0, r, 200_000);
        assert!((cos_over_r_integral(k, r) - o).abs() < 1e-9, "k = {k}");
        let o = simpson(|u: f64| (k * u).sin() / u, 1.0, r, 200_000);
        assert!((sin_over_r_integral(k, r) - o).abs() < 1e-9, "k = {k}");
    }
}

#[test]
fn dirichlet_values() {
    assert_eq!(dirichlet_sum(4.0, 3, 0).unwrap(), Complex64::new(7.0, 0.0));
    assert!((dirichlet_sum(0.5, 1, 0).unwrap() - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    let direct: Complex64 = (-5i64..=5).map(|p| e(p as f64 * 0.13) * p as f64).sum();
    assert!((dirichlet_sum(0.13, 5, 1).unwrap() - direct).norm() < 1e-12);
}

#[test]
fn dirichlet_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let x: f64 = rng.gen_range(-3.0..3.0);
        let r: u64 = rng.gen_range(0..=100);
        let q = (2 * r + 1) as f64;
        let bound = q.min(1.0 / dist_to_int(x));
        for j in [0, 1] {
            let v = dirichlet_sum(x, r, j).unwrap().norm() / q.powi(j as i32);
            assert!(v <= bound * (1.0 + 1e-12), "x = {x}, R = {r}, j = {j}");
        }
    }
}

#[test]
fn one_dimensional_quadrature() {
    assert!((integrate_1d(|x| x, 0.0, 1.0, 1e-12).unwrap().value - 0.5).abs() < 1e-14);
    assert!(integrate_1d(|x: f64| x.cos(), 0.0, 2.0 * PI, 1e-12).unwrap().value.abs() < 1e-12);
    let opts = QuadOptions::new(1e-12).breakpoints(vec![1.0, 2.0]);
    let r = integrate_1d_with(psi1, 0.0, 3.0, &opts).unwrap();
    assert!(r.value.abs() < 1e-12);
    assert!(r.error_estimate >= 0.0 && r.evaluations >= 1);
    let again = integrate_1d_with(psi1, 0.0, 3.0, &opts).unwrap();
    assert_eq!(r.value.to_bits(), again.value.to_bits());
}

#[test]
fn disk_quadrature() {
    let area = integrate_disk(|_, _| Complex64::new(1.0, 0.0), 3.0, 0.0, 1e-12).unwrap();
    assert!((area.value.re - 3.0 * PI).abs() < 1e-12);
    let odd = integrate_disk(|x, _| Complex64::new(x, 0.0), 2.0, 0.0, 1e-12).unwrap();
    assert!(odd.value.norm() < 1e-12);
    let wave = integrate_disk(|x, _| e(x), 1.0, 1.0, 1e-10).unwrap();
    assert!((wave.value.re - j1(2.0 * PI)).abs() < 1e-6);
    assert!(wave.value.im.abs() < 1e-10);
}

#[test]
fn disk_plane_waves_match_bessel() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 20 {
        let (a, b): (f64, f64) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let r2 = a * a + b * b;
        if r2 == 0.0 || r2 > 25.0 {
            continue;
        }
        for t in [1.0, 4.0, 10.0] {
            let q = integrate_disk(|x, y| e(a * x + b * y), t, r2.sqrt(), 1e-9).unwrap();
            let exact = (t / r2).sqrt() * j1(2.0 * PI * (t * r2).sqrt());
            assert!((q.value.re - exact).abs() < 1e-6, "a = {a}, b = {b}, t = {t}");
        }
        done += 1;
    }
}

#[test]
fn compensated_summation() {
    let xs = [1e16, 1.0, -1e16, 1.0];
    assert_eq!(compensated_sum(&xs), 2.0);
    let s: KahanSum = (0..1000).map(|_| 0.1).collect();
    assert!((s.value() - 100.0).abs() < 1e-12);
}
