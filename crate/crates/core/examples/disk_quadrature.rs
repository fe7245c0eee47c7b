//! The disk formula by quadrature, against the Bessel sum and the polygon functional.

use gausscircle::asymptotics::{bessel_sum, compare_t_vs_f, f_quadrature, BesselForm, PsiMode, TruncationParams};

fn main() -> gausscircle::Result<()> {
    let params = TruncationParams::standard(3)?;
    let exact = f_quadrature(10, &params, PsiMode::Exact, 1e-8)?;
    let fourier = f_quadrature(10, &params, PsiMode::Fourier, 1e-8)?;
    let bessel = bessel_sum(10.0, &params, BesselForm::Expanded)?;
    println!("t = 10, Q = 3");
    println!("  quadrature, exact sawtooth   {:.12}", exact.value.re);
    println!("  quadrature, Fourier sawtooth {:.12}", fourier.value.re);
    println!("  Bessel sum, expanded         {:.12}", bessel);
    for (t, q) in [(25, 3), (25, 5), (100, 5)] {
        let c = compare_t_vs_f(t, &TruncationParams::standard(q)?, 1e-8)?;
        println!("t = {t:>3}, Q = {q}: T = {:.6}  F = {:.6}  ratio = {:.4}", c.t_value, c.f_value, c.ratio);
    }
    Ok(())
}
