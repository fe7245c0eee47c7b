//! Sawtooth and Bernoulli functions, Fourier truncations, Bessel and sine
//! integrals, and the edge constants.

use gausscircle::euler_maclaurin::{a_l, edge_constant};
use gausscircle::numerics::{
    bessel_j, dirichlet_sum, psi1, psi_fourier, psi_k, psi_k_fourier, sine_integral, FourierDepth,
};

fn main() -> gausscircle::Result<()> {
    let n = FourierDepth::new(64)?;
    for x in [0.1, 0.25, 0.5, 0.9] {
        println!("psi1({x}) = {:+.6}  N = 64: {:+.6}", psi1(x), psi_fourier(x, n));
    }
    let deep = FourierDepth::new(10_000)?;
    println!("psi_2(0) = {:.8}  Fourier: {:.8}", psi_k(0.0, 2), psi_k_fourier(0.0, 2, deep));
    println!("Si(pi) = {:.10}", sine_integral(std::f64::consts::PI));
    for x in [1.0, 10.0, 30.0] {
        println!("J0({x}) = {:+.12}  J1({x}) = {:+.12}", bessel_j(0, x)?, bessel_j(1, x)?);
    }
    println!("|D_10(0.3)| = {:.6}", dirichlet_sum(0.3, 10, 0)?.norm());
    for (m2, m1) in [(1, 1), (2, 1), (1, 3), (-5, 2)] {
        println!("a_L({m2}/{m1}) = {:+.10}", a_l(m2, m1)?);
    }
    println!("edge constant at slope 7: {:+.10}", edge_constant(7.0)?);
    Ok(())
}
