//! Special functions, sums and quadrature.

mod bessel;
mod dirichlet;
mod psi;
pub mod quadrature;
mod special;
mod sum;

pub use bessel::{bessel_j, j0, j1};
pub use dirichlet::{dirichlet_sum, dist_to_int, e, kernel_with_derivative};
pub use psi::{
    bernoulli_numbers, psi1, psi_floor, psi_fourier, psi_k, psi_k_fourier, FourierDepth,
    INTEGER_TOL,
};
pub use quadrature::{
    gauss_legendre, integrate_1d, integrate_1d_with, integrate_disk, GaussLegendre, QuadOptions,
    QuadratureResult,
};
pub use special::{cin, cos_over_r_integral, sin_over_r_integral, sine_integral};
pub use sum::{compensated_sum, ComplexSum, KahanSum};
