//! Lattice points in circles.
//!
//! Planar Euler-Maclaurin summation over lattice polygons, the Dirichlet
//! kernel identity for the circle count, its Bessel-sum approximation, and
//! the near/far decomposition of the error term.

pub mod asymptotics;
pub mod counting;
pub mod error;
pub mod euler_maclaurin;
pub mod geometry;
pub mod harness;
pub mod near_far;
pub mod numerics;

pub use error::{Error, Result};
pub use num_complex::Complex64;
