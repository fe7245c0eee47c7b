//! One-dimensional and planar Euler-Maclaurin summation.

mod edge_constant;
mod functions;
mod one_dim;
mod planar;

pub use edge_constant::{a_l, edge_constant, epsilon_ladder, smoothed_edge_integral, EPSILON_LADDER, LADDER_TOL};
pub use functions::{
    ClosureFunction, Constant, DirichletKernel2D, PlaneWave, Polynomial, SmoothFunction2D,
    Translated,
};
pub use one_dim::{em1d, em1d_expansion};
pub use planar::{default_tolerance, t_polygon, Em2dReport};
