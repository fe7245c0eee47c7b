//! Lattice points, convex lattice polygons and edge integrals.

mod lattice;
mod polygon;

use num_complex::Complex64;

use crate::numerics::{integrate_1d_with, QuadOptions, QuadratureResult};
use crate::Result;

pub use lattice::{cross, gcd, isqrt, LatticePoint};
pub use polygon::{
    build_refined_polygon, convex_hull, edge_data, lattice_points_in, vertex_weight, Edge,
    LatticePartition, LatticePolygon, PointClass, RowRange, MAX_REFINED_NORM,
};

/// Integral of `g` along an edge against the measure giving each primitive step length one.
///
/// The edge is split where either coordinate crosses an integer.
pub fn edge_integral<G: FnMut(f64, f64) -> Complex64>(
    edge: &Edge,
    mut g: G,
    tol: f64,
) -> Result<QuadratureResult> {
    let opts = QuadOptions::new(tol).breakpoints(edge.integer_crossings());
    integrate_1d_with(
        |u| {
            let (x, y) = edge.point_at(u);
            g(x, y)
        },
        0.0,
        edge.lambda as f64,
        &opts,
    )
}
