//! Sums the Dirichlet kernel over refined polygons and recovers P(t).

use gausscircle::counting::{kernel2d, verify_identity_2};
use gausscircle::geometry::build_refined_polygon;

fn main() -> gausscircle::Result<()> {
    let poly = build_refined_polygon(10, 3)?;
    println!("hull of the refined disk t = 10, Q = 3: {} vertices, area {}", poly.vertices().len(), poly.area());
    println!("kernel at (3, -6): {}, at (1, 0): {:.2e}", kernel2d(3, -6, 3)?, kernel2d(1, 0, 3)?);
    for q in [1, 3, 5, 7] {
        for t in [10, 37, 50] {
            let c = verify_identity_2(t, q)?;
            println!("t = {t:>2}, Q = {q}: sum = {:.12}  P = {}  residual = {:.1e}", c.sum, c.count, c.residual);
        }
    }
    Ok(())
}
