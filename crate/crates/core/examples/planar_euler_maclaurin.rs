//! Euler-Maclaurin on a lattice pentagon: the exact weighted identity and the
//! boundary inequality, for a polynomial and a plane wave.

use gausscircle::euler_maclaurin::{em1d, t_polygon, PlaneWave, Polynomial, SmoothFunction2D};
use gausscircle::geometry::{LatticePoint, LatticePolygon};

fn report(name: &str, poly: &LatticePolygon, f: &dyn SmoothFunction2D) -> gausscircle::Result<()> {
    let r = t_polygon(poly, f, 1e-10)?;
    println!("{name}");
    println!("  T               = {:.12}", r.t_value);
    println!("  weighted sum    = {:.12}", r.weighted_sum);
    println!("  plain sum       = {:.12}", r.lattice_sum);
    println!("  |sum - T|       = {:.3e}  <=  boundary mass {:.3e}", (r.lattice_sum - r.t_value).norm(), r.boundary_abs_sum);
    println!("  area terms      = {:.6?}", r.area_terms);
    println!("  edge terms      = {:.6?}", r.edge_terms);
    Ok(())
}

fn main() -> gausscircle::Result<()> {
    let pts = [(0, 0), (4, 1), (5, 4), (2, 6), (-1, 3)];
    let poly = LatticePolygon::new(pts.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect())?;
    println!(
        "pentagon: area {}, {} boundary points, {} lattice points",
        poly.area(),
        poly.boundary_count(),
        gausscircle::geometry::lattice_points_in(&poly).total()
    );
    report("x^2 y - x", &poly, &Polynomial::new(vec![(2, 1, 1.0), (1, 0, -1.0)]))?;
    report("e((x + 2y) / 5)", &poly, &PlaneWave::new(1, 2, 5))?;

    let s = em1d(|x| x.powi(-2), |x| -2.0 * x.powi(-3), 0.5, 100.0, 1e-12)?;
    println!("sum_(p <= 100) 1/p^2 by Euler-Maclaurin: {s:.15}");
    Ok(())
}
