#![allow(dead_code)]

use gausscircle::geometry::{convex_hull, LatticePoint, LatticePolygon};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Hull of random points in a box, retried until two-dimensional.
pub fn random_polygon(rng: &mut ChaCha8Rng, half_width: i64, points: usize, max_boundary: u64) -> LatticePolygon {
    loop {
        let pts: Vec<LatticePoint> = (0..points)
            .map(|_| LatticePoint::new(rng.gen_range(-half_width..=half_width), rng.gen_range(-half_width..=half_width)))
            .collect();
        if let Ok(p) = LatticePolygon::new(convex_hull(&pts)) {
            if p.boundary_count() <= max_boundary {
                return p;
            }
        }
    }
}

/// Brute-force lattice points `(interior, boundary)` of a polygon by half-plane tests.
pub fn brute_classify(poly: &LatticePolygon) -> (u64, u64) {
    let (lo, hi) = poly.bounding_box();
    let v = poly.vertices();
    let (mut inside, mut boundary) = (0, 0);
    for x in lo.x..=hi.x {
        for y in lo.y..=hi.y {
            let mut min_cross = i128::MAX;
            for i in 0..v.len() {
                let a = v[i];
                let b = v[(i + 1) % v.len()];
                let c = (b.x - a.x) as i128 * (y - a.y) as i128 - (b.y - a.y) as i128 * (x - a.x) as i128;
                min_cross = min_cross.min(c);
            }
            if min_cross > 0 {
                inside += 1;
            } else if min_cross == 0 {
                boundary += 1;
            }
        }
    }
    (inside, boundary)
}
