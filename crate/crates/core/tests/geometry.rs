mod common;

use common::{brute_classify, random_polygon};
use gausscircle::geometry::*;
use gausscircle::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
    v.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
}

fn polygon(v: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::new(pts(v)).unwrap()
}

#[test]
fn isqrt_examples() {
    assert_eq!(isqrt(0), 0);
    assert_eq!(isqrt(15), 3);
    assert_eq!(isqrt(16), 4);
    assert_eq!(isqrt(1 << 62), 1 << 31);
    assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
}

proptest! {
    #[test]
    fn isqrt_is_floor(n in 0u64..(1 << 63)) {
        let s = isqrt(n) as u128;
        prop_assert!(s * s <= n as u128 && (s + 1) * (s + 1) > n as u128);
    }
}

#[test]
fn refined_polygon_examples() {
    let mut v = build_refined_polygon(1, 1).unwrap().vertices().to_vec();
    v.sort_by_key(|p| (p.x, p.y));
    assert_eq!(v, pts(&[(-1, 0), (0, -1), (0, 1), (1, 0)]));
    let mut v = build_refined_polygon(2, 1).unwrap().vertices().to_vec();
    v.sort_by_key(|p| (p.x, p.y));
    assert_eq!(v, pts(&[(-1, -1), (-1, 1), (1, -1), (1, 1)]));
    assert!(build_refined_polygon(0, 3).is_err());
    assert!(build_refined_polygon(5, 4).is_err());
}

#[test]
fn refined_boundary_lies_in_annulus() {
    let (t, q) = (25u64, 3u64);
    let poly = build_refined_polygon(t, q).unwrap();
    let part = lattice_points_in(&poly);
    let rt = (t as f64).sqrt();
    for p in part.vertices.iter().chain(&part.edge_interior) {
        let r = f64::hypot(p.x as f64, p.y as f64) / q as f64;
        assert!(r <= rt + 1e-12 && r >= rt - 1.0 / q as f64, "{p:?} at {r}");
    }
}

#[test]
fn refined_polygon_symmetry_and_idempotence() {
    for (t, q) in [(7, 1), (10, 3), (37, 5), (50, 9), (1000, 3)] {
        let poly = build_refined_polygon(t, q).unwrap();
        let mut v = poly.vertices().to_vec();
        v.sort_by_key(|p| (p.x, p.y));
        for map in [
            |p: LatticePoint| LatticePoint::new(-p.x, p.y),
            |p: LatticePoint| LatticePoint::new(p.x, -p.y),
            |p: LatticePoint| LatticePoint::new(p.y, p.x),
        ] {
            let mut w: Vec<LatticePoint> = v.iter().map(|&p| map(p)).collect();
            w.sort_by_key(|p| (p.x, p.y));
            assert_eq!(v, w, "t = {t}, Q = {q}");
        }
        let again = LatticePolygon::from_points(poly.vertices()).unwrap();
        assert_eq!(again, poly);
    }
}

#[test]
fn edge_data_examples() {
    let sq = polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
    let normals: Vec<(i64, i64)> = edge_data(&sq).iter().map(|e| e.outward_normal).collect();
    assert_eq!(normals, vec![(0, -1), (1, 0), (0, 1), (-1, 0)]);
    let tri = polygon(&[(0, 0), (2, 4), (-3, 1)]);
    let e = tri.edges()[0];
    assert_eq!((e.lambda, e.primitive), (2, (1, 2)));
}

fn check_edges(poly: &LatticePolygon) {
    let v = poly.vertices();
    let (cx, cy) = (
        v.iter().map(|p| p.x as f64).sum::<f64>() / v.len() as f64,
        v.iter().map(|p| p.y as f64).sum::<f64>() / v.len() as f64,
    );
    let edges = poly.edges();
    for (i, e) in edges.iter().enumerate() {
        assert_eq!(e.end, edges[(i + 1) % edges.len()].start);
        assert_eq!(e.end.x - e.start.x, e.lambda as i64 * e.primitive.0);
        assert_eq!(e.end.y - e.start.y, e.lambda as i64 * e.primitive.1);
        assert_eq!(gcd(e.primitive.0.unsigned_abs(), e.primitive.1.unsigned_abs()), 1);
        let (nx, ny) = e.outward_normal;
        assert_eq!(nx * e.primitive.0 + ny * e.primitive.1, 0);
        let (mx, my) = ((e.start.x + e.end.x) as f64 / 2.0, (e.start.y + e.end.y) as f64 / 2.0);
        assert!(nx as f64 * (cx - mx) + ny as f64 * (cy - my) < 0.0);
    }
    let lambda_sum: u64 = edges.iter().map(|e| e.lambda).sum();
    assert_eq!(lambda_sum, poly.boundary_count());
    assert_eq!(lambda_sum as usize, lattice_points_in(poly).boundary_count());
}

#[test]
fn classification_examples() {
    let sq = polygon(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
    let p = lattice_points_in(&sq);
    assert_eq!((p.interior.len(), p.edge_interior.len(), p.vertices.len()), (0, 0, 4));
    let sq2 = polygon(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
    let p = lattice_points_in(&sq2);
    assert_eq!(p.interior, pts(&[(1, 1)]));
    assert_eq!((p.edge_interior.len(), p.vertices.len()), (4, 4));
    let tri = polygon(&[(0, 0), (3, 0), (0, 3)]);
    let p = lattice_points_in(&tri);
    assert_eq!((p.interior.len(), p.boundary_count()), (1, 9));
    assert_eq!(tri.area(), 4.5);
}

#[test]
fn weights() {
    let sq = polygon(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
    assert_eq!(vertex_weight(&sq, LatticePoint::new(2, 2)).unwrap(), 0.25);
    assert_eq!(sq.weight(LatticePoint::new(1, 1)), 1.0);
    assert_eq!(sq.weight(LatticePoint::new(1, 0)), 0.5);
    assert_eq!(sq.weight(LatticePoint::new(3, 0)), 0.0);
    assert!(vertex_weight(&sq, LatticePoint::new(1, 0)).is_err());
    let tri = polygon(&[(0, 0), (4, 0), (0, 3)]);
    let total: f64 = tri.vertices().iter().map(|&v| vertex_weight(&tri, v).unwrap()).sum();
    assert!((total - 0.5).abs() < 1e-15);
}

#[test]
fn degenerate_polygons_rejected() {
    assert!(LatticePolygon::new(pts(&[(0, 0), (1, 1), (2, 2)])).is_err());
    assert!(LatticePolygon::from_points(&pts(&[(0, 0), (3, 3), (1, 1)])).is_err());
    assert!(LatticePolygon::new(pts(&[(0, 0), (0, 1), (1, 0)])).is_err());
}

#[test]
fn edge_integral_examples() {
    let sq = polygon(&[(0, 0), (3, 0), (3, 5), (0, 5)]);
    let one = |_: f64, _: f64| Complex64::new(1.0, 0.0);
    assert!((edge_integral(&sq.edges()[0], one, 1e-12).unwrap().value.re - 3.0).abs() < 1e-12);
    assert!((edge_integral(&sq.edges()[1], one, 1e-12).unwrap().value.re - 5.0).abs() < 1e-12);
    let tri = polygon(&[(0, 0), (2, 2), (-1, 2)]);
    let v = edge_integral(&tri.edges()[0], |x, _| Complex64::new(x, 0.0), 1e-12).unwrap();
    assert!((v.value.re - 2.0).abs() < 1e-12);
}

#[test]
fn random_polygons_pick_and_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let poly = random_polygon(&mut rng, 6, 7, u64::MAX);
        check_edges(&poly);
        let part = lattice_points_in(&poly);
        let (i, b) = (part.interior.len() as i128, part.boundary_count() as i128);
        assert_eq!(poly.twice_area(), 2 * i + b - 2);
        assert_eq!(brute_classify(&poly), (i as u64, b as u64));
        let hull = convex_hull(poly.vertices());
        assert_eq!(LatticePolygon::new(hull).unwrap(), poly);
    }
}

proptest! {
    #[test]
    fn translation_preserves_counts(seed in 0u64..1000, dx in -50i64..50, dy in -50i64..50) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = random_polygon(&mut rng, 5, 6, u64::MAX);
        let moved = poly.translate(dx, dy);
        let (a, b) = (lattice_points_in(&poly), lattice_points_in(&moved));
        prop_assert_eq!(a.interior.len(), b.interior.len());
        prop_assert_eq!(a.boundary_count(), b.boundary_count());
        prop_assert_eq!(poly.twice_area(), moved.twice_area());
    }
}
