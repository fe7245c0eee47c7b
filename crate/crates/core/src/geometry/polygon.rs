use crate::error::{domain, Error, Result};

use super::lattice::{ceil_div, cross, floor_div, gcd, isqrt, LatticePoint};

/// A polygon edge with its lattice data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub start: LatticePoint,
    pub end: LatticePoint,
    /// Number of primitive steps from `start` to `end`.
    pub lambda: u64,
    pub primitive: (i64, i64),
    pub outward_normal: (i64, i64),
}

impl Edge {
    fn between(start: LatticePoint, end: LatticePoint) -> Self {
        let dx = end.x - start.x;
        let dy = end.y - start.y;
        let lambda = gcd(dx.unsigned_abs(), dy.unsigned_abs());
        let m = (dx / lambda as i64, dy / lambda as i64);
        Self {
            start,
            end,
            lambda,
            primitive: m,
            outward_normal: (m.1, -m.0),
        }
    }

    /// Point at parameter `u` in `[0, lambda]`.
    pub fn point_at(&self, u: f64) -> (f64, f64) {
        (
            self.start.x as f64 + u * self.primitive.0 as f64,
            self.start.y as f64 + u * self.primitive.1 as f64,
        )
    }

    /// Parameters in `(0, lambda)` where either coordinate is an integer.
    pub fn integer_crossings(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for m in [self.primitive.0, self.primitive.1] {
            let m = m.unsigned_abs();
            for k in 1..m * self.lambda {
                out.push(k as f64 / m as f64);
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

/// Classification of a lattice point relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    EdgeInterior,
    Vertex,
}

/// Integer `x` range of the lattice points on one row of a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowRange {
    pub y: i64,
    pub x_lo: i64,
    pub x_hi: i64,
    /// `x_lo` lies exactly on the left boundary.
    pub lo_on_boundary: bool,
    /// `x_hi` lies exactly on the right boundary.
    pub hi_on_boundary: bool,
    /// The whole row is a horizontal edge.
    pub horizontal_edge: bool,
}

/// A strictly convex lattice polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
    edges: Vec<Edge>,
}

impl LatticePolygon {
    /// Validates a counter-clockwise, strictly convex vertex list.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let k = vertices.len();
        if k < 3 {
            return domain("a polygon needs at least three vertices");
        }
        for i in 0..k {
            let c = cross(vertices[i], vertices[(i + 1) % k], vertices[(i + 2) % k]);
            if c <= 0 {
                return domain("vertices must be strictly convex and counter-clockwise");
            }
        }
        let twice: i128 = (0..k)
            .map(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % k]);
                a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
            })
            .sum();
        if twice <= 0 || !winds_once(&vertices) {
            return domain("vertices do not form a simple convex polygon");
        }
        let edges = (0..k)
            .map(|i| Edge::between(vertices[i], vertices[(i + 1) % k]))
            .collect();
        Ok(Self { vertices, edges })
    }

    /// Convex hull of a point set.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        Self::new(convex_hull(points))
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Twice the area, exact.
    pub fn twice_area(&self) -> i128 {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
                a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
            })
            .sum()
    }

    pub fn area(&self) -> f64 {
        self.twice_area() as f64 / 2.0
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_count(&self) -> u64 {
        self.edges.iter().map(|e| e.lambda).sum()
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| LatticePoint::new(v.x + dx, v.y + dy))
            .collect();
        Self::new(vertices).expect("translation preserves validity")
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        (
            LatticePoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticePoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Classifies `p`, or `None` if it lies outside.
    pub fn classify(&self, p: LatticePoint) -> Option<PointClass> {
        let mut on_edge = false;
        for e in &self.edges {
            let c = cross(e.start, e.end, p);
            if c < 0 {
                return None;
            }
            if c == 0 {
                on_edge = true;
            }
        }
        if !on_edge {
            Some(PointClass::Interior)
        } else if self.vertices.contains(&p) {
            Some(PointClass::Vertex)
        } else {
            Some(PointClass::EdgeInterior)
        }
    }

    /// Lattice row ranges from the lowest to the highest row.
    pub fn row_ranges(&self) -> Vec<RowRange> {
        let (lo, hi) = self.bounding_box();
        let height = (hi.y - lo.y) as usize + 1;
        let mut rows: Vec<RowRange> = (0..height)
            .map(|i| RowRange {
                y: lo.y + i as i64,
                x_lo: i64::MIN,
                x_hi: i64::MAX,
                lo_on_boundary: false,
                hi_on_boundary: false,
                horizontal_edge: false,
            })
            .collect();
        for e in &self.edges {
            let (a, b) = (e.start, e.end);
            if a.y == b.y {
                rows[(a.y - lo.y) as usize].horizontal_edge = true;
                continue;
            }
            let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
            let dy = (b.y - a.y) as i128;
            let dx = (b.x - a.x) as i128;
            for y in y0..=y1 {
                // x = a.x + (y - a.y) dx / dy
                let (num, den) = if dy > 0 {
                    ((y - a.y) as i128 * dx, dy)
                } else {
                    (-(y - a.y) as i128 * dx, -dy)
                };
                let exact = num % den == 0;
                let row = &mut rows[(y - lo.y) as usize];
                if b.y > a.y {
                    let xr = (a.x as i128 + floor_div(num, den)) as i64;
                    if xr < row.x_hi || (xr == row.x_hi && exact) {
                        row.hi_on_boundary = exact;
                    }
                    row.x_hi = row.x_hi.min(xr);
                } else {
                    let xl = (a.x as i128 + ceil_div(num, den)) as i64;
                    if xl > row.x_lo || (xl == row.x_lo && exact) {
                        row.lo_on_boundary = exact;
                    }
                    row.x_lo = row.x_lo.max(xl);
                }
            }
        }
        for row in &mut rows {
            // Rows through a lone extreme vertex see only one chain at that vertex.
            if row.x_lo == i64::MIN {
                row.x_lo = row.x_hi;
                row.lo_on_boundary = row.hi_on_boundary;
            }
            if row.x_hi == i64::MAX {
                row.x_hi = row.x_lo;
                row.hi_on_boundary = row.lo_on_boundary;
            }
        }
        rows
    }

    /// Calls `visit` for every lattice point in the closed polygon, row by row.
    pub fn for_each_lattice_point(&self, mut visit: impl FnMut(LatticePoint, PointClass)) {
        let mut verts = self.vertices.clone();
        verts.sort();
        for row in self.row_ranges() {
            for x in row.x_lo..=row.x_hi {
                let p = LatticePoint::new(x, row.y);
                let boundary = row.horizontal_edge
                    || (x == row.x_lo && row.lo_on_boundary)
                    || (x == row.x_hi && row.hi_on_boundary);
                let class = if !boundary {
                    PointClass::Interior
                } else if verts.binary_search(&p).is_ok() {
                    PointClass::Vertex
                } else {
                    PointClass::EdgeInterior
                };
                visit(p, class);
            }
        }
    }

    /// Full weight `w`: 1 inside, 1/2 on edges, interior angle over `2 pi` at vertices.
    pub fn weight(&self, p: LatticePoint) -> f64 {
        match self.classify(p) {
            None => 0.0,
            Some(PointClass::Interior) => 1.0,
            Some(PointClass::EdgeInterior) => 0.5,
            Some(PointClass::Vertex) => self.angle_fraction(p),
        }
    }

    fn angle_fraction(&self, v: LatticePoint) -> f64 {
        let k = self.vertices.len();
        let i = self.vertices.iter().position(|&w| w == v).expect("vertex");
        let prev = self.vertices[(i + k - 1) % k];
        let next = self.vertices[(i + 1) % k];
        let (ax, ay) = ((prev.x - v.x) as f64, (prev.y - v.y) as f64);
        let (bx, by) = ((next.x - v.x) as f64, (next.y - v.y) as f64);
        let c = cross(v, next, prev) as f64;
        c.atan2(ax * bx + ay * by) / (2.0 * std::f64::consts::PI)
    }
}

fn winds_once(vertices: &[LatticePoint]) -> bool {
    // Exactly one local minimum in (y, -x) order along the cycle.
    let k = vertices.len();
    let key = |p: LatticePoint| (p.y, -p.x);
    (0..k)
        .filter(|&i| {
            let (a, b, c) = (vertices[(i + k - 1) % k], vertices[i], vertices[(i + 1) % k]);
            key(b) < key(a) && key(b) < key(c)
        })
        .count()
        == 1
}

/// Convex hull by Andrew's monotone chain; counter-clockwise, collinear points dropped.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<LatticePoint> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Edge data of a polygon.
pub fn edge_data(polygon: &LatticePolygon) -> Vec<Edge> {
    polygon.edges.clone()
}

/// Lattice points of a polygon split by class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticePartition {
    pub interior: Vec<LatticePoint>,
    pub edge_interior: Vec<LatticePoint>,
    pub vertices: Vec<LatticePoint>,
}

impl LatticePartition {
    pub fn boundary_count(&self) -> usize {
        self.edge_interior.len() + self.vertices.len()
    }

    pub fn total(&self) -> usize {
        self.interior.len() + self.boundary_count()
    }
}

pub fn lattice_points_in(polygon: &LatticePolygon) -> LatticePartition {
    let mut out = LatticePartition::default();
    polygon.for_each_lattice_point(|p, class| match class {
        PointClass::Interior => out.interior.push(p),
        PointClass::EdgeInterior => out.edge_interior.push(p),
        PointClass::Vertex => out.vertices.push(p),
    });
    out
}

/// Interior angle at vertex `v` over `2 pi`.
pub fn vertex_weight(polygon: &LatticePolygon, v: LatticePoint) -> Result<f64> {
    if !polygon.vertices.contains(&v) {
        return domain(format!("({}, {}) is not a vertex", v.x, v.y));
    }
    Ok(polygon.angle_fraction(v))
}

/// Largest `Q^2 t` accepted by [`build_refined_polygon`].
pub const MAX_REFINED_NORM: u64 = 1 << 60;

/// Convex hull of the integer points with `m^2 + n^2 <= Q^2 t`.
pub fn build_refined_polygon(t: u64, q: u64) -> Result<LatticePolygon> {
    if q == 0 || q % 2 == 0 {
        return domain("Q must be an odd positive integer");
    }
    if t == 0 {
        return domain("t = 0 gives a degenerate hull");
    }
    let n = q
        .checked_mul(q)
        .and_then(|q2| q2.checked_mul(t))
        .filter(|&n| n <= MAX_REFINED_NORM)
        .ok_or_else(|| Error::Overflow(format!("Q^2 t for t = {t}, Q = {q}")))?;
    let s = isqrt(n) as i64;
    let mut extremes = Vec::with_capacity(4 * s as usize + 2);
    for row in -s..=s {
        let w = isqrt(n - (row * row) as u64) as i64;
        extremes.push(LatticePoint::new(-w, row));
        extremes.push(LatticePoint::new(w, row));
    }
    LatticePolygon::from_points(&extremes)
}
