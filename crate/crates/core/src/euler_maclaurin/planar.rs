//! The planar Euler-Maclaurin total `T(Delta, f)` over a lattice polygon.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Edge, LatticePolygon, PointClass};
use crate::numerics::{gauss_legendre, integrate_1d_with, psi1, ComplexSum, KahanSum, QuadOptions};

use super::edge_constant::a_l;
use super::functions::SmoothFunction2D;

/// All terms of `T(Delta, f)` plus the lattice sums it is compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct Em2dReport {
    pub t_value: Complex64,
    /// `int f`, `int f_x psi(x)`, `int f_y psi(y)`, `int f_xy psi(x) psi(y)`.
    pub area_terms: [Complex64; 4],
    /// Single-psi edge sums, the continuous part of the normal-derivative
    /// term, and its concentrated part.
    pub edge_terms: [Complex64; 3],
    pub lattice_sum: Complex64,
    pub weighted_sum: Complex64,
    pub boundary_abs_sum: f64,
    pub lattice_count: u64,
    pub error_estimate: f64,
}

impl Em2dReport {
    /// `|weighted_sum - T|`.
    pub fn identity_residual(&self) -> f64 {
        (self.weighted_sum - self.t_value).norm()
    }

    /// `|lattice_sum - T| <= boundary_abs_sum + slack`.
    pub fn inequality_holds(&self, slack: f64) -> bool {
        (self.lattice_sum - self.t_value).norm() <= self.boundary_abs_sum + slack
    }
}

/// Default tolerance: `1e-8`, scaled up linearly past 1000 boundary points.
pub fn default_tolerance(polygon: &LatticePolygon) -> f64 {
    1e-8 * (polygon.boundary_count() as f64 / 1000.0).max(1.0)
}

struct XPanel {
    a: f64,
    b: f64,
    lower: (f64, f64),
    upper: (f64, f64),
    levels: Vec<f64>,
}

fn line_through(e: &Edge) -> (f64, f64) {
    let (x0, y0) = (e.start.x as f64, e.start.y as f64);
    let slope = (e.end.y - e.start.y) as f64 / (e.end.x - e.start.x) as f64;
    (slope, y0 - slope * x0)
}

fn x_panels(polygon: &LatticePolygon) -> Vec<XPanel> {
    let (lo, hi) = polygon.bounding_box();
    let mut cuts: Vec<f64> = (lo.x..=hi.x).map(|x| x as f64).collect();
    for e in polygon.edges() {
        let (dx, dy) = (e.end.x - e.start.x, e.end.y - e.start.y);
        if dx == 0 || dy == 0 {
            continue;
        }
        let (y0, y1) = (e.start.y.min(e.end.y), e.start.y.max(e.end.y));
        for k in y0 + 1..y1 {
            cuts.push(e.start.x as f64 + (k - e.start.y) as f64 * dx as f64 / dy as f64);
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut panels = Vec::with_capacity(cuts.len());
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let xm = 0.5 * (a + b);
        let mut lower = (0.0, f64::INFINITY);
        let mut upper = (0.0, f64::NEG_INFINITY);
        for e in polygon.edges() {
            let (x0, x1) = (e.start.x.min(e.end.x) as f64, e.start.x.max(e.end.x) as f64);
            if e.start.x == e.end.x || xm < x0 || xm > x1 {
                continue;
            }
            let l = line_through(e);
            let y = l.0 * xm + l.1;
            if y < lower.0 * xm + lower.1 || lower.1.is_infinite() {
                lower = l;
            }
            if y > upper.0 * xm + upper.1 || upper.1.is_infinite() {
                upper = l;
            }
        }
        let ylo = lower.0 * xm + lower.1;
        let yhi = upper.0 * xm + upper.1;
        let levels = ((ylo.floor() as i64 + 1)..=(yhi.ceil() as i64 - 1))
            .map(|k| k as f64)
            .filter(|&k| k > ylo && k < yhi)
            .collect();
        panels.push(XPanel {
            a,
            b,
            lower,
            upper,
            levels,
        });
    }
    panels
}

fn split(a: f64, b: f64, freq: f64) -> impl Iterator<Item = (f64, f64)> {
    let n = if freq > 0.0 {
        ((b - a) * 2.0 * freq).ceil().max(1.0) as usize
    } else {
        1
    };
    let h = (b - a) / n as f64;
    (0..n).map(move |i| (a + h * i as f64, if i + 1 == n { b } else { a + h * (i + 1) as f64 }))
}

fn area_terms_at_order<F: SmoothFunction2D + ?Sized>(
    panels: &[XPanel],
    f: &F,
    order: usize,
) -> [Complex64; 4] {
    let rule = gauss_legendre(order);
    let freq = f.frequency_hint();
    let mut acc = [ComplexSum::new(); 4];
    for p in panels {
        for (sa, sb) in split(p.a, p.b, freq) {
            for (x, wx) in rule.mapped(sa, sb) {
                let ylo = p.lower.0 * x + p.lower.1;
                let yhi = p.upper.0 * x + p.upper.1;
                let px = psi1(x);
                let mut cuts = Vec::with_capacity(p.levels.len() + 2);
                cuts.push(ylo);
                cuts.extend_from_slice(&p.levels);
                cuts.push(yhi);
                for w in cuts.windows(2) {
                    for (ya, yb) in split(w[0], w[1], freq) {
                        for (y, wy) in rule.mapped(ya, yb) {
                            let [v, fx, fy, fxy] = f.eval_all(x, y);
                            let py = psi1(y);
                            let wt = wx * wy;
                            acc[0].add(v * wt);
                            acc[1].add(fx * (px * wt));
                            acc[2].add(fy * (py * wt));
                            acc[3].add(fxy * (px * py * wt));
                        }
                    }
                }
            }
        }
    }
    acc.map(|a| a.value())
}

fn area_terms<F: SmoothFunction2D + ?Sized>(
    polygon: &LatticePolygon,
    f: &F,
    tol: f64,
) -> Result<([Complex64; 4], f64)> {
    let panels = x_panels(polygon);
    let mut last = None;
    for (lo, hi) in [(6, 10), (10, 16), (16, 24), (24, 36)] {
        let a = area_terms_at_order(&panels, f, lo);
        let b = area_terms_at_order(&panels, f, hi);
        let err: f64 = a.iter().zip(&b).map(|(u, v)| (u - v).norm()).sum();
        let scale: f64 = b.iter().map(|v| v.norm()).sum();
        last = Some((b, err));
        if err <= tol.max(1e-14 * scale) {
            return Ok((b, err));
        }
    }
    let (b, err) = last.expect("at least one order pair");
    Err(Error::NotConverged {
        value: b.iter().sum(),
        error_estimate: err,
        evaluations: 0,
    })
}

/// Edge with its direction flipped so that the chosen coordinate increases.
fn oriented(e: &Edge, along_x: bool) -> (i64, i64, i64, i64, i64, i64) {
    let (mut a, mut b) = (e.start, e.end);
    let (mut m1, mut m2) = e.primitive;
    let flip = if along_x { m1 < 0 } else { m2 < 0 };
    if flip {
        std::mem::swap(&mut a, &mut b);
        m1 = -m1;
        m2 = -m2;
    }
    (a.x, a.y, b.x, b.y, m1, m2)
}

struct EdgeConstants(HashMap<(i64, i64), f64>);

impl EdgeConstants {
    fn get(&mut self, num: i64, den: i64) -> Result<f64> {
        if let Some(&v) = self.0.get(&(num, den)) {
            return Ok(v);
        }
        let v = a_l(num, den)?;
        self.0.insert((num, den), v);
        Ok(v)
    }
}

/// Concentrated sum where `x` crosses integers, over `|m1|`.
fn delta_sum_x<F: SmoothFunction2D + ?Sized>(e: &Edge, f: &F, consts: &mut EdgeConstants) -> Result<Complex64> {
    let (ax, ay, bx, by, m1, m2) = oriented(e, true);
    let mut acc = ComplexSum::new();
    for k in ax + 1..bx {
        let num = (k - ax) as i128 * m2 as i128;
        let rem = num.rem_euclid(m1 as i128);
        if rem == 0 {
            continue;
        }
        let psi = rem as f64 / m1 as f64 - 0.5;
        let y = ay as f64 + num as f64 / m1 as f64;
        acc.add(f.value(k as f64, y) * psi);
    }
    let a = consts.get(m2, m1)?;
    if a != 0.0 {
        acc.add((f.value(bx as f64, by as f64) - f.value(ax as f64, ay as f64)) * a);
    }
    Ok(acc.value() / m1 as f64)
}

/// Concentrated sum where `y` crosses integers, over `|m2|`.
fn delta_sum_y<F: SmoothFunction2D + ?Sized>(e: &Edge, f: &F, consts: &mut EdgeConstants) -> Result<Complex64> {
    let (ax, ay, bx, by, m1, m2) = oriented(e, false);
    let mut acc = ComplexSum::new();
    for k in ay + 1..by {
        let num = (k - ay) as i128 * m1 as i128;
        let rem = num.rem_euclid(m2 as i128);
        if rem == 0 {
            continue;
        }
        let psi = rem as f64 / m2 as f64 - 0.5;
        let x = ax as f64 + num as f64 / m2 as f64;
        acc.add(f.value(x, k as f64) * psi);
    }
    let a = consts.get(m1, m2)?;
    if a != 0.0 {
        acc.add((f.value(bx as f64, by as f64) - f.value(ax as f64, ay as f64)) * a);
    }
    Ok(acc.value() / m2 as f64)
}

/// Computes `T(Delta, f)` and the lattice sums it approximates.
///
/// The normal-derivative edge term is expanded with `psi' = 1 - delta`:
/// the smooth part is integrated, the concentrated part becomes a sum over
/// the points where the edge meets integer grid lines, with the edge
/// constants `a_L` at the endpoints.
pub fn t_polygon<F: SmoothFunction2D + ?Sized>(
    polygon: &LatticePolygon,
    f: &F,
    tol: f64,
) -> Result<Em2dReport> {
    if !(tol > 0.0) {
        return crate::error::domain("tolerance must be positive");
    }
    let (area, area_err) = area_terms(polygon, f, tol / 2.0)?;
    let edges = polygon.edges();
    let edge_tol = tol / (6.0 * edges.len() as f64);
    let mut consts = EdgeConstants(HashMap::new());
    let mut single = ComplexSum::new();
    let mut continuous = ComplexSum::new();
    let mut concentrated = ComplexSum::new();
    let mut edge_err = 0.0;
    for e in edges {
        let (m1, m2) = e.primitive;
        let (n1, n2) = (e.outward_normal.0 as f64, e.outward_normal.1 as f64);
        let freq = f.frequency_hint() * (m1.unsigned_abs() + m2.unsigned_abs()) as f64;
        let opts = QuadOptions::new(edge_tol)
            .breakpoints(e.integer_crossings())
            .frequency(freq);
        let lambda = e.lambda as f64;
        let at = |u: f64| e.point_at(u);
        let c1 = integrate_1d_with(|u| {
            let (x, y) = at(u);
            f.value(x, y) * psi1(x)
        }, 0.0, lambda, &opts)?;
        let c2 = integrate_1d_with(|u| {
            let (x, y) = at(u);
            f.value(x, y) * psi1(y)
        }, 0.0, lambda, &opts)?;
        let c3 = integrate_1d_with(|u| {
            let (x, y) = at(u);
            (f.dx(x, y) * n2 + f.dy(x, y) * n1) * (psi1(x) * psi1(y))
        }, 0.0, lambda, &opts)?;
        edge_err += c1.error_estimate + c2.error_estimate + c3.error_estimate;
        let sx = if m1 != 0 { delta_sum_x(e, f, &mut consts)? } else { Complex64::default() };
        let sy = if m2 != 0 { delta_sum_y(e, f, &mut consts)? } else { Complex64::default() };
        single.add(-(c1.value * n1 + c2.value * n2));
        continuous.add(c3.value * -0.5);
        concentrated.add(((c2.value - sx) * n2 + (c1.value - sy) * n1) * 0.5);
    }
    let edge_terms = [single.value(), continuous.value(), concentrated.value()];

    let mut lattice = ComplexSum::new();
    let mut weighted = ComplexSum::new();
    let mut boundary = KahanSum::new();
    let mut count = 0u64;
    polygon.for_each_lattice_point(|p, class| {
        let v = f.value(p.x as f64, p.y as f64);
        count += 1;
        lattice.add(v);
        let w = match class {
            PointClass::Interior => 1.0,
            PointClass::EdgeInterior => 0.5,
            PointClass::Vertex => polygon.weight(p),
        };
        weighted.add(v * w);
        if class != PointClass::Interior {
            boundary.add(v.norm());
        }
    });

    let mut total = ComplexSum::new();
    for z in area.iter().chain(&edge_terms) {
        total.add(*z);
    }
    let t_value = total.value();
    if !(t_value.re.is_finite() && t_value.im.is_finite()) {
        return crate::error::domain("f is not finite on the polygon");
    }
    Ok(Em2dReport {
        t_value,
        area_terms: area,
        edge_terms,
        lattice_sum: lattice.value(),
        weighted_sum: weighted.value(),
        boundary_abs_sum: boundary.value(),
        lattice_count: count,
        error_estimate: area_err + edge_err,
    })
}
