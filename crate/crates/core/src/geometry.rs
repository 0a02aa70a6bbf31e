//! Planar convex geometry: hulls, half-plane intersections, Hausdorff
//! distances, and exact rational hulls and line arrangements.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Point = [f64; 2];

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Convex hull, counter-clockwise, without collinear points (monotone chain).
/// A point set of one distinct point, or a segment, yields 1 or 2 vertices.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.iter().copied().filter(|p| p[0].is_finite() && p[1].is_finite()).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() == 2 && hull[0] == hull[1] {
        hull.pop();
    }
    hull
}

/// True when every turn has the same orientation (zero turns allowed up to `tol`
/// relative to the polygon diameter).
pub fn is_convex(poly: &[Point], tol: f64) -> bool {
    let n = poly.len();
    if n < 3 {
        return true;
    }
    let scale = diameter(poly).powi(2).max(f64::MIN_POSITIVE);
    let (mut pos, mut neg) = (false, false);
    for i in 0..n {
        let c = cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) / scale;
        if c > tol {
            pos = true;
        } else if c < -tol {
            neg = true;
        }
    }
    !(pos && neg)
}

pub fn diameter(poly: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in poly.iter().enumerate() {
        for b in &poly[i + 1..] {
            d = d.max(dist(*a, *b));
        }
    }
    d
}

pub fn area(poly: &[Point]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1]).sum::<f64>() / 2.0
}

pub fn bounding_box(points: &[Point]) -> Option<[f64; 4]> {
    let mut it = points.iter();
    let first = it.next()?;
    let mut b = [first[0], first[0], first[1], first[1]];
    for p in it {
        b[0] = b[0].min(p[0]);
        b[1] = b[1].max(p[0]);
        b[2] = b[2].min(p[1]);
        b[3] = b[3].max(p[1]);
    }
    Some(b)
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

/// Euclidean distance from `p` to a convex polygon (zero inside).
pub fn distance_to_convex(poly: &[Point], p: Point) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => dist(p, poly[0]),
        n => {
            let inside = n >= 3 && (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= 0.0);
            if inside {
                return 0.0;
            }
            (0..n).map(|i| segment_distance(p, poly[i], poly[(i + 1) % n])).fold(f64::INFINITY, f64::min)
        }
    }
}

/// Hausdorff distance between two convex polygons as filled sets. For convex
/// sets the farthest point of one from the other is always a vertex.
pub fn hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let one = |x: &[Point], y: &[Point]| x.iter().map(|&p| distance_to_convex(y, p)).fold(0.0, f64::max);
    one(a, b).max(one(b, a))
}

/// Hausdorff distance between a convex polygon and the disk `|x - c| <= r`.
pub fn hausdorff_to_disk(poly: &[Point], c: Point, r: f64) -> f64 {
    // Difference of support functions; extremes at vertex and edge-normal directions.
    let outward = poly.iter().map(|&v| dist(v, c) - r).fold(f64::NEG_INFINITY, f64::max);
    let n = poly.len();
    let inward = if n < 3 {
        r + distance_to_convex(poly, c)
    } else {
        (0..n)
            .map(|i| {
                let (a, b) = (poly[i], poly[(i + 1) % n]);
                r - cross(a, b, c).abs() / dist(a, b).max(f64::MIN_POSITIVE)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    outward.max(inward).max(0.0)
}

/// Intersection of the half-planes `x . (cos t_k, sin t_k) <= h_k` for angles
/// sorted increasingly and covering the circle with gaps below pi. Consecutive
/// supporting lines meet at the vertices of the circumscribed polygon.
pub fn halfplane_polygon(thetas: &[f64], h: &[f64]) -> Vec<Point> {
    let n = thetas.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let j = (k + 1) % n;
        let (a, b) = (thetas[k], thetas[j]);
        let det = (b - a).sin();
        let (ca, sa, cb, sb) = (a.cos(), a.sin(), b.cos(), b.sin());
        let x = (h[k] * sb - h[j] * sa) / det;
        let y = (ca * h[j] - cb * h[k]) / det;
        out.push([x, y]);
    }
    convex_hull(&out)
}

/// `max_x in poly x . u`.
pub fn support_of(poly: &[Point], u: Point) -> f64 {
    poly.iter().map(|p| p[0] * u[0] + p[1] * u[1]).fold(f64::NEG_INFINITY, f64::max)
}

pub type RatPoint = [BigRational; 2];

fn rcross(o: &RatPoint, a: &RatPoint, b: &RatPoint) -> BigRational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Exact convex hull of rational points, counter-clockwise, starting from the
/// lexicographically smallest vertex, collinear points dropped.
pub fn convex_hull_exact(points: &[RatPoint]) -> Vec<RatPoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<RatPoint> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<&RatPoint> = if pass == 0 { pts.iter().collect() } else { pts.iter().rev().collect() };
        for p in seq {
            while hull.len() >= start + 2 && !rcross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

/// The closed half-plane `c0 + c1*y1 + c2*y2 >= 0`.
pub type HalfPlane = [BigRational; 3];

fn line_meet(a: &HalfPlane, b: &HalfPlane) -> Option<RatPoint> {
    let det = &a[1] * &b[2] - &a[2] * &b[1];
    if det.is_zero() {
        return None;
    }
    let y1 = (&a[2] * &b[0] - &a[0] * &b[2]) / &det;
    let y2 = (&a[0] * &b[1] - &a[1] * &b[0]) / &det;
    Some([y1, y2])
}

fn satisfies(h: &HalfPlane, p: &RatPoint) -> bool {
    !(&h[0] + &h[1] * &p[0] + &h[2] * &p[1]).is_negative()
}

/// A convex polygonal region cut out by half-planes, computed exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactRegion {
    /// Vertices, counter-clockwise.
    pub vertices: Vec<RatPoint>,
    pub bounded: bool,
}

/// Exact intersection of half-planes `c0 + c1*y1 + c2*y2 >= 0`.
pub fn halfplane_region(planes: &[HalfPlane]) -> ExactRegion {
    let mut cand = Vec::new();
    for (i, a) in planes.iter().enumerate() {
        for b in &planes[i + 1..] {
            if let Some(p) = line_meet(a, b) {
                if planes.iter().all(|h| satisfies(h, &p)) {
                    cand.push(p);
                }
            }
        }
    }
    // Bounded iff the recession cone {d : c1*d1 + c2*d2 >= 0} is trivial; its
    // extreme rays, if any, run along one of the lines.
    let mut bounded = !planes.is_empty();
    for h in planes {
        for d in [[-h[2].clone(), h[1].clone()], [h[2].clone(), -h[1].clone()]] {
            if d[0].is_zero() && d[1].is_zero() {
                continue;
            }
            if planes.iter().all(|g| !(&g[1] * &d[0] + &g[2] * &d[1]).is_negative()) {
                bounded = false;
            }
        }
    }
    ExactRegion { vertices: convex_hull_exact(&cand), bounded }
}

/// Bounded two-dimensional cells of the arrangement of the boundary lines.
pub fn bounded_cells(planes: &[HalfPlane]) -> Vec<ExactRegion> {
    let m = planes.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        let signed: Vec<HalfPlane> = planes
            .iter()
            .enumerate()
            .map(|(k, h)| if mask & (1 << k) != 0 { [-&h[0], -&h[1], -&h[2]] } else { h.clone() })
            .collect();
        let r = halfplane_region(&signed);
        if r.bounded && r.vertices.len() >= 3 {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let h = convex_hull(&pts);
        assert_eq!(h, vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert!(is_convex(&h, 1e-12));
        assert!((area(&h) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull(&[[1.0, 0.0], [1.0, 0.0]]), vec![[1.0, 0.0]]);
        assert_eq!(convex_hull(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]), vec![[0.0, 0.0], [2.0, 0.0]]);
    }

    #[test]
    fn hausdorff_of_nested_squares() {
        let a = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]];
        let b = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!((hausdorff(&a, &b) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(hausdorff(&a, &a), 0.0);
    }

    #[test]
    fn halfplanes_around_unit_disk() {
        let n = 4;
        let thetas: Vec<f64> = (0..n).map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64).collect();
        let poly = halfplane_polygon(&thetas, &vec![1.0; n]);
        assert_eq!(poly.len(), 4);
        assert!((area(&poly) - 4.0).abs() < 1e-12);
        assert!((hausdorff_to_disk(&poly, [0.0, 0.0], 1.0) - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn exact_hull_and_region() {
        let v = |a: i64, b: i64| [rat(a, 1), rat(b, 1)];
        let hull = convex_hull_exact(&[v(5, 0), v(3, 0), v(4, 1), v(4, -1), v(4, 0)]);
        assert_eq!(hull, vec![v(3, 0), v(4, -1), v(5, 0), v(4, 1)]);

        // Unit square as 4 half-planes.
        let h = |c0: i64, c1: i64, c2: i64| [rat(c0, 1), rat(c1, 1), rat(c2, 1)];
        let sq = halfplane_region(&[h(0, 1, 0), h(1, -1, 0), h(0, 0, 1), h(1, 0, -1)]);
        assert!(sq.bounded);
        assert_eq!(sq.vertices.len(), 4);
        let wedge = halfplane_region(&[h(0, 1, 0), h(0, 0, 1)]);
        assert!(!wedge.bounded);
        assert_eq!(wedge.vertices, vec![v(0, 0)]);
    }

    #[test]
    fn arrangement_of_triangle_lines() {
        let h = |c0: i64, c1: i64, c2: i64| [rat(c0, 1), rat(c1, 1), rat(c2, 1)];
        let cells = bounded_cells(&[h(0, 1, 0), h(0, 0, 1), h(1, -1, -1)]);
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].vertices.len(), 3);
    }
}
