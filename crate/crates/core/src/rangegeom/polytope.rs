use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{support_grid, DEFAULT_GRID};
use crate::error::Result;
use crate::exactpoly::{rat_to_f64, Monomial, TriPoly, Vars};
use crate::geometry::{
    bounded_cells, convex_hull, convex_hull_exact, distance_to_convex, halfplane_region, ExactRegion, HalfPlane, Point,
    RatPoint,
};
use crate::hermitian::{eig_hermitian, split, FloatPencil, GaussianRationalMatrix};
use crate::pencil::pencil_det;

/// Witnesses closer than this (relative to the pencil norm) are one corner.
const CORNER_TOL: f64 = 1e-8;

/// Certified exact description of a polytopal `W(A)` and its dual `F(A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPolytope {
    /// Eigenvalues as points `(Re, Im)` with multiplicity.
    pub eigenpoints: Vec<(RatPoint, u32)>,
    pub w_vertices: Vec<RatPoint>,
    /// The linear factors `y0 + a*y1 + b*y2` of `p`, with multiplicity.
    pub factors: Vec<(TriPoly, u32)>,
    /// `F(A)` as the intersection of the half-planes `1 + a*y1 + b*y2 >= 0`.
    pub f_region: ExactRegion,
    /// Bounded cells of the line arrangement `P`.
    pub f_cells: Vec<ExactRegion>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolytopeVerdict {
    /// `W(A)` is a polygon (possibly a point or segment). `exact` is present
    /// when the eigenvalues are Gaussian rationals and `p` was certified.
    Polytope { vertices: Vec<Point>, exact: Option<ExactPolytope> },
    Smooth,
    /// Corners and curved pieces, or no clear verdict.
    Mixed,
}

/// Best rational with denominator at most `max_den` within `tol` of `x`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        (h0, h1) = (h1, ai * h1 + h0);
        (k0, k1) = (k1, ai * k1 + k0);
        if k1 > max_den as i128 {
            return None;
        }
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Joint eigenpoints `(v*A1 v, v*A2 v)` of a commuting pencil (a normal
/// matrix), from one eigenbasis of a generic combination of the two parts.
pub fn joint_eigenpoints(fp: &FloatPencil) -> Result<Vec<Point>> {
    let e = eig_hermitian(&fp.combination(1.0, std::f64::consts::FRAC_1_SQRT_2 + 0.1))?;
    Ok(e.vectors.iter().map(|v| [fp.a1().quadratic_form(v), fp.a2().quadratic_form(v)]).collect())
}

fn linear_form(p: &RatPoint) -> TriPoly {
    TriPoly::from_terms(
        Vars::Y,
        [(Monomial::var(0), BigRational::one()), (Monomial::var(1), p[0].clone()), (Monomial::var(2), p[1].clone())],
    )
}

/// Rationalizes the eigenpoints and certifies them by checking that the
/// product of the linear forms equals `p` exactly.
fn certify(a: &GaussianRationalMatrix, numeric: &[Point]) -> Result<Option<ExactPolytope>> {
    let scale = numeric.iter().flat_map(|p| p.iter()).fold(1.0f64, |m, v| m.max(v.abs()));
    let mut points: Vec<RatPoint> = Vec::new();
    for p in numeric {
        match (rationalize(p[0], 1 << 20, 1e-9 * scale), rationalize(p[1], 1 << 20, 1e-9 * scale)) {
            (Some(x), Some(y)) => points.push([x, y]),
            _ => return Ok(None),
        }
    }
    let p = pencil_det(&split(a))?.p;
    let mut product = TriPoly::one(Vars::Y);
    for q in &points {
        product = &product * &linear_form(q);
    }
    if product != p {
        return Ok(None);
    }
    points.sort();
    let mut eigenpoints: Vec<(RatPoint, u32)> = Vec::new();
    for q in points {
        match eigenpoints.last_mut() {
            Some((last, m)) if *last == q => *m += 1,
            _ => eigenpoints.push((q, 1)),
        }
    }
    let planes: Vec<HalfPlane> =
        eigenpoints.iter().map(|(q, _)| [BigRational::one(), q[0].clone(), q[1].clone()]).collect();
    let distinct: Vec<RatPoint> = eigenpoints.iter().map(|e| e.0.clone()).collect();
    Ok(Some(ExactPolytope {
        w_vertices: convex_hull_exact(&distinct),
        factors: eigenpoints.iter().map(|(q, m)| (linear_form(q), *m)).collect(),
        f_region: halfplane_region(&planes),
        f_cells: if planes.len() <= 12 { bounded_cells(&planes) } else { Vec::new() },
        eigenpoints,
    }))
}

/// Runs of consecutive grid angles that share one witness are corners of
/// `W(A)`; a lone witness between two corners must be collinear with them
/// (an edge normal hit exactly by the grid). All samples accounted for this
/// way means a polygon, no corners at all means a smooth boundary.
fn classify_by_witnesses(a: &GaussianRationalMatrix) -> Result<PolytopeVerdict> {
    let fp = split(a).to_float();
    let tol = CORNER_TOL * fp.a1().frobenius_norm().max(fp.a2().frobenius_norm()).max(1.0);
    let w: Vec<Point> = support_grid(&fp, DEFAULT_GRID)?.iter().map(|s| s.witness).collect();
    let n = w.len();
    let (prev, next) = (|i: usize| (i + n - 1) % n, |i: usize| (i + 1) % n);
    let close = |i: usize, j: usize| (w[i][0] - w[j][0]).hypot(w[i][1] - w[j][1]) <= tol;
    let corner: Vec<bool> = (0..n).map(|i| close(i, prev(i)) || close(i, next(i))).collect();
    let on_edge = |i: usize| {
        corner[prev(i)] && corner[next(i)] && distance_to_convex(&[w[prev(i)], w[next(i)]], w[i]) <= tol
    };
    let corners = corner.iter().filter(|&&c| c).count();
    let polygonal = (0..n).all(|i| corner[i] || on_edge(i));
    Ok(if corners == 0 {
        PolytopeVerdict::Smooth
    } else if polygonal {
        PolytopeVerdict::Polytope { vertices: convex_hull(&w), exact: None }
    } else {
        PolytopeVerdict::Mixed
    })
}

/// Normal matrices have `W(A)` = hull of the spectrum; otherwise the support
/// witnesses decide.
pub fn polytope_detect(a: &GaussianRationalMatrix) -> Result<PolytopeVerdict> {
    if !a.is_normal() {
        return classify_by_witnesses(a);
    }
    let numeric = joint_eigenpoints(&split(a).to_float())?;
    let exact = certify(a, &numeric)?;
    let vertices = match &exact {
        Some(e) => e.w_vertices.iter().map(|v| [rat_to_f64(&v[0]), rat_to_f64(&v[1])]).collect(),
        None => convex_hull(&numeric),
    };
    Ok(PolytopeVerdict::Polytope { vertices, exact })
}
