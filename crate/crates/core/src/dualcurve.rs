//! The dual curve `Q`: exact elimination of `q(x)`, the gradient map, duals
//! of linear factors, unions over user-supplied factorizations, and numeric
//! dual sampling.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{
    discriminant_binary, is_squarefree, primitive, rat, rat_to_f64, squarefree_decomposition, BinaryForm,
    Monomial, TriPoly, Vars,
};
use crate::hermitian::eig_hermitian;
use crate::pencil::{angle_grid, restrict_to_line, PencilCurve};
use crate::samples::{Chart, CurveSample, CurveSampleSet};

/// Relative tolerance for "this point lies on the curve".
pub const ON_CURVE_TOL: f64 = 1e-8;
/// Relative tolerance for dual-curve vanishing checks.
pub const VANISH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ExactElimination,
    FactorUnion,
    NumericOnly,
}

/// Defining polynomial of a dual curve, in primitive form.
#[derive(Clone, Debug)]
pub struct DualCurve {
    pub q: TriPoly,
    pub provenance: Provenance,
    /// Factors of the raw discriminant that were divided out, with their
    /// multiplicity there (pure `x0` powers and repeated components).
    pub extraneous: Vec<(TriPoly, u32)>,
    /// Largest relative value of `q` over the gradient images used to verify it.
    pub max_residual: f64,
    /// Number of gradient images the residual was taken over.
    pub checked_points: usize,
}

/// A gradient image: raw projective coordinates and, when `|x0| > 1e-12`,
/// the affine copy `(x1/x0, x2/x0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualPoint {
    pub raw: [f64; 3],
    pub chart: Option<[f64; 2]>,
}

fn chart_of(raw: [f64; 3]) -> Option<[f64; 2]> {
    (raw[0].abs() > 1e-12).then(|| [raw[1] / raw[0], raw[2] / raw[0]])
}

/// Gradient of `p` at a point of the curve.
pub fn dual_point(p: &TriPoly, y: [f64; 3]) -> Result<DualPoint> {
    let f = p.to_float();
    if f.relative_value(&y) > ON_CURVE_TOL {
        return Err(Error::InvalidArgument(format!("point {y:?} is not on the curve")));
    }
    let grad = p.gradient().map(|g| g.to_float());
    let raw = [grad[0].eval(&y), grad[1].eval(&y), grad[2].eval(&y)];
    let scale = grad.iter().map(|g| g.max_term_magnitude(&y)).fold(0.0, f64::max);
    if raw.iter().all(|v| v.abs() <= 1e-10 * scale) {
        return Err(Error::SingularPoint);
    }
    Ok(DualPoint { raw, chart: chart_of(raw) })
}

/// Exact gradient at a rational point of the curve.
pub fn dual_point_exact(p: &TriPoly, y: &[BigRational; 3]) -> Result<[BigRational; 3]> {
    if !p.eval(y).is_zero() {
        return Err(Error::InvalidArgument("point is not on the curve".into()));
    }
    let g = p.gradient().map(|d| d.eval(y));
    if g.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint);
    }
    Ok(g)
}

/// The dual of the line `c0*y0 + c1*y1 + c2*y2 = 0` is the point `(c0, c1, c2)`.
pub fn dual_of_linear(l: &TriPoly) -> Result<[BigRational; 3]> {
    if l.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if l.homogeneous_degree() != Some(1) {
        return Err(Error::NotHomogeneous(1));
    }
    Ok([0, 1, 2].map(|v| l.coeff(Monomial::var(v))))
}

/// The binary form `p(-(x1*z + x2*w), x0*z, x0*w)` in `(z, w) = (y1, y2)`,
/// which is `x0^n * p` restricted to the line `x . y = 0`.
pub fn restricted_form(p: &TriPoly) -> Result<BinaryForm> {
    let n = p.homogeneous_degree().ok_or(Error::NotHomogeneous(p.total_degree().unwrap_or(0)))? as usize;
    let mut coeffs = vec![TriPoly::zero(Vars::X); n + 1];
    for (m, c) in p.terms() {
        let [a, b, cc] = m.0;
        let sign = if a % 2 == 1 { -c } else { c.clone() };
        for k in 0..=a {
            // (x1 z)^k (x2 w)^(a-k) * (x0 z)^b * (x0 w)^cc
            let coef = &sign * BigRational::from_integer(binomial(BigInt::from(a), BigInt::from(k)));
            let w_power = (a - k + cc) as usize;
            let mono = Monomial([b + cc, k, a - k]);
            coeffs[w_power] = &coeffs[w_power] + &TriPoly::monomial(Vars::X, mono, coef);
        }
    }
    BinaryForm::new(coeffs)
}

/// Exact dual curve of an irreducible-by-contract, squarefree `p`.
///
/// The tangency condition is the discriminant of the restriction of `p` to
/// the line `x . y = 0`. Pure `x0` powers and content are stripped; factors
/// that occur with multiplicity two or more come from pencils of lines through
/// singular points of `P` and are discarded. The result is checked against
/// gradient images of points sampled on `P`.
pub fn dual_curve_exact(p: &TriPoly) -> Result<DualCurve> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.homogeneous_degree().ok_or(Error::NotHomogeneous(p.total_degree().unwrap_or(0)))?;
    if n < 2 {
        return Err(Error::Degenerate("a line is dual to a point; use dual_of_linear".into()));
    }
    if !p.depends_on(1) || !p.depends_on(2) {
        return Err(Error::Degenerate("the curve is a union of concurrent lines; its dual is a set of points".into()));
    }
    if !is_squarefree(p) {
        return Err(Error::Reducible);
    }
    let disc = discriminant_binary(&restricted_form(p)?)?;
    if disc.is_zero() {
        return Err(Error::Degenerate("discriminant vanishes identically".into()));
    }
    let k = disc.order_in(0);
    let mut extraneous = Vec::new();
    if k > 0 {
        extraneous.push((TriPoly::var(Vars::X, 0), k));
    }
    let stripped = disc.div_exact(&TriPoly::monomial(Vars::X, Monomial([k, 0, 0]), BigRational::one()))?;
    let mut q = TriPoly::one(Vars::X);
    for (f, mult) in squarefree_decomposition(&stripped)? {
        if mult == 1 {
            q = &q * &f;
        } else {
            extraneous.push((f, mult));
        }
    }
    let q = primitive(&q);
    if q.is_constant() {
        return Err(Error::Degenerate("no curve component in the dual; supply the factors of p".into()));
    }
    let deg = q.total_degree().expect("nonzero");
    if deg > n * (n - 1) {
        return Err(Error::Consistency(format!("dual degree {deg} exceeds n(n-1) = {}", n * (n - 1))));
    }
    let images = gradient_images(p, 200, 0x5eed)?;
    let max_residual = max_relative_residual(&q, &images);
    if max_residual > VANISH_TOL {
        return Err(Error::Consistency(format!(
            "q does not vanish on gradient images (max relative residual {max_residual:e}); p is likely reducible"
        )));
    }
    Ok(DualCurve { q, provenance: Provenance::ExactElimination, extraneous, max_residual, checked_points: images.len() })
}

/// `max |q(x)| / max_m |c_m x^m|` over the given points.
pub fn max_relative_residual(q: &TriPoly, points: &[[f64; 3]]) -> f64 {
    let f = q.to_float();
    points.iter().map(|x| f.relative_value(x)).fold(0.0, f64::max)
}

/// Smooth points of the real curve `p = 0` in the chart `y0 = 1`, found as the
/// exactly isolated real roots of `p` on random rational lines through the origin.
pub fn curve_points(p: &TriPoly, count: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count.max(1) {
        attempts += 1;
        let (a, b) = (rng.gen_range(-97i64..=97), rng.gen_range(-97i64..=97));
        if a == 0 && b == 0 {
            continue;
        }
        let u = restrict_to_line(p, &rat(a, 1), &rat(b, 1));
        for t in u.real_roots() {
            if out.len() < count {
                out.push([1.0, t * a as f64, t * b as f64]);
            }
        }
    }
    out
}

/// Gradient images of `count` smooth points of `p = 0`. Singular points are skipped.
pub fn gradient_images(p: &TriPoly, count: usize, seed: u64) -> Result<Vec<[f64; 3]>> {
    let pts = curve_points(p, 2 * count, seed);
    let mut out = Vec::with_capacity(count);
    for y in pts {
        match dual_point(p, y) {
            Ok(d) => out.push(d.raw),
            Err(Error::SingularPoint) => {}
            Err(e) => return Err(e),
        }
        if out.len() == count {
            break;
        }
    }
    Ok(out)
}

/// One component of the dual of a reducible curve.
#[derive(Clone, Debug)]
pub enum DualComponent {
    Curve(DualCurve),
    Point([BigRational; 3]),
}

/// A verified factorization `p = c * prod f_k^(m_k)`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<(TriPoly, u32)>,
    pub scalar: BigRational,
}

/// Verifies by exact division that the factors multiply to `p` up to a
/// nonzero constant, and reports each factor's multiplicity.
pub fn verify_factorization(p: &TriPoly, factors: &[TriPoly]) -> Result<Factorization> {
    if factors.is_empty() {
        return Err(Error::FactorMismatch("no factors given".into()));
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    for f in factors {
        if f.is_constant() {
            return Err(Error::FactorMismatch(format!("constant factor {f}")));
        }
        let mut m = 0;
        while let Ok(q) = rest.div_exact(f) {
            rest = q;
            m += 1;
        }
        if m == 0 {
            return Err(Error::FactorMismatch(format!("{f} does not divide p")));
        }
        out.push((f.clone(), m));
    }
    if !rest.is_constant() || rest.is_zero() {
        return Err(Error::FactorMismatch(format!("leftover cofactor {rest}")));
    }
    Ok(Factorization { factors: out, scalar: rest.coeff(Monomial::ONE) })
}

/// Union of the duals of user-supplied factors of `p`.
pub fn dual_union(p: &TriPoly, factors: &[TriPoly]) -> Result<(Factorization, Vec<DualComponent>)> {
    let fz = verify_factorization(p, factors)?;
    let comps = fz
        .factors
        .par_iter()
        .map(|(f, _)| {
            if f.total_degree() == Some(1) {
                dual_of_linear(f).map(DualComponent::Point)
            } else {
                dual_curve_exact(f).map(|mut d| {
                    d.provenance = Provenance::FactorUnion;
                    DualComponent::Curve(d)
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((fz, comps))
}

/// Numeric samples of `Q`: every real intersection of `N` rays with `P`, mapped
/// through the gradient. At a simple zero eigenvalue with null vector `v`, the
/// gradient of `p` is proportional to `(v*v, v*A1 v, v*A2 v)`; a repeated zero
/// eigenvalue is a singular point of `P` and is flagged without a dual point.
pub fn dual_sample(curve: &PencilCurve, n: usize) -> Result<CurveSampleSet> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 rays, got {n}")));
    }
    let fp = curve.pencil.to_float();
    let scale = fp.a1().frobenius_norm().max(fp.a2().frobenius_norm());
    if scale == 0.0 {
        return Ok(CurveSampleSet::new(Chart::X0, Vec::new()));
    }
    let per_ray = angle_grid(n)
        .into_par_iter()
        .map(|theta| {
            let (c, s) = (theta.cos(), theta.sin());
            let e = eig_hermitian(&fp.combination(c, s))?;
            let mut out = Vec::new();
            // Ray exits are at t = -1/lambda for the negative eigenvalues,
            // so ascending order gives increasing t.
            let negative: Vec<usize> = (0..e.values.len()).filter(|&k| e.values[k] < -1e-14 * scale).collect();
            for (root_index, &k) in negative.iter().enumerate() {
                let lam = e.values[k];
                let gap = e
                    .values
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &mu)| (mu - lam).abs())
                    .fold(f64::INFINITY, f64::min);
                let singular = gap <= 1e-9 * scale;
                let point = if singular {
                    None
                } else {
                    let v = &e.vectors[k];
                    let w = [fp.a1().quadratic_form(v), fp.a2().quadratic_form(v)];
                    Some(w)
                };
                out.push(CurveSample { theta, root_index, point, lambda_min: None, singular });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSampleSet::new(Chart::X0, per_ray.into_iter().flatten().collect()))
}

/// `(1, x1, x2)` for chart points.
pub fn lift(points: &[[f64; 2]]) -> Vec<[f64; 3]> {
    points.iter().map(|p| [1.0, p[0], p[1]]).collect()
}

/// Affine chart value of the gradient-image points, dropping points at infinity.
pub fn to_chart(points: &[[f64; 3]]) -> Vec<[f64; 2]> {
    points.iter().filter_map(|&x| chart_of(x)).collect()
}

/// Rational point to floats.
pub fn point_to_f64(p: &[BigRational; 3]) -> [f64; 3] {
    p.each_ref().map(rat_to_f64)
}
