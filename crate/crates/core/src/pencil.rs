//! The pencil determinant `p(y)` and the LMI set `F(A)` in the chart `y0 = 1`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::univariate::{aberth_roots, UPoly};
use crate::exactpoly::{det_poly_matrix, rat, GaussPoly, TriPoly, Vars};
use crate::hermitian::{eig_hermitian, FloatPencil, HermitianPencil};
use crate::samples::{Chart, CurveSample, CurveSampleSet};

/// Boundary tolerance on the smallest eigenvalue.
pub const LMI_TOL: f64 = 1e-9;

/// `p(y) = det(y0*I + y1*A1 + y2*A2)` together with its pencil.
#[derive(Clone, Debug)]
pub struct PencilCurve {
    pub p: TriPoly,
    pub pencil: HermitianPencil,
}

impl PencilCurve {
    pub fn degree(&self) -> u32 {
        self.pencil.n() as u32
    }
}

/// Exact pencil determinant. The Gaussian imaginary parts must cancel.
pub fn pencil_det(pencil: &HermitianPencil) -> Result<PencilCurve> {
    let n = pencil.n();
    let y = |i| GaussPoly::var(Vars::Y, i);
    let mut m = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = &y(1).scale(pencil.a1().get(i, j)) + &y(2).scale(pencil.a2().get(i, j));
            if i == j {
                e = &e + &y(0);
            }
            row.push(e);
        }
        m.push(row);
    }
    let det = det_poly_matrix(&m)?;
    let (re, im) = det.split_re_im();
    if !im.is_zero() {
        return Err(Error::ImaginaryResidue);
    }
    let p = re.declare_homogeneous(n as u32)?;
    if p.eval(&[BigRational::one(), BigRational::zero(), BigRational::zero()]) != BigRational::one() {
        return Err(Error::Consistency("p(1,0,0) != 1".into()));
    }
    Ok(PencilCurve { p, pencil: pencil.clone() })
}

/// `lambda_min(F(1, y1, y2)) >= -1e-9`.
pub fn lmi_member(pencil: &FloatPencil, y: [f64; 2]) -> Result<bool> {
    Ok(eig_hermitian(&pencil.lmi_matrix(y[0], y[1]))?.min() >= -LMI_TOL)
}

/// Exit parameter of a ray from the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exit {
    Finite(f64),
    /// `F(A)` contains the whole ray.
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayExit {
    pub direction: [f64; 2],
    pub t_exit: Exit,
    /// `t * d` when the exit is finite.
    pub point: Option<[f64; 2]>,
    /// `lambda_min(F(1, t*d))` at the exit point.
    pub lambda_min: Option<f64>,
}

/// Eigenvalues of `d1*A1 + d2*A2` this close to zero (relative to the pencil
/// norm) are treated as zero, so rounding noise does not fake a far exit.
const ZERO_EIG: f64 = 1e-14;

fn pencil_scale(pencil: &FloatPencil) -> f64 {
    pencil.a1().frobenius_norm().max(pencil.a2().frobenius_norm())
}

/// Shoots the ray `t*d`, `t >= 0`: `t_exit = -1/lambda_min(d1*A1 + d2*A2)`
/// when that eigenvalue is negative, unbounded otherwise.
pub fn ray_exit(pencil: &FloatPencil, d: [f64; 2]) -> Result<RayExit> {
    let norm = d[0].hypot(d[1]);
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit(norm));
    }
    let lam = eig_hermitian(&pencil.combination(d[0], d[1]))?.min();
    if lam >= -ZERO_EIG * pencil_scale(pencil) {
        return Ok(RayExit { direction: d, t_exit: Exit::Unbounded, point: None, lambda_min: None });
    }
    let t = -1.0 / lam;
    let point = [t * d[0], t * d[1]];
    let lambda_min = eig_hermitian(&pencil.lmi_matrix(point[0], point[1]))?.min();
    Ok(RayExit { direction: d, t_exit: Exit::Finite(t), point: Some(point), lambda_min: Some(lambda_min) })
}

/// `N` equally spaced angles `2*pi*k/N`.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64).collect()
}

/// Polygonal approximation of the boundary of `F(A)`, one ray per angle.
pub fn boundary_f(pencil: &FloatPencil, n: usize) -> Result<CurveSampleSet> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 rays, got {n}")));
    }
    if pencil_scale(pencil) == 0.0 {
        let mut set = CurveSampleSet::new(Chart::Y0, Vec::new());
        set.unbounded_everywhere = true;
        return Ok(set);
    }
    let samples = angle_grid(n)
        .into_par_iter()
        .map(|theta| {
            let r = ray_exit(pencil, [theta.cos(), theta.sin()])?;
            Ok(CurveSample { theta, root_index: 0, point: r.point, lambda_min: r.lambda_min, singular: false })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut set = CurveSampleSet::new(Chart::Y0, samples);
    set.unbounded_everywhere = set.unbounded_count() == n;
    Ok(set)
}

/// All real points of the curve `p = 0` on rays from the origin: on the ray
/// at angle `theta` they sit at `t = -1/lambda` for every negative eigenvalue
/// `lambda` of `cos*A1 + sin*A2`, nearest first. Rays that miss the curve
/// contribute no samples.
pub fn curve_samples(pencil: &FloatPencil, n: usize) -> Result<CurveSampleSet> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 rays, got {n}")));
    }
    let floor = ZERO_EIG * pencil_scale(pencil);
    let per_ray = angle_grid(n)
        .into_par_iter()
        .map(|theta| {
            let (s, c) = theta.sin_cos();
            let eig = eig_hermitian(&pencil.combination(c, s))?;
            Ok(eig
                .values
                .iter()
                .filter(|&&l| l < -floor)
                .enumerate()
                .map(|(k, &l)| {
                    let t = -1.0 / l;
                    CurveSample { theta, root_index: k, point: Some([t * c, t * s]), lambda_min: None, singular: false }
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSampleSet::new(Chart::Y0, per_ray.into_iter().flatten().collect()))
}

/// Restriction of `p` to the line `y = (1, t*a, t*b)`.
pub fn restrict_to_line(p: &TriPoly, a: &BigRational, b: &BigRational) -> UPoly {
    let base = [BigRational::one(), BigRational::zero(), BigRational::zero()];
    UPoly::restrict(p, &base, &[BigRational::zero(), a.clone(), b.clone()])
}

/// Outcome for one line through the origin.
#[derive(Clone, Debug)]
pub struct LineCheck {
    pub direction: [i64; 2],
    /// Degree of the restriction (lower than `n` when roots escape to infinity).
    pub degree: usize,
    /// Real roots with multiplicity, by exact Sturm counting.
    pub real_roots: usize,
    /// Largest relative gap between the eigenvalue-derived roots `-1/lambda`
    /// and the exactly isolated real roots.
    pub eig_residual: f64,
    /// Largest `|Im z|` among floating roots (diagnostic; multiple roots inflate it).
    pub imag_residue: f64,
}

impl LineCheck {
    pub fn all_real(&self) -> bool {
        self.real_roots == self.degree
    }
}

#[derive(Clone, Debug)]
pub struct HyperbolicityReport {
    pub lines: Vec<LineCheck>,
}

impl HyperbolicityReport {
    pub fn all_real(&self) -> bool {
        self.lines.iter().all(LineCheck::all_real)
    }

    pub fn max_eig_residual(&self) -> f64 {
        self.lines.iter().map(|l| l.eig_residual).fold(0.0, f64::max)
    }

    pub fn max_imag_residue(&self) -> f64 {
        self.lines.iter().map(|l| l.imag_residue).fold(0.0, f64::max)
    }

    pub fn passes(&self, eig_tol: f64) -> bool {
        self.all_real() && self.max_eig_residual() <= eig_tol
    }
}

/// Checks the real-zero property on `trials` random rational lines through
/// the origin of the chart.
pub fn hyperbolicity_check(curve: &PencilCurve, trials: usize, seed: u64) -> Result<HyperbolicityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<[i64; 2]> = (0..trials.max(1))
        .map(|_| loop {
            let d = [rng.gen_range(-40..=40), rng.gen_range(-40..=40)];
            if d != [0, 0] {
                break d;
            }
        })
        .collect();
    let fp = curve.pencil.to_float();
    let lines = dirs.into_par_iter().map(|d| check_line(curve, &fp, d)).collect::<Result<Vec<_>>>()?;
    Ok(HyperbolicityReport { lines })
}

fn check_line(curve: &PencilCurve, fp: &FloatPencil, d: [i64; 2]) -> Result<LineCheck> {
    let u = restrict_to_line(&curve.p, &rat(d[0], 1), &rat(d[1], 1));
    let degree = u.degree();
    let real_roots = u.count_real_roots_with_multiplicity();
    let exact_roots = u.real_roots();

    // Roots along the line are -1/lambda for the nonzero eigenvalues of d.A;
    // exactly n - degree eigenvalues vanish.
    let e = eig_hermitian(&fp.combination(d[0] as f64, d[1] as f64))?;
    let mut lams = e.values.clone();
    lams.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let n = fp.n();
    let mut eig_residual: f64 = 0.0;
    for lam in &lams[n - degree..] {
        let r = -1.0 / lam;
        let gap = exact_roots.iter().map(|x| (x - r).abs() / x.abs().max(1.0)).fold(f64::INFINITY, f64::min);
        eig_residual = eig_residual.max(gap);
    }
    let imag_residue = aberth_roots(&u.to_f64()).iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(LineCheck { direction: d, degree, real_roots, eig_residual, imag_residue })
}

/// `p(1, y1, y2)` against the product of the eigenvalues of `F(1, y1, y2)`,
/// relative to the largest monomial magnitude.
pub fn determinant_consistency(curve: &PencilCurve, y: [f64; 2]) -> Result<f64> {
    let fp = curve.pencil.to_float();
    let prod: f64 = eig_hermitian(&fp.lmi_matrix(y[0], y[1]))?.values.iter().product();
    let f = curve.p.to_float();
    let pt = [1.0, y[0], y[1]];
    let scale = f.max_term_magnitude(&pt).max(prod.abs()).max(f64::MIN_POSITIVE);
    Ok((f.eval(&pt) - prod).abs() / scale)
}

/// Exact value `p(1, y1, y2)` at a rational point.
pub fn eval_chart(p: &TriPoly, y1: &BigRational, y2: &BigRational) -> BigRational {
    p.eval(&[BigRational::one(), y1.clone(), y2.clone()])
}

/// Exact eigenvalue-free check that a rational chart point lies on `P`.
pub fn on_curve_exact(p: &TriPoly, y1: &BigRational, y2: &BigRational) -> bool {
    eval_chart(p, y1, y2).is_zero()
}
