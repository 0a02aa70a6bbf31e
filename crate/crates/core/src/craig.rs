//! Determinant factorization `det(I + y1*A1 + y2*A2) = det(I + y1*A1) * det(I + y2*A2)`
//! against `A1*A2 = 0`, both decided exactly, plus seeded instance generators.

use std::fmt;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{rat, GaussianRational, Monomial, TriPoly};
use crate::geometry::{bounding_box, convex_hull, hausdorff};
use crate::hermitian::{eig_hermitian, split, GaussianRationalMatrix, HermitianPencil};
use crate::pencil::pencil_det;
use crate::rangegeom::{joint_eigenpoints, range_hulls, DEFAULT_GRID};

fn at_y0_one(p: &TriPoly) -> TriPoly {
    TriPoly::from_terms(p.vars(), p.terms().map(|(m, c)| (Monomial([0, m.0[1], m.0[2]]), c.clone())))
}

/// Exact comparison of the two-variable determinant with the product of the
/// one-variable ones, all at `y0 = 1`.
pub fn craig_identity(a1: &GaussianRationalMatrix, a2: &GaussianRationalMatrix) -> Result<bool> {
    let n = a1.n();
    let both = pencil_det(&HermitianPencil::new(a1.clone(), a2.clone())?)?.p;
    let left = pencil_det(&HermitianPencil::new(a1.clone(), GaussianRationalMatrix::zero(n))?)?.p;
    let right = pencil_det(&HermitianPencil::new(GaussianRationalMatrix::zero(n), a2.clone())?)?.p;
    Ok(at_y0_one(&both) == &at_y0_one(&left) * &at_y0_one(&right))
}

pub fn product_zero(a1: &GaussianRationalMatrix, a2: &GaussianRationalMatrix) -> Result<bool> {
    Ok(a1.mul(a2)?.is_zero())
}

/// How the sampled `W(A1 + i*A2)` compares with the spectral data.
#[derive(Clone, Debug, PartialEq)]
pub struct HullCheck {
    /// Largest difference between the bounding box of either hull and the rectangle.
    pub box_deviation: f64,
    /// Hausdorff distance from the inner hull to the hull of the joint
    /// eigenpoints. The outer hull overshoots polygon edges whose normals fall
    /// between grid angles, so it only enters through the bounding box.
    pub eigenhull_distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CraigVerdict {
    pub identity_holds: bool,
    pub product_zero: bool,
    /// `[x1min, x1max, x2min, x2max]` from the spectra of `A1` and `A2`.
    pub rectangle: Option<[f64; 4]>,
    /// Eigenvalues of `A1` and of `A2`, ascending.
    pub eigen_pairs: Option<(Vec<f64>, Vec<f64>)>,
    pub hull_check: Option<HullCheck>,
}

impl CraigVerdict {
    /// Rectangle corners, counter-clockwise from `(x1min, x2min)`.
    pub fn rectangle_vertices(&self) -> Option<[[f64; 2]; 4]> {
        self.rectangle.map(|[a, b, c, d]| [[a, c], [b, c], [b, d], [a, d]])
    }
}

impl fmt::Display for CraigVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "identity={} product_zero={} rectangle=", self.identity_holds, self.product_zero)?;
        match self.rectangle {
            Some([a, b, c, d]) => write!(f, "{a},{b},{c},{d}"),
            None => write!(f, "none"),
        }
    }
}

/// Runs both exact tests; when they hold, reports the spectral rectangle and
/// cross-checks it against the sampled range of `A1 + i*A2`.
///
/// `W(A1 + i*A2)` is then the hull of the joint eigenpoints `(a1k, a2k)`,
/// which lie on the axes; the rectangle is its bounding box.
pub fn craig_verdict(a1: &GaussianRationalMatrix, a2: &GaussianRationalMatrix) -> Result<CraigVerdict> {
    let identity_holds = craig_identity(a1, a2)?;
    let product_zero = product_zero(a1, a2)?;
    if identity_holds != product_zero {
        return Err(Error::Consistency(format!(
            "factorization identity is {identity_holds} but A1*A2 = 0 is {product_zero}"
        )));
    }
    if !identity_holds {
        return Ok(CraigVerdict { identity_holds, product_zero, rectangle: None, eigen_pairs: None, hull_check: None });
    }
    let pencil = HermitianPencil::new(a1.clone(), a2.clone())?;
    let fp = pencil.to_float();
    let e1 = eig_hermitian(fp.a1())?.values;
    let e2 = eig_hermitian(fp.a2())?.values;
    let rectangle = [e1[0], e1[e1.len() - 1], e2[0], e2[e2.len() - 1]];
    let hulls = range_hulls(&fp, DEFAULT_GRID)?;
    let box_deviation = [&hulls.inner, &hulls.outer]
        .iter()
        .filter_map(|h| bounding_box(h))
        .flat_map(|b| (0..4).map(move |k| (b[k] - rectangle[k]).abs()))
        .fold(0.0, f64::max);
    let eigenhull = convex_hull(&joint_eigenpoints(&fp)?);
    let hull_check = HullCheck { box_deviation, eigenhull_distance: hausdorff(&hulls.inner, &eigenhull) };
    Ok(CraigVerdict {
        identity_holds,
        product_zero,
        rectangle: Some(rectangle),
        eigen_pairs: Some((e1, e2)),
        hull_check: Some(hull_check),
    })
}

const TRIPLES: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];

/// Unitary matrix with Gaussian-rational entries: a product of rational
/// Givens rotations, then (when `complex`) a diagonal of unit phases `(a+bi)/c`.
pub fn rational_unitary(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> GaussianRationalMatrix {
    let mut q = GaussianRationalMatrix::identity(n);
    if n >= 2 {
        for _ in 0..2 * n {
            let (a, b, c) = *TRIPLES.choose(rng).expect("nonempty");
            let (cs, sn) = (rat(a, c), rat(if rng.gen_bool(0.5) { b } else { -b }, c));
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let mut g = GaussianRationalMatrix::identity(n);
            g.set(i, i, GaussianRational::real(cs.clone()));
            g.set(j, j, GaussianRational::real(cs));
            g.set(i, j, GaussianRational::real(-sn.clone()));
            g.set(j, i, GaussianRational::real(sn));
            q = g.mul(&q).expect("same size");
        }
    }
    if complex {
        let mut d = GaussianRationalMatrix::identity(n);
        for k in 0..n {
            let (a, b, c) = *TRIPLES.choose(rng).expect("nonempty");
            d.set(k, k, GaussianRational::new(rat(a, c), rat(if rng.gen_bool(0.5) { b } else { -b }, c)));
        }
        q = d.mul(&q).expect("same size");
    }
    q
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(num, rng.gen_range(1..=3))
}

fn conjugate(q: &GaussianRationalMatrix, d: &[BigRational]) -> GaussianRationalMatrix {
    q.mul(&GaussianRationalMatrix::diag(d)).and_then(|m| m.mul(&q.conj_transpose())).expect("same size")
}

/// `A1 = Q D1 Q*`, `A2 = Q D2 Q*` with `D1`, `D2` diagonal and `D1*D2 = 0`.
pub fn planted_pair(seed: u64, n: usize) -> (GaussianRationalMatrix, GaussianRationalMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = rational_unitary(&mut rng, n, seed % 2 == 1);
    let mut d1 = vec![BigRational::from_integer(0.into()); n];
    let mut d2 = d1.clone();
    for k in 0..n {
        match rng.gen_range(0..3) {
            0 => d1[k] = nonzero_rational(&mut rng),
            1 => d2[k] = nonzero_rational(&mut rng),
            _ => {}
        }
    }
    (conjugate(&q, &d1), conjugate(&q, &d2))
}

/// Pairs that usually fail the test: even seeds give the Hermitian parts of a
/// random matrix, odd seeds commuting pairs whose diagonal supports overlap.
pub fn generic_pair(seed: u64, n: usize) -> (GaussianRationalMatrix, GaussianRationalMatrix) {
    if seed.is_multiple_of(2) {
        let p = split(&crate::fixtures::random_matrix(seed, n));
        return (p.a1().clone(), p.a2().clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let complex = rng.gen_bool(0.5);
    let q = rational_unitary(&mut rng, n, complex);
    let mut d1: Vec<BigRational> = (0..n).map(|_| nonzero_rational(&mut rng)).collect();
    let mut d2: Vec<BigRational> = (0..n).map(|_| nonzero_rational(&mut rng)).collect();
    let shared = rng.gen_range(0..n);
    for k in 0..n {
        if k != shared && rng.gen_bool(0.5) {
            if rng.gen_bool(0.5) {
                d1[k] = BigRational::from_integer(0.into());
            } else {
                d2[k] = BigRational::from_integer(0.into());
            }
        }
    }
    (conjugate(&q, &d1), conjugate(&q, &d2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchReport {
    pub instances: usize,
    pub agreements: usize,
    /// Instances whose product is zero.
    pub product_zero_count: usize,
    /// Descriptions of disagreeing instances.
    pub disagreements: Vec<String>,
}

/// Checks `craig_identity == product_zero` on `planted` planted and `generic`
/// generic pairs, sizes cycling through `1..=max_n`.
pub fn batch_check(planted: usize, generic: usize, max_n: usize, seed: u64) -> Result<BatchReport> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be positive".into()));
    }
    let jobs: Vec<(bool, u64, usize)> = (0..planted)
        .map(|k| (true, seed.wrapping_add(k as u64), 1 + k % max_n))
        .chain((0..generic).map(|k| (false, seed.wrapping_add(k as u64), 1 + k % max_n)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(planted, s, n)| {
            let (a1, a2) = if planted { planted_pair(s, n) } else { generic_pair(s, n) };
            Ok((planted, s, n, craig_identity(&a1, &a2)?, product_zero(&a1, &a2)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let disagreements: Vec<String> = results
        .iter()
        .filter(|r| r.3 != r.4)
        .map(|&(p, s, n, id, pz)| {
            format!("{} seed={s} n={n}: identity={id} product_zero={pz}", if p { "planted" } else { "generic" })
        })
        .collect();
    Ok(BatchReport {
        instances: results.len(),
        agreements: results.len() - disagreements.len(),
        product_zero_count: results.iter().filter(|r| r.4).count(),
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> GaussianRationalMatrix {
        GaussianRationalMatrix::diag(&v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_examples() {
        assert!(craig_identity(&d(&[1, 0]), &d(&[0, 1])).unwrap());
        assert!(!craig_identity(&d(&[1, 1]), &d(&[1, 1])).unwrap());
        assert!(craig_identity(&d(&[1, 0]), &d(&[0, 2])).unwrap());
        let non_hermitian = GaussianRationalMatrix::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        assert!(matches!(craig_identity(&non_hermitian, &d(&[0, 1])), Err(Error::NotHermitian)));
    }

    #[test]
    fn product_examples() {
        assert!(product_zero(&d(&[1, 0]), &d(&[0, 1])).unwrap());
        assert!(!product_zero(&d(&[1, 1]), &d(&[1, 1])).unwrap());
    }

    #[test]
    fn verdict_examples() {
        let v = craig_verdict(&d(&[1, 0]), &d(&[0, 1])).unwrap();
        assert_eq!(v.to_string(), "identity=true product_zero=true rectangle=0,1,0,1");
        let r = v.rectangle_vertices().unwrap();
        assert_eq!(r, [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let hc = v.hull_check.unwrap();
        assert!(hc.box_deviation < 1e-6 && hc.eigenhull_distance < 1e-6);

        let v = craig_verdict(&d(&[1, 1]), &d(&[1, 1])).unwrap();
        assert_eq!(v.to_string(), "identity=false product_zero=false rectangle=none");

        let v = craig_verdict(&d(&[2, 0, 0]), &d(&[0, -1, 3])).unwrap();
        let [a, b, c, e] = v.rectangle.unwrap();
        assert!(a.abs() < 1e-14 && (b - 2.0).abs() < 1e-14 && (c + 1.0).abs() < 1e-14 && (e - 3.0).abs() < 1e-14);
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            for complex in [false, true] {
                let q = rational_unitary(&mut rng, n, complex);
                assert_eq!(q.mul(&q.conj_transpose()).unwrap(), GaussianRationalMatrix::identity(n));
            }
        }
    }

    #[test]
    fn planted_pairs_have_zero_product() {
        for s in 0..12 {
            let (a1, a2) = planted_pair(s, 1 + s as usize % 5);
            assert!(a1.is_hermitian() && a2.is_hermitian());
            assert!(product_zero(&a1, &a2).unwrap());
        }
    }

    #[test]
    fn planted_verdict_box_matches_hulls() {
        let (a1, a2) = planted_pair(7, 4);
        let v = craig_verdict(&a1, &a2).unwrap();
        let hc = v.hull_check.unwrap();
        assert!(hc.box_deviation <= 1e-6, "{hc:?}");
        assert!(hc.eigenhull_distance <= 1e-6, "{hc:?}");
    }

    #[test]
    fn small_batch_agrees() {
        let r = batch_check(6, 6, 4, 100).unwrap();
        assert_eq!(r.instances, 12);
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert!(r.product_zero_count >= 6);
    }
}
