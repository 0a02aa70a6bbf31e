//! Gaussian-rational matrices, the Hermitian splitting `A = A1 + i*A2`, and
//! a floating-point view with a Jacobi eigensolver.

mod eig;
mod json;

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

pub use eig::{eig_hermitian, Eigen, FloatHermitian, FloatPencil};
pub use json::{matrix_from_json, matrix_to_json, pencil_from_json};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, Coeff, GaussianRational};

/// Square complex matrix with exact Gaussian-rational entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRationalMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl GaussianRationalMatrix {
    pub fn new(n: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix size must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, got: entries.len() });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, row: i, cols: r.len() });
            }
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Real integer matrix, handy for fixtures and tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussianRational::from_ints(v, 0)).collect())
                .collect(),
        )
    }

    /// Real rational diagonal matrix.
    pub fn diag(d: &[BigRational]) -> Self {
        let n = d.len();
        let mut m = Self::zero(n);
        for (i, v) in d.iter().enumerate() {
            m.entries[i * n + i] = GaussianRational::real(v.clone());
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![GaussianRational::default(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = GaussianRational::from_ints(1, 0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussianRational]> {
        self.entries.chunks(self.n)
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).conj();
            }
        }
        out
    }

    fn zip(&self, o: &Self, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::SizeMismatch { expected: self.n, got: o.n });
        }
        Ok(Self { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.sub_ref(b))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::SizeMismatch { expected: self.n, got: o.n });
        }
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] = out.entries[i * n + j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|e| e.mul_ref(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coeff::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose()
    }

    /// Exact test `A* A = A A*`.
    pub fn is_normal(&self) -> bool {
        let h = self.conj_transpose();
        let left = h.mul(self).expect("same size");
        let right = self.mul(&h).expect("same size");
        left == right
    }

    /// Nearest-double copy of the entries, row-major.
    pub fn to_c64(&self) -> Vec<Complex64> {
        self.entries.iter().map(GaussianRational::to_c64).collect()
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.n).fold(GaussianRational::default(), |acc, i| acc.add_ref(self.get(i, i)))
    }
}

impl fmt::Display for GaussianRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussianRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussianRationalMatrix({}x{})\n{self}", self.n, self.n)
    }
}

/// The pencil `y0*I + y1*A1 + y2*A2` with `A1`, `A2` exactly Hermitian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianPencil {
    a1: GaussianRationalMatrix,
    a2: GaussianRationalMatrix,
}

impl HermitianPencil {
    pub fn new(a1: GaussianRationalMatrix, a2: GaussianRationalMatrix) -> Result<Self> {
        if a1.n() != a2.n() {
            return Err(Error::SizeMismatch { expected: a1.n(), got: a2.n() });
        }
        if !a1.is_hermitian() || !a2.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        Ok(Self { a1, a2 })
    }

    pub fn n(&self) -> usize {
        self.a1.n()
    }

    pub fn a1(&self) -> &GaussianRationalMatrix {
        &self.a1
    }

    pub fn a2(&self) -> &GaussianRationalMatrix {
        &self.a2
    }

    /// `A = A1 + i*A2`.
    pub fn recombine(&self) -> GaussianRationalMatrix {
        self.a1.add(&self.a2.scale(&GaussianRational::i())).expect("same size")
    }

    /// Both parts vanish, so `F(A)` is the whole chart plane.
    pub fn is_scalar(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    pub fn to_float(&self) -> FloatPencil {
        FloatPencil::new(self.n(), self.a1.to_c64(), self.a2.to_c64())
    }
}

/// Hermitian splitting: `A1 = (A + A*)/2`, `A2 = (A - A*)/(2i)`.
pub fn split(a: &GaussianRationalMatrix) -> HermitianPencil {
    let h = a.conj_transpose();
    let half = GaussianRational::real(rat(1, 2));
    let a1 = a.add(&h).expect("same size").scale(&half);
    // 1/(2i) = -i/2
    let a2 = a.sub(&h).expect("same size").scale(&GaussianRational::new(rat(0, 1), rat(-1, 2)));
    HermitianPencil { a1, a2 }
}

/// `(w* A1 w, w* A2 w)`, the point of `W(A)` generated by the unit vector `w`.
pub fn rank_one_value(a: &GaussianRationalMatrix, w: &[Complex64]) -> Result<[f64; 2]> {
    if w.len() != a.n() {
        return Err(Error::SizeMismatch { expected: a.n(), got: w.len() });
    }
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit(norm));
    }
    let p = split(a).to_float();
    Ok([p.a1().quadratic_form(w), p.a2().quadratic_form(w)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn split_first_example() {
        let p = split(&fixtures::cubic_quartic().matrix);
        assert_eq!(*p.a1(), GaussianRationalMatrix::from_int_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).unwrap());
        assert_eq!(*p.a2(), GaussianRationalMatrix::from_int_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]).unwrap());
    }

    #[test]
    fn split_identity_and_nilpotent() {
        let p = split(&GaussianRationalMatrix::identity(3));
        assert_eq!(*p.a1(), GaussianRationalMatrix::identity(3));
        assert!(p.a2().is_zero());

        let j = GaussianRationalMatrix::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let p = split(&j);
        let half = GaussianRational::real(rat(1, 2));
        assert_eq!(p.a1().get(0, 1), &half);
        assert_eq!(p.a1().get(1, 0), &half);
        assert_eq!(p.a2().get(0, 1), &GaussianRational::new(rat(0, 1), rat(-1, 2)));
        assert_eq!(p.a2().get(1, 0), &GaussianRational::new(rat(0, 1), rat(1, 2)));
        assert_eq!(p.recombine(), j);
    }

    #[test]
    fn normality() {
        assert!(fixtures::polytope().matrix.is_normal());
        assert!(!GaussianRationalMatrix::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap().is_normal());
        let h = GaussianRationalMatrix::from_rows(vec![vec![g(1, 0), g(2, -3)], vec![g(2, 3), g(-1, 0)]]).unwrap();
        assert!(h.is_hermitian() && h.is_normal());
    }

    #[test]
    fn rank_one_values() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let id = GaussianRationalMatrix::identity(2);
        let v = rank_one_value(&id, &[Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-15 && v[1].abs() < 1e-15);

        let e2 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert_eq!(rank_one_value(&fixtures::cubic_quartic().matrix, &e2).unwrap(), [1.0, 0.0]);

        let j = GaussianRationalMatrix::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let v = rank_one_value(&j, &[Complex64::new(s, 0.0), Complex64::new(s, 0.0)]).unwrap();
        assert!((v[0] - 0.5).abs() < 1e-15 && v[1].abs() < 1e-15);

        assert!(matches!(rank_one_value(&j, &[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]), Err(Error::NotUnit(_))));
    }

    #[test]
    fn pencil_rejects_non_hermitian() {
        let j = GaussianRationalMatrix::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        assert!(matches!(HermitianPencil::new(j.clone(), j), Err(Error::NotHermitian)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn split_reconstructs(seed in any::<u64>(), n in 1usize..=5) {
            let a = fixtures::random_matrix(seed, n);
            let p = split(&a);
            prop_assert!(p.a1().is_hermitian());
            prop_assert!(p.a2().is_hermitian());
            prop_assert_eq!(p.recombine(), a);
        }
    }
}
