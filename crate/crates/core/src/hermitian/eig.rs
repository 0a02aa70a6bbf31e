use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;

use super::GaussianRationalMatrix;
use crate::error::{Error, Result};

const SWEEP_CAP: usize = 60;
const OFF_TOL: f64 = 1e-13;

/// Floating-point Hermitian matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatHermitian {
    n: usize,
    data: Vec<Complex64>,
    source_hash: Option<u64>,
}

impl FloatHermitian {
    /// Nearest-double view of an exactly Hermitian matrix.
    pub fn from_exact(m: &GaussianRationalMatrix) -> Result<Self> {
        if !m.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        let mut h = DefaultHasher::new();
        m.hash(&mut h);
        let mut out = Self::from_data(m.n(), m.to_c64());
        out.source_hash = Some(h.finish());
        Ok(out)
    }

    /// Symmetrizes `(H + H*)/2`, so the result is Hermitian to the last bit.
    pub fn from_data(n: usize, mut data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n, "data length must be n*n");
        for i in 0..n {
            data[i * n + i].im = 0.0;
            for j in i + 1..n {
                let avg = (data[i * n + j] + data[j * n + i].conj()) * 0.5;
                data[i * n + j] = avg;
                data[j * n + i] = avg.conj();
            }
        }
        Self { n, data, source_hash: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn source_hash(&self) -> Option<u64> {
        self.source_hash
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.data.chunks(self.n).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `Re(w* H w)`; the imaginary part vanishes up to rounding.
    pub fn quadratic_form(&self, w: &[Complex64]) -> f64 {
        let hw = self.matvec(w);
        w.iter().zip(&hw).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    }

    /// `alpha*self + beta*other`.
    pub fn lin_comb(&self, alpha: f64, other: &Self, beta: f64) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * alpha + b * beta).collect();
        Self::from_data(self.n, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, data, source_hash: None }
    }
}

/// Floating-point view of a Hermitian pencil.
#[derive(Clone, Debug)]
pub struct FloatPencil {
    a1: FloatHermitian,
    a2: FloatHermitian,
}

impl FloatPencil {
    pub fn new(n: usize, a1: Vec<Complex64>, a2: Vec<Complex64>) -> Self {
        Self { a1: FloatHermitian::from_data(n, a1), a2: FloatHermitian::from_data(n, a2) }
    }

    pub fn n(&self) -> usize {
        self.a1.n
    }

    pub fn a1(&self) -> &FloatHermitian {
        &self.a1
    }

    pub fn a2(&self) -> &FloatHermitian {
        &self.a2
    }

    /// `c1*A1 + c2*A2`.
    pub fn combination(&self, c1: f64, c2: f64) -> FloatHermitian {
        self.a1.lin_comb(c1, &self.a2, c2)
    }

    /// Pencil of `A + c*I`: `A1` shifts by `c`, `A2` is unchanged.
    pub fn translated(&self, c: f64) -> Self {
        Self { a1: self.a1.lin_comb(1.0, &FloatHermitian::identity(self.n()), c), a2: self.a2.clone() }
    }

    /// `F(1, y1, y2) = I + y1*A1 + y2*A2`.
    pub fn lmi_matrix(&self, y1: f64, y2: f64) -> FloatHermitian {
        let mut m = self.combination(y1, y2);
        for i in 0..m.n {
            m.data[i * m.n + i] += 1.0;
        }
        m
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl Eigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("nonempty spectrum")
    }
}

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius mass is below
/// `1e-13 * ||H||_F`; gives up after 60 sweeps.
pub fn eig_hermitian(h: &FloatHermitian) -> Result<Eigen> {
    let n = h.n;
    let mut a = h.data.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let scale = h.frobenius_norm();
    let off = |a: &[Complex64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) > OFF_TOL * scale {
        if sweeps == SWEEP_CAP {
            return Err(Error::NoConvergence { sweeps, off: off(&a) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    Ok(Eigen {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors: order.iter().map(|&k| (0..n).map(|i| v[i * n + k]).collect()).collect(),
    })
}

/// Annihilates `a[p][q]` with `J = diag(1, e^{-i phi}) * R(theta)` on the
/// `(p, q)` plane: `a <- J* a J`, `v <- v J`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    if r < f64::EPSILON * f64::EPSILON * (app.abs() + aqq.abs()) {
        a[p * n + q] = Complex64::new(0.0, 0.0);
        a[q * n + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    for k in 0..n {
        let (akp, akq) = (a[k * n + p], a[k * n + q]);
        a[k * n + p] = akp * jpp + akq * jqp;
        a[k * n + q] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[p * n + k], a[q * n + k]);
        a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
        a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
        v[k * n + p] = vkp * jpp + vkq * jqp;
        v[k * n + q] = vkp * jpq + vkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hermitian::split;
    use proptest::prelude::*;

    fn real(n: usize, vals: &[f64]) -> FloatHermitian {
        FloatHermitian::from_data(n, vals.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn two_by_two_swap() {
        let e = eig_hermitian(&real(2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_close(&e.values, &[-1.0, 1.0], 1e-15);
    }

    #[test]
    fn first_example_real_part() {
        let a1 = FloatHermitian::from_exact(split(&fixtures::cubic_quartic().matrix).a1()).unwrap();
        let e = eig_hermitian(&a1).unwrap();
        assert_close(&e.values, &[-1.0, 1.0, 1.0], 1e-15);
        assert!(a1.source_hash().is_some());
    }

    #[test]
    fn diagonal_is_sorted() {
        let e = eig_hermitian(&real(3, &[3.0, 0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.5])).unwrap();
        assert_close(&e.values, &[-2.0, 0.5, 3.0], 0.0);
    }

    #[test]
    fn zero_matrix() {
        let e = eig_hermitian(&real(2, &[0.0; 4])).unwrap();
        assert_eq!(e.values, vec![0.0, 0.0]);
    }

    #[test]
    fn complex_phase_entries() {
        // [[0, -i/2], [i/2, 0]] has eigenvalues -1/2, 1/2.
        let h = FloatHermitian::from_data(
            2,
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -0.5), Complex64::new(0.0, 0.5), Complex64::new(0.0, 0.0)],
        );
        let e = eig_hermitian(&h).unwrap();
        assert_close(&e.values, &[-0.5, 0.5], 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn residual_orthonormality_trace(seed in any::<u64>(), n in 1usize..=8) {
            let a = fixtures::random_matrix(seed, n);
            let p = split(&a).to_float();
            let h = p.combination(0.3, -1.7);
            let e = eig_hermitian(&h).unwrap();
            let norm = h.frobenius_norm().max(f64::MIN_POSITIVE);
            for (lam, vec) in e.values.iter().zip(&e.vectors) {
                let hv = h.matvec(vec);
                let res: f64 = hv.iter().zip(vec).map(|(x, y)| (x - y * lam).norm_sqr()).sum::<f64>().sqrt();
                prop_assert!(res <= 1e-12 * norm, "residual {}", res);
            }
            for i in 0..n {
                for j in 0..n {
                    let dot: Complex64 = e.vectors[i].iter().zip(&e.vectors[j]).map(|(x, y)| x.conj() * y).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot - want).norm() <= 1e-10);
                }
            }
            let trace: f64 = (0..n).map(|i| h.get(i, i).re).sum();
            prop_assert!((trace - e.values.iter().sum::<f64>()).abs() <= 1e-10 * norm);
        }
    }
}
