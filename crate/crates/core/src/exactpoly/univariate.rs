//! Univariate rational polynomials: Sturm sequences, exact real-root
//! isolation, and an Aberth iteration for the complex roots.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::rat_to_f64;
use super::poly::TriPoly;

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    /// Restriction of a trivariate polynomial to the line `base + t*dir`.
    pub fn restrict(p: &TriPoly, base: &[BigRational; 3], dir: &[BigRational; 3]) -> Self {
        // Build each linear form base[v] + t*dir[v] and expand monomial by monomial.
        let lin = |v: usize| UPoly::new(vec![base[v].clone(), dir[v].clone()]);
        let forms = [lin(0), lin(1), lin(2)];
        let mut acc = UPoly::zero();
        for (m, c) in p.terms() {
            let mut t = UPoly::new(vec![c.clone()]);
            for (v, form) in forms.iter().enumerate() {
                for _ in 0..m.0[v] {
                    t = t.mul(form);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dl = d.lead();
        let dd = d.degree();
        if r.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        UPoly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: `self = c * prod_k f_k^k`.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = c.add(&b.derivative().scale(&-BigRational::one()));
        let mut k = 1;
        while b.degree() > 0 {
            let a = b.gcd(&dd);
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            if a.degree() > 0 {
                out.push((a, k));
            }
            dd = c.add(&b.derivative().scale(&-BigRational::one()));
            k += 1;
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        UPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(r.scale(&-BigRational::one()));
        }
        seq.pop();
        seq
    }

    /// Number of distinct real roots.
    pub fn count_distinct_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let at_pos = sign_changes(seq.iter().map(|p| sign_of(&p.lead())));
        let at_neg = sign_changes(seq.iter().map(|p| {
            let s = sign_of(&p.lead());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }));
        at_neg.saturating_sub(at_pos)
    }

    /// Number of real roots counted with multiplicity.
    pub fn count_real_roots_with_multiplicity(&self) -> usize {
        self.squarefree_decomposition()
            .iter()
            .map(|(f, k)| f.count_distinct_real_roots() * k)
            .sum()
    }

    /// Distinct real roots, isolated exactly and refined to f64 precision.
    pub fn real_roots(&self) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let sq = self.div_rem(&self.gcd(&self.derivative())).0;
        let seq = sq.sturm_sequence();
        let bound = cauchy_bound(&sq);
        let mut intervals = Vec::new();
        let lo = -bound.clone();
        let total = variations_at(&seq, &lo) - variations_at(&seq, &bound);
        isolate(&sq, &seq, lo, bound, total, &mut intervals);
        let mut roots: Vec<f64> = intervals.into_iter().map(|(a, b)| refine(&sq, a, b)).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        roots
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_changes<I: Iterator<Item = i32>>(signs: I) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn variations_at(seq: &[UPoly], t: &BigRational) -> usize {
    sign_changes(seq.iter().map(|p| sign_of(&p.eval(t))))
}

fn cauchy_bound(p: &UPoly) -> BigRational {
    let l = p.lead().abs();
    let m = p.0[..p.0.len() - 1].iter().map(|c| c.abs() / &l).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + BigRational::one()
}

/// Splits `(lo, hi]` until every piece holds one root. `p` is squarefree and
/// `p(lo) != 0`.
fn isolate(
    p: &UPoly,
    seq: &[UPoly],
    lo: BigRational,
    hi: BigRational,
    count: usize,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((lo, hi));
        return;
    }
    let two = BigRational::from_integer(2.into());
    let mut mid = (&lo + &hi) / &two;
    let mut k = 3i64;
    while p.eval(&mid).is_zero() {
        // Nudge off an exact root; the root stays inside one of the halves.
        mid = &lo + (&hi - &lo) * BigRational::new((k - 1).into(), k.into());
        k += 1;
    }
    let vm = variations_at(seq, &mid);
    let left = variations_at(seq, &lo) - vm;
    let right = vm - variations_at(seq, &hi);
    isolate(p, seq, lo, mid.clone(), left, out);
    isolate(p, seq, mid, hi, right, out);
}

/// Bisects an isolating interval `(lo, hi]` of a simple root.
fn refine(p: &UPoly, mut lo: BigRational, mut hi: BigRational) -> f64 {
    if p.eval(&hi).is_zero() {
        return rat_to_f64(&hi);
    }
    // The relative stopping rule below never fires at an exact zero root.
    if lo.is_negative() && hi.is_positive() && p.0[0].is_zero() {
        return 0.0;
    }
    let two = BigRational::from_integer(2.into());
    let s_hi = sign_of(&p.eval(&hi));
    for _ in 0..200 {
        let (a, b) = (rat_to_f64(&lo), rat_to_f64(&hi));
        if a == b || (b - a).abs() <= f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let s = sign_of(&p.eval(&mid));
        if s == 0 {
            return rat_to_f64(&mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    rat_to_f64(&((&lo + &hi) / two))
}

/// All complex roots of a polynomial with f64 coefficients (ascending order)
/// by the Aberth–Ehrlich iteration.
pub fn aberth_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last().is_some_and(|&x| x == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let a: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x / lead, 0.0)).collect();
    let radius = 1.0 + a[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for coef in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + coef;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn up(cs: &[i64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn sturm_counts() {
        // (t-1)(t+2)(t^2+1)
        let p = up(&[-2, 1, 1]).mul(&up(&[1, 0, 1]));
        assert_eq!(p.count_distinct_real_roots(), 2);
        let roots = p.real_roots();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 2.0).abs() < 1e-15 && (roots[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn multiplicity_counting() {
        // (t+1)^3 (t-2)^2
        let mut p = up(&[1]);
        for _ in 0..3 {
            p = p.mul(&up(&[1, 1]));
        }
        for _ in 0..2 {
            p = p.mul(&up(&[-2, 1]));
        }
        assert_eq!(p.count_distinct_real_roots(), 2);
        assert_eq!(p.count_real_roots_with_multiplicity(), 5);
        let sq = p.squarefree_decomposition();
        assert_eq!(sq, vec![(up(&[-2, 1]), 2), (up(&[1, 1]), 3)]);
    }

    #[test]
    fn irrational_roots_are_refined() {
        let p = up(&[-2, 0, 1]);
        let r = p.real_roots();
        assert!((r[1] - 2f64.sqrt()).abs() < 4e-16);
        assert!((r[0] + 2f64.sqrt()).abs() < 4e-16);
    }

    #[test]
    fn aberth_finds_complex_pair() {
        let roots = aberth_roots(&[1.0, 0.0, 1.0]);
        let mut ims: Vec<f64> = roots.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 1.0).abs() < 1e-12 && (ims[1] - 1.0).abs() < 1e-12);
    }
}
