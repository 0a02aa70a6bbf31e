use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::coeff::{rat_to_f64, Coeff, GaussianRational};
use crate::error::{Error, Result};

/// Which ordered variable triple a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vars {
    /// `(y0, y1, y2)`: pencil coordinates.
    Y,
    /// `(x0, x1, x2)`: dual coordinates.
    X,
}

impl Vars {
    pub fn letter(self) -> char {
        match self {
            Vars::Y => 'y',
            Vars::X => 'x',
        }
    }

    pub fn dual(self) -> Vars {
        match self {
            Vars::Y => Vars::X,
            Vars::X => Vars::Y,
        }
    }
}

/// Exponent triple, ordered graded-lexicographically with `v0 > v1 > v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        Monomial([other.0[0] - self.0[0], other.0[1] - self.0[1], other.0[2] - self.0[2]])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.0).cmp(&(other.degree(), other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in three variables.
///
/// Zero coefficients are never stored. An optional declared homogeneous degree
/// is validated on declaration and carried through `+`, `-` and `*`.
#[derive(Clone)]
pub struct Poly<C> {
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
    homogeneous: Option<u32>,
}

pub type TriPoly = Poly<BigRational>;
pub type GaussPoly = Poly<GaussianRational>;

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: Vars) -> Self {
        Self { vars, terms: BTreeMap::new(), homogeneous: None }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        Self::monomial(vars, Monomial::ONE, c)
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(i), C::one())
    }

    pub fn monomial(vars: Vars, m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { vars, terms, homogeneous: None }
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(vars: Vars, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add_ref(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn with_vars(mut self, vars: Vars) -> Self {
        self.vars = vars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(Monomial, &C)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Smallest exponent of variable `v` over all terms.
    pub fn order_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).min().unwrap_or(0)
    }

    pub fn depends_on(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Declares (and checks) that every term has degree `d`.
    pub fn declare_homogeneous(mut self, d: u32) -> Result<Self> {
        if self.terms.keys().any(|m| m.degree() != d) {
            return Err(Error::NotHomogeneous(d));
        }
        self.homogeneous = Some(d);
        Ok(self)
    }

    pub fn declared_degree(&self) -> Option<u32> {
        self.homogeneous
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch { left: self.vars.letter(), right: other.vars.letter() });
        }
        Ok(())
    }

    fn additive_flag(&self, other: &Self) -> Option<u32> {
        match (self.homogeneous, other.homogeneous) {
            (Some(a), Some(b)) if a == b => Some(a),
            (Some(a), None) if other.is_zero() => Some(a),
            (None, Some(b)) if self.is_zero() => Some(b),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out.homogeneous = self.additive_flag(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &c.neg_ref());
        }
        out.homogeneous = self.additive_flag(other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(*mb), &ca.mul_ref(cb));
            }
        }
        out.homogeneous = match (self.homogeneous, other.homogeneous) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul_ref(c))).collect(),
            homogeneous: self.homogeneous,
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.mul_ref(c))).collect(),
            homogeneous: self.homogeneous.map(|d| d + m.degree()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.vars);
        if self.homogeneous.is_some() {
            out.homogeneous = Some(0);
        }
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[v] -= 1;
            out.add_term(dm, &c.mul_ref(&C::from_i64(e as i64)));
        }
        out.homogeneous = self.homogeneous.and_then(|d| d.checked_sub(1));
        out
    }

    pub fn gradient(&self) -> [Self; 3] {
        [self.derivative(0), self.derivative(1), self.derivative(2)]
    }

    pub fn eval(&self, point: &[C; 3]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                for _ in 0..m.0[v] {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitutes a polynomial for each variable.
    pub fn compose(&self, subs: &[Self; 3]) -> Result<Self> {
        for s in subs {
            self.check_vars(s)?;
        }
        let mut powers: [Vec<Self>; 3] = Default::default();
        for v in 0..3 {
            powers[v].push(Self::one(self.vars));
            for k in 1..=self.degree_in(v) as usize {
                let next = &powers[v][k - 1] * &subs[v];
                powers[v].push(next);
            }
        }
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let t = &(&powers[0][m.0[0] as usize] * &powers[1][m.0[1] as usize])
                * &powers[2][m.0[2] as usize];
            for (tm, tc) in &t.terms {
                out.add_term(*tm, &tc.mul_ref(c));
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroPolynomial)?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return Err(Error::InexactDivision);
            }
            let qm = lm.quotient_of(rm);
            let qc = rc.div_ref(&lc);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(qm), &dc.mul_ref(&qc).neg_ref());
            }
            quot.add_term(qm, &qc);
        }
        quot.homogeneous = match (self.homogeneous, divisor.homogeneous) {
            (Some(a), Some(b)) if a >= b => Some(a - b),
            _ => None,
        };
        Ok(quot)
    }

    /// Leaves monomials unchanged and maps every coefficient.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out.homogeneous = self.homogeneous;
        out
    }
}

impl TriPoly {
    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, rat_to_f64(c))).collect(),
        }
    }

    pub fn eval_f64(&self, point: &[f64; 3]) -> f64 {
        self.to_float().eval(point)
    }
}

impl GaussPoly {
    /// Splits into real and imaginary parts.
    pub fn split_re_im(&self) -> (TriPoly, TriPoly) {
        (self.map_coeffs(|c| c.re.clone()), self.map_coeffs(|c| c.im.clone()))
    }
}

/// Floating-point snapshot of a [`TriPoly`] for repeated numeric evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    terms: Vec<(Monomial, f64)>,
}

impl FloatPoly {
    pub fn eval(&self, x: &[f64; 3]) -> f64 {
        self.terms.iter().map(|(m, c)| c * monomial_f64(*m, x)).sum()
    }

    /// Largest absolute monomial contribution `|c_m * x^m|` at `x`.
    pub fn max_term_magnitude(&self, x: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| (c * monomial_f64(*m, x)).abs())
            .fold(0.0, f64::max)
    }

    /// `|f(x)| / max_m |c_m x^m|`, zero when every term vanishes.
    pub fn relative_value(&self, x: &[f64; 3]) -> f64 {
        let scale = self.max_term_magnitude(x);
        if scale == 0.0 {
            0.0
        } else {
            self.eval(x).abs() / scale
        }
    }
}

fn monomial_f64(m: Monomial, x: &[f64; 3]) -> f64 {
    x[0].powi(m.0[0] as i32) * x[1].powi(m.0[1] as i32) * x[2].powi(m.0[2] as i32)
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<C: Coeff>(f: &Poly<C>, g: &Poly<C>, op: ArithOp) -> Result<Poly<C>> {
    match op {
        ArithOp::Add => f.checked_add(g),
        ArithOp::Sub => f.checked_sub(g),
        ArithOp::Mul => f.checked_mul(g),
    }
}

// Operator forms panic on a variable mismatch; use the `checked_*` methods
// where the triples are not known to agree.
impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        self.checked_add(rhs).expect("polynomial variable mismatch")
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        self.checked_sub(rhs).expect("polynomial variable mismatch")
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        self.checked_mul(rhs).expect("polynomial variable mismatch")
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.scale(&C::one().neg_ref())
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly({self})")
    }
}

impl fmt::Debug for GaussPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.split_re_im();
        write!(f, "GaussPoly({re} + i*({im}))")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, rat};

    fn y(s: &str) -> TriPoly {
        parse_poly(s, Vars::Y).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let f = y("y0 + y1");
        let g = y("y0 - y1");
        assert_eq!(&f * &g, y("y0^2 - y1^2"));
    }

    #[test]
    fn additive_identity() {
        let f = y("3*y0*y2 - 1/2*y1^2");
        assert_eq!(&f + &TriPoly::zero(Vars::Y), f);
    }

    #[test]
    fn cubic_of_first_example_expands() {
        let p = &(&y("y0 - y1") * &y("y0 + y1").pow(2)) - &y("y0*y2^2");
        assert_eq!(p, y("y0^3 + y0^2*y1 - y0*y1^2 - y1^3 - y0*y2^2"));
        assert_eq!(p.eval(&[rat(1, 1), rat(1, 1), rat(0, 1)]), rat(0, 1));
        assert_eq!(p.eval(&[rat(1, 1), rat(0, 1), rat(0, 1)]), rat(1, 1));
        assert_eq!(p.eval(&[rat(0, 1), rat(0, 1), rat(0, 1)]), rat(0, 1));
    }

    #[test]
    fn mixing_variable_triples_is_an_error() {
        let f = y("y0");
        let g = parse_poly("x0", Vars::X).unwrap();
        assert!(matches!(poly_arith(&f, &g, ArithOp::Add), Err(Error::VarMismatch { .. })));
    }

    #[test]
    fn grlex_order() {
        let a = Monomial([2, 0, 2]);
        let b = Monomial([1, 3, 0]);
        let c = Monomial([0, 0, 5]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn homogeneous_flag_is_validated() {
        assert!(y("y0^2 + y1*y2").declare_homogeneous(2).is_ok());
        assert!(matches!(y("y0^2 + y1").declare_homogeneous(2), Err(Error::NotHomogeneous(2))));
        let f = y("y0 + y1").declare_homogeneous(1).unwrap();
        assert_eq!((&f * &f).declared_degree(), Some(2));
    }

    #[test]
    fn exact_division() {
        let f = y("y0^3 - y1^3");
        let g = y("y0 - y1");
        assert_eq!(f.div_exact(&g).unwrap(), y("y0^2 + y0*y1 + y1^2"));
        assert!(matches!(f.div_exact(&y("y0 + y2")), Err(Error::InexactDivision)));
    }

    #[test]
    fn compose_substitutes() {
        let f = y("y0^2 - y1");
        let subs = [y("y1 + y2"), y("y0"), y("y2")];
        assert_eq!(f.compose(&subs).unwrap(), y("y1^2 + 2*y1*y2 + y2^2 - y0"));
    }
}
