//! Multivariate GCD over the rationals and squarefree decomposition.
//!
//! After a shear that makes the first argument monic in one variable, the
//! GCD is computed at integer specializations of the other variables by
//! univariate Euclid, interpolated, and checked by exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, TriPoly};
use super::univariate::UPoly;
use crate::error::{Error, Result};

/// Positive-or-negative rational `c` such that `f / c` has coprime integer
/// coefficients and a positive graded-lex leading coefficient.
pub fn content(f: &TriPoly) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return BigRational::one();
    }
    let c = BigRational::new(num, den);
    match f.leading_term() {
        Some((_, lc)) if lc.is_negative() => -c,
        _ => c,
    }
}

/// Primitive form: integer coefficients with content 1 and positive leading
/// coefficient under graded-lex. The zero polynomial maps to itself.
pub fn primitive(f: &TriPoly) -> TriPoly {
    if f.is_zero() {
        return f.clone();
    }
    f.scale(&(BigRational::one() / content(f)))
}

/// Main variable for the shear.
const MAIN: usize = 1;

/// Deterministic shear offsets `(s0, s2)` tried in turn.
fn shear_offsets(k: i64) -> [i64; 2] {
    [(k % 7) - 3 + k / 7, 2 * (k % 5) - 4 + k / 5]
}

/// `v_j -> v_j + s_j * v_MAIN` for `j != MAIN`.
fn shear(f: &TriPoly, s: [i64; 2], sign: i64) -> TriPoly {
    let vars = f.vars();
    let m = TriPoly::var(vars, MAIN);
    let lin = |v: usize, c: i64| &TriPoly::var(vars, v) + &m.scale(&BigRational::from_integer((sign * c).into()));
    f.compose(&[lin(0, s[0]), m.clone(), lin(2, s[1])]).expect("same variables")
}

/// Shear offsets after which `f` has degree in `MAIN` equal to its total degree.
fn monic_shear(f: &TriPoly) -> [i64; 2] {
    let d = f.total_degree().expect("nonzero");
    (0..)
        .map(shear_offsets)
        .find(|&s| shear(f, s, 1).degree_in(MAIN) == d)
        .expect("a generic shear exists")
}

fn dehomogenize(f: &TriPoly) -> TriPoly {
    TriPoly::from_terms(f.vars(), f.terms().map(|(m, c)| (Monomial([0, m.0[1], m.0[2]]), c.clone())))
}

fn homogenize(f: &TriPoly) -> TriPoly {
    let d = f.total_degree().unwrap_or(0);
    TriPoly::from_terms(f.vars(), f.terms().map(|(m, c)| (Monomial([d - m.degree(), m.0[1], m.0[2]]), c.clone())))
}

/// Prepared coordinates for a computation driven by `f`.
struct Frame {
    shear: [i64; 2],
    homogeneous: bool,
}

impl Frame {
    fn new(f: &TriPoly, homogeneous: bool) -> Self {
        Frame { shear: monic_shear(f), homogeneous }
    }

    fn free(&self) -> &'static [usize] {
        if self.homogeneous { &[2] } else { &[0, 2] }
    }

    fn enter(&self, f: &TriPoly) -> TriPoly {
        let g = shear(f, self.shear, 1);
        if self.homogeneous { dehomogenize(&g) } else { g }
    }

    fn leave(&self, f: &TriPoly) -> TriPoly {
        let g = if self.homogeneous { homogenize(f) } else { f.clone() };
        primitive(&shear(&g, self.shear, -1))
    }
}

fn lead_coeff(f: &TriPoly, v: usize) -> BigRational {
    let d = f.degree_in(v);
    f.coeff(var_power(v, d))
}

fn monic_in(f: &TriPoly, v: usize) -> TriPoly {
    f.scale(&(BigRational::one() / lead_coeff(f, v)))
}

fn var_power(v: usize, k: u32) -> Monomial {
    let mut m = Monomial::ONE;
    m.0[v] = k;
    m
}

/// `f` with `v_z = a`.
fn specialize(f: &TriPoly, z: usize, a: &BigRational) -> TriPoly {
    let mut powers = vec![BigRational::one()];
    for k in 1..=f.degree_in(z) as usize {
        let next = &powers[k - 1] * a;
        powers.push(next);
    }
    TriPoly::from_terms(
        f.vars(),
        f.terms().map(|(m, c)| {
            let mut r = *m;
            let k = std::mem::replace(&mut r.0[z], 0);
            (r, c * &powers[k as usize])
        }),
    )
}

/// Power-basis coefficients of the interpolant through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form.
    let mut out = vec![BigRational::zero(); n];
    out[0] = dd[n - 1].clone();
    for i in (0..n - 1).rev() {
        for k in (1..n).rev() {
            out[k] = &out[k - 1] - &(&xs[i] * &out[k]);
        }
        out[0] = &dd[i] - &(&xs[i] * &out[0]);
    }
    out
}

fn to_upoly(f: &TriPoly, v: usize) -> UPoly {
    let mut c = vec![BigRational::zero(); f.degree_in(v) as usize + 1];
    for (m, x) in f.terms() {
        c[m.0[v] as usize] = x.clone();
    }
    UPoly::new(c)
}

fn from_upoly(u: &UPoly, vars: super::poly::Vars, v: usize) -> TriPoly {
    TriPoly::from_terms(vars, u.coeffs().iter().enumerate().map(|(k, c)| (var_power(v, k as u32), c.clone())))
}

/// GCD of `f` and `g`, monic in `MAIN`, where `f` has a constant leading
/// coefficient in `MAIN` and `free` lists the other variables present.
fn gcd_monic(f: &TriPoly, g: &TriPoly, free: &[usize]) -> TriPoly {
    let vars = f.vars();
    if g.is_zero() {
        return monic_in(f, MAIN);
    }
    let Some((&z, rest)) = free.split_first() else {
        return from_upoly(&to_upoly(f, MAIN).gcd(&to_upoly(g, MAIN)), vars, MAIN);
    };
    let mut best = u32::MAX;
    let mut pts: Vec<(BigRational, TriPoly)> = Vec::new();
    let cap = 4 * (f.total_degree().unwrap_or(0) as usize + 1) + 64;
    for i in 0..cap as i64 {
        let a = BigRational::from_integer(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }.into());
        let h = gcd_monic(&specialize(f, z, &a), &specialize(g, z, &a), rest);
        let d = h.degree_in(MAIN);
        if d == 0 {
            return TriPoly::one(vars);
        }
        if d < best {
            best = d;
            pts.clear();
        }
        if d > best {
            continue;
        }
        pts.push((a, h));
        if pts.len() < best as usize + 1 {
            continue;
        }
        let xs: Vec<BigRational> = pts.iter().map(|p| p.0.clone()).collect();
        let mut monos: Vec<Monomial> = pts.iter().flat_map(|p| p.1.terms().map(|t| *t.0)).collect();
        monos.sort();
        monos.dedup();
        let mut terms = Vec::new();
        for m in monos {
            let ys: Vec<BigRational> = pts.iter().map(|p| p.1.coeff(m)).collect();
            for (k, c) in interpolate(&xs, &ys).into_iter().enumerate() {
                let mut mk = m;
                mk.0[z] = k as u32;
                terms.push((mk, c));
            }
        }
        let h = TriPoly::from_terms(vars, terms);
        if f.div_exact(&h).is_ok() && g.div_exact(&h).is_ok() {
            return h;
        }
    }
    panic!("gcd interpolation did not stabilize");
}

/// Greatest common divisor, normalized to primitive form. `gcd(0, 0) = 0`.
///
/// Panics if the two polynomials live in different variable triples.
pub fn gcd(f: &TriPoly, g: &TriPoly) -> TriPoly {
    assert_eq!(f.vars(), g.vars(), "gcd of polynomials in different variables");
    if f.is_zero() || g.is_zero() {
        return primitive(&(f + g));
    }
    if f.is_constant() || g.is_constant() {
        return TriPoly::one(f.vars());
    }
    let frame = Frame::new(f, f.is_homogeneous() && g.is_homogeneous());
    frame.leave(&gcd_monic(&frame.enter(f), &frame.enter(g), frame.free()))
}

/// Squarefree part `f / gcd(f, ∂f/∂v0, ∂f/∂v1, ∂f/∂v2)` in primitive form.
pub fn gcd_squarefree(f: &TriPoly) -> Result<TriPoly> {
    let parts = squarefree_decomposition(f)?;
    Ok(primitive(&parts.iter().fold(TriPoly::one(f.vars()), |acc, (g, _)| &acc * g)))
}

pub fn is_squarefree(f: &TriPoly) -> bool {
    !f.is_zero() && squarefree_decomposition(f).is_ok_and(|parts| parts.iter().all(|p| p.1 == 1))
}

/// Decomposes `f = c * prod_k f_k^k` with each `f_k` squarefree, primitive and
/// pairwise coprime. Returns the nonconstant `(f_k, k)` in increasing `k`.
pub fn squarefree_decomposition(f: &TriPoly) -> Result<Vec<(TriPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let frame = Frame::new(f, f.is_homogeneous());
    let free = frame.free();
    let g = frame.enter(f);
    // Yun's algorithm in the main variable; every factor involves it after the shear.
    let d = |p: &TriPoly| p.derivative(MAIN);
    let a0 = gcd_monic(&g, &d(&g), free);
    let mut b = g.div_exact(&a0)?;
    let mut c = d(&g).div_exact(&a0)?;
    let mut dd = &c - &d(&b);
    let mut out = Vec::new();
    let mut k = 1;
    while !b.is_constant() {
        let y = gcd_monic(&b, &dd, free);
        b = b.div_exact(&y)?;
        c = dd.div_exact(&y)?;
        if !y.is_constant() {
            out.push((frame.leave(&y), k));
        }
        dd = &c - &d(&b);
        k += 1;
    }
    Ok(out)
}
