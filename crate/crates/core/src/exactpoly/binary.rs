//! Binary forms with polynomial coefficients, resultants and discriminants.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::coeff::Coeff;
use super::det::det_poly_matrix;
use super::poly::{TriPoly, Vars};
use crate::error::{Error, Result};

/// A form `sum_i c[i] * z^(d-i) * w^i` of formal degree `d`.
///
/// The coefficients are trivariate polynomials in some other variable triple.
/// The formal degree is fixed by the coefficient list length; the leading
/// coefficient `c[0]` and trailing coefficient `c[d]` may both be zero.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    coeffs: Vec<TriPoly>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<TriPoly>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidArgument("binary form needs at least one coefficient".into()));
        };
        let vars = first.vars();
        if let Some(bad) = coeffs.iter().find(|c| c.vars() != vars) {
            return Err(Error::VarMismatch { left: vars.letter(), right: bad.vars().letter() });
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TriPoly] {
        &self.coeffs
    }

    pub fn coeff_vars(&self) -> Vars {
        self.coeffs[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TriPoly::is_zero)
    }

    /// `∂/∂z`, formal degree `d - 1`.
    pub fn derivative_z(&self) -> BinaryForm {
        let d = self.degree();
        let coeffs = (0..d)
            .map(|i| self.coeffs[i].scale(&BigRational::from_i64((d - i) as i64)))
            .collect();
        BinaryForm { coeffs }
    }

    /// `∂/∂w`, formal degree `d - 1`.
    pub fn derivative_w(&self) -> BinaryForm {
        let d = self.degree();
        let coeffs = (1..=d)
            .map(|i| self.coeffs[i].scale(&BigRational::from_i64(i as i64)))
            .collect();
        BinaryForm { coeffs }
    }

    /// Substitutes `w -> w + t*z`.
    pub fn shear(&self, t: i64) -> BinaryForm {
        let d = self.degree();
        let vars = self.coeff_vars();
        let mut out = vec![TriPoly::zero(vars); d + 1];
        // c_i z^(d-i) (w + t z)^i = c_i sum_k C(i,k) t^(i-k) z^(d-k) w^k
        for (i, c) in self.coeffs.iter().enumerate() {
            for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
                let factor = binomial(BigInt::from(i), BigInt::from(k)) * BigInt::from(t).pow((i - k) as u32);
                *slot = &*slot + &c.scale(&BigRational::from_integer(factor));
            }
        }
        BinaryForm { coeffs: out }
    }

    /// Evaluates the coefficients at a point, giving a rational binary form.
    pub fn eval_coeffs(&self, point: &[BigRational; 3]) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }
}

/// Sylvester resultant of two binary forms.
///
/// Row order: the coefficients of `f` fill the first `deg g` rows (shifted one
/// column per row), then the coefficients of `g` fill `deg f` rows. With this
/// order `res(z - a*w, z - b*w) = a - b`.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<TriPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, n) = (f.degree(), g.degree());
    if m == 0 || n == 0 {
        return Err(Error::FormDegree { degree: m.min(n), min: 1 });
    }
    if f.coeff_vars() != g.coeff_vars() {
        return Err(Error::VarMismatch { left: f.coeff_vars().letter(), right: g.coeff_vars().letter() });
    }
    let vars = f.coeff_vars();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![TriPoly::zero(vars); size];
        for (i, c) in f.coeffs.iter().enumerate() {
            row[r + i] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![TriPoly::zero(vars); size];
        for (i, c) in g.coeffs.iter().enumerate() {
            row[r + i] = c.clone();
        }
        rows.push(row);
    }
    det_poly_matrix(&rows)
}

/// Discriminant of a binary form of degree `d ≥ 2`, normalized so that
/// `disc(a z² + b zw + c w²) = b² - 4ac`:
/// `disc(g) = (-1)^(d(d-1)/2) * res(g, ∂g/∂z) / a0`.
///
/// When the leading coefficient `a0` is the zero polynomial the form is first
/// sheared (`w -> w + t z`), which leaves the discriminant unchanged.
pub fn discriminant_binary(g: &BinaryForm) -> Result<TriPoly> {
    let d = g.degree();
    if d < 2 {
        return Err(Error::FormDegree { degree: d, min: 2 });
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut form = g.clone();
    let mut t = 1;
    while form.coeffs[0].is_zero() {
        form = g.shear(t);
        t += 1;
    }
    let r = resultant(&form, &form.derivative_z())?;
    let q = r.div_exact(&form.coeffs[0])?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -&q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{gcd, parse_poly};
    use proptest::prelude::*;

    fn x(s: &str) -> TriPoly {
        parse_poly(s, Vars::X).unwrap()
    }

    fn form(cs: &[&str]) -> BinaryForm {
        BinaryForm::new(cs.iter().map(|s| x(s)).collect()).unwrap()
    }

    #[test]
    fn linear_resultant_sign() {
        let f = form(&["1", "-x1"]);
        let g = form(&["1", "-x2"]);
        assert_eq!(resultant(&f, &g).unwrap(), x("x1 - x2"));
    }

    #[test]
    fn self_resultant_vanishes() {
        let f = form(&["x0", "x1", "x2"]);
        assert!(resultant(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn quadratic_discriminant() {
        let g = form(&["x0", "x1", "x2"]);
        assert_eq!(discriminant_binary(&g).unwrap(), x("x1^2 - 4*x0*x2"));
        assert_eq!(discriminant_binary(&form(&["1", "0", "-1"])).unwrap(), x("4"));
        assert!(discriminant_binary(&form(&["1", "-2", "1"])).unwrap().is_zero());
    }

    #[test]
    fn zero_leading_coefficient_uses_shear() {
        // z w (z - w): three distinct roots, leading coefficient zero.
        let g = form(&["0", "1", "-1", "0"]);
        let direct = discriminant_binary(&g).unwrap();
        // Oracle: product formula for roots (1:0)... here roots 0, 1, inf; disc = 1.
        assert_eq!(direct, x("1"));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(discriminant_binary(&form(&["x0", "x1"])), Err(Error::FormDegree { .. })));
        assert!(matches!(discriminant_binary(&form(&["0", "0", "0"])), Err(Error::ZeroPolynomial)));
        assert!(resultant(&form(&["0", "0"]), &form(&["1", "1"])).is_err());
    }

    /// Brute-force oracle: discriminant of a monic-free cubic via the classic
    /// closed formula b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd.
    #[test]
    fn cubic_discriminant_closed_form() {
        let g = form(&["x0", "x1", "x2", "x0 + x1"]);
        let (a, b, c, d) = (x("x0"), x("x1"), x("x2"), x("x0 + x1"));
        let want = &(&(&(&(&(&b * &b) * &(&c * &c)) - &(&a * &c.pow(3)).scale(&BigRational::from_i64(4)))
            - &(&b.pow(3) * &d).scale(&BigRational::from_i64(4)))
            - &(&(&a * &a) * &(&d * &d)).scale(&BigRational::from_i64(27)))
            + &(&(&a * &b) * &(&c * &d)).scale(&BigRational::from_i64(18));
        assert_eq!(discriminant_binary(&g).unwrap(), want);
    }

    fn small_form(max_deg: usize) -> impl Strategy<Value = BinaryForm> {
        (1..=max_deg).prop_flat_map(|d| {
            prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), d + 1).prop_map(|cs| {
                let coeffs = cs
                    .into_iter()
                    .map(|(a, b, c)| {
                        let p = parse_poly(&format!("{a}*x0 + {b}*x1 + {c}*x2"), Vars::X).unwrap();
                        p
                    })
                    .collect();
                BinaryForm::new(coeffs).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn resultant_antisymmetry(f in small_form(3), g in small_form(3)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let a = resultant(&f, &g).unwrap();
            let b = resultant(&g, &f).unwrap();
            let sign = if (f.degree() * g.degree()) % 2 == 1 { -&b } else { b };
            prop_assert_eq!(a, sign);
        }

        /// Planted double roots make the discriminant vanish; coprime form and
        /// derivative make it nonzero.
        #[test]
        fn discriminant_detects_double_roots(
            roots in prop::collection::vec((-4i64..=4, 1i64..=3), 1..=3),
            double in any::<bool>(),
        ) {
            // Univariate over Q: prod (den*z - num*w), optionally squaring the first.
            let mut cs = vec![BigRational::from_i64(1)];
            let mut factors = roots.clone();
            if double {
                factors.push(roots[0]);
            }
            for (num, den) in &factors {
                let mut next = vec![BigRational::from_i64(0); cs.len() + 1];
                for (i, c) in cs.iter().enumerate() {
                    next[i] += c * BigRational::from_i64(*den);
                    next[i + 1] -= c * BigRational::from_i64(*num);
                }
                cs = next;
            }
            prop_assume!(cs.len() >= 3);
            let g = BinaryForm::new(cs.iter().map(|c| TriPoly::constant(Vars::X, c.clone())).collect()).unwrap();
            let disc = discriminant_binary(&g).unwrap();
            // Independent check: gcd of the dehomogenized form with its derivative.
            let t = |cs: &[BigRational]| TriPoly::from_terms(
                Vars::X,
                cs.iter().rev().enumerate().map(|(k, c)| (crate::exactpoly::Monomial([0, k as u32, 0]), c.clone())),
            );
            let u = t(&cs);
            let shared = gcd(&u, &u.derivative(1));
            let has_repeat = !shared.is_constant();
            prop_assert_eq!(disc.is_zero(), has_repeat);
        }
    }
}
