use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact field coefficients for [`Poly`](super::Poly).
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Field division. Panics on a zero divisor.
    fn div_ref(&self, rhs: &Self) -> Self;
    fn from_rational(r: BigRational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn from_rational(r: BigRational) -> Self {
        r
    }
}

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out of f64 range: saturate with the correct sign.
        if r.numer().sign() == r.denom().sign() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

/// Exact complex number `re + i*im` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: Zero::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rat(re, 1), rat(im, 1))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", self.im)
        } else if self.im.numer().sign() == num_bigint::Sign::Minus {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Coeff for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::real(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Self::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Self::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg_ref(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        let d = rhs.norm_sqr();
        let num = self.mul_ref(&rhs.conj());
        Self::new(num.re / &d, num.im / d)
    }
    fn from_rational(r: BigRational) -> Self {
        Self::real(r)
    }
}
