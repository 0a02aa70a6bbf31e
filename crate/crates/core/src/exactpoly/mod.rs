//! Exact sparse polynomial arithmetic over big rationals.
//!
//! Everything in this module is closed over `BigRational` (or Gaussian
//! rationals); nothing rounds. Floating point only appears in explicitly
//! named `*_f64` helpers that snapshot a polynomial for numeric evaluation.

mod binary;
mod coeff;
mod det;
mod gcd;
mod poly;
mod text;
pub mod univariate;

pub use binary::{discriminant_binary, resultant, BinaryForm};
pub use coeff::{rat, rat_to_f64, Coeff, GaussianRational};
pub use det::{det_bareiss, det_cofactor, det_poly_matrix};
pub use gcd::{
    content, gcd, gcd_squarefree, is_squarefree, primitive, squarefree_decomposition,
};
pub use num_rational::BigRational;
pub use poly::{poly_arith, ArithOp, FloatPoly, GaussPoly, Monomial, Poly, TriPoly, Vars};
pub use text::parse_poly;
