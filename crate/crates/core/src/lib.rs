//! Primal/dual geometry of the numerical range of a complex matrix.
//!
//! The numerical range `W(A)` and the LMI set `F(A) = {y : I + y1*A1 + y2*A2 ⪰ 0}`
//! are polar duals of each other. Their boundaries lie on two algebraic plane
//! curves: the pencil determinant curve `p(y) = det(y0*I + y1*A1 + y2*A2) = 0`
//! and its dual `q(x) = 0`. This crate computes both curves exactly over the
//! rationals and samples both convex sets numerically.
//!
//! Module map:
//! - [`exactpoly`]: sparse trivariate polynomials over big rationals, Bareiss
//!   determinants, resultants, discriminants, multivariate GCD.
//! - [`hermitian`]: Gaussian-rational matrices, the Hermitian splitting
//!   `A = A1 + i*A2`, a complex Jacobi eigensolver.
//! - [`pencil`]: the pencil determinant and the LMI set `F(A)`.
//! - [`dualcurve`]: the dual curve `q(x)` by discriminant elimination.
//! - [`rangegeom`]: support function, polygonal hulls and membership for `W(A)`.
//! - [`craig`]: the determinant factorization test `det(I+y1*A1+y2*A2) =
//!   det(I+y1*A1)*det(I+y2*A2)` versus `A1*A2 = 0`.

pub mod craig;
pub mod dualcurve;
pub mod error;
pub mod exactpoly;
pub mod fixtures;
pub mod geometry;
pub mod hermitian;
pub mod pencil;
pub mod rangegeom;
pub mod samples;

pub use error::{Error, Result};
pub use exactpoly::{BigRational, GaussianRational, Monomial, Poly, TriPoly, Vars};
pub use hermitian::{GaussianRationalMatrix, HermitianPencil};
