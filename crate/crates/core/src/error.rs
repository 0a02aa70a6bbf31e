use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: char, right: char },

    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),

    #[error("exact division failed: divisor does not divide dividend")]
    InexactDivision,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("binary form has degree {degree}, need at least {min}")]
    FormDegree { degree: usize, min: usize },

    #[error("pencil determinant has a nonzero imaginary part (pencil is not Hermitian)")]
    ImaginaryResidue,

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("point is singular on the curve (vanishing gradient)")]
    SingularPoint,

    #[error("polynomial is not squarefree; it is reducible, supply its factors")]
    Reducible,

    #[error("curve is degenerate for exact dualization: {0}")]
    Degenerate(String),

    #[error("factorization does not match the polynomial: {0}")]
    FactorMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
