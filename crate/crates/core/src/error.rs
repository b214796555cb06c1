use alloc::string::String;

/// Errors raised by the algebraic, polyhedral and certificate routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable lists differ between operands")]
    VariableMismatch,
    #[error("weight tuple is empty")]
    EmptyTuple,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("exponent arithmetic overflowed")]
    ExponentOverflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("input has nontrivially valued coefficients")]
    ValuedInput,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("witness degree {witness} is below the maximal generator degree {generators}")]
    WitnessDegree { witness: i64, generators: i64 },
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("genericity violated: factor {0} vanishes")]
    Genericity(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
