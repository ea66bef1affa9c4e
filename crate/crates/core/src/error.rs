use thiserror::Error;

/// Errors raised by the exact-arithmetic and geometry layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("undefined root set: the zero polynomial has every real number as a root")]
    UndefinedRootSet,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("resultant degree {degree} exceeds the supported bound {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent coefficient field: {0}")]
    InconsistentField(String),
    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),
    #[error("malformed matrix: {0}")]
    InvalidMatrix(String),
    #[error("matrix is not the dihedral matrix of a simplex: {0}")]
    NotRealizable(String),
    #[error("invalid Hill data: {0}")]
    InvalidHill(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("numerical verification failed: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
