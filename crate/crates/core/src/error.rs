use thiserror::Error;

/// Errors raised by exact scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression has a pole at t = 0 (the unperturbed matrix is singular)")]
    SingularAtZero,
    #[error("cannot parse scalar {0:?}: expected an integer, a fraction n/d or a decimal")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("bad scalar: {0}")]
    BadScalar(String),
    #[error(
        "zero pivot d{index} in floating-point mode; the symbolic t-substitution \
         needs exact arithmetic, rerun with --mode exact"
    )]
    ZeroPivot { index: usize },
    #[error(
        "corner entry a_n is numerically zero in floating-point mode; rerun with --mode exact"
    )]
    ZeroCorner,
    #[error("matrix is singular")]
    Singular,
    #[error("bad family spec: {0}")]
    BadSpec(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed system file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
