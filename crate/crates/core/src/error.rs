use thiserror::Error;

/// Errors raised by algebra, cone and geometry operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },

    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinates must be finite")]
    NonFinite,

    #[error("power exponent must be at least 1 (use the identity for exponent 0)")]
    ZeroPower,

    #[error("element is singular (min |eigenvalue| = {min_abs:e})")]
    SingularElement { min_abs: f64 },

    #[error("element is not in the open cone (min eigenvalue = {min_eigenvalue:e})")]
    NotInCone { min_eigenvalue: f64 },

    #[error("base point is not in the open cone (min eigenvalue = {min_eigenvalue:e})")]
    BasePointNotInCone { min_eigenvalue: f64 },

    #[error("automorphism does not map the base point to the identity (residual {residual:e})")]
    AutomorphismMismatch { residual: f64 },

    #[error("operation requires the inner-product (JH) structure, which {0} does not carry")]
    NotInnerProductMode(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
