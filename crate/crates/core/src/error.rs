use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("multi-index subtraction underflows in component {component}")]
    IndexUnderflow { component: usize },

    #[error("direction {direction} out of range for dimension {dim}")]
    InvalidDirection { direction: usize, dim: usize },

    #[error("sum {kind} requires distinct directions, got {mu} twice")]
    CoincidentDirections { kind: &'static str, mu: usize },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: i64, cap: u32 },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("trajectory component {component} is not invertible in Laurent polynomials")]
    NonInvertibleTrajectory { component: usize },

    #[error("operator shapes differ: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },

    #[error("linear system is singular")]
    SingularSystem,

    #[error("contraction of two {0} factors")]
    SameKindContraction(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = JetError> = std::result::Result<T, E>;
