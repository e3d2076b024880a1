use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown divisor label {0:?}")]
    UnknownLabel(String),
    #[error("unknown cone {0:?}")]
    UnknownCone(String),
    #[error("duplicate stratum id {0:?}")]
    DuplicateId(String),
    #[error("inconsistent strata poset: {0}")]
    Inconsistent(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("ambiguous point {0:?}: several cones carry these labels")]
    Ambiguous(String),
    #[error("negative skeleton coefficient for {0}")]
    NegativeCoefficient(String),
    #[error("relative data: {0}")]
    Relative(String),
    #[error("absolute geometry has no degree function")]
    NotRelative,
    #[error("bounding functional vanishes on the ray of {0}")]
    DegenerateBound(String),
}

pub type Result<T> = std::result::Result<T, ComplexError>;
