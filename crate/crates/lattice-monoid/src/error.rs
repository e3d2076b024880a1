use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("vector of length {found} in a lattice of rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0:?} is not an element of the monoid")]
    NotInMonoid(Vec<i64>),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("source monoid is not free")]
    NotFree,
    #[error("monoid is not sharp")]
    NotSharp,
    #[error("monoid is not saturated")]
    NotSaturated,
    #[error("pushout group has torsion")]
    Torsion,
    #[error("homomorphism is not injective on groups")]
    NotInjective,
    #[error("generators {0:?} do not form a face")]
    NotAFace(Vec<Vec<i64>>),
    #[error("group rank {0} exceeds the supported limit")]
    RankTooLarge(usize),
    #[error("lambda too small: {lambda} < {bound}")]
    LambdaTooSmall { lambda: i64, bound: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, MonoidError>;
