use cone_complex::ComplexError;
use curve_data::CurveError;
use invariants::InvariantError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("geometry file: {0}")]
    Scenario(String),
    #[error("point {0} is not in the skeleton")]
    OutsideSkeleton(String),
    #[error("presentation: {0}")]
    Presentation(String),
    #[error("relations are not confluent: {0}")]
    NotConfluent(String),
}

pub type Result<T> = std::result::Result<T, RingError>;
