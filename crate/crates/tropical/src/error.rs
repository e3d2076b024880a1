use cone_complex::ComplexError;
use lattice_monoid::MonoidError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TropError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("invalid family: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("the graph has a terminal tail")]
    TerminalTail,
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("expected exactly one edge tangent to the next image cone, found {0:?}")]
    NotUnique(Vec<usize>),
    #[error("edge {index} fails property {property}")]
    Property { index: usize, property: String },
    #[error("edge {0} is not of splitting type")]
    NotSplitting(usize),
    #[error("cone dimension {0} exceeds the limit of 4")]
    DimensionLimit(usize),
}

pub type Result<T> = std::result::Result<T, TropError>;
