use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("curvature flag {flag} violated by class {class:?} (A·c1 = {value})")]
    Curvature {
        flag: String,
        class: Vec<i64>,
        value: i64,
    },
    #[error("log Calabi-Yau coefficients: {0}")]
    LogCy(String),
    #[error("class monoid: {0}")]
    Monoid(String),
    #[error("ideal is not co-Artinian: {0}")]
    NotCoArtinian(String),
    #[error("class {0:?} is not in the monoid")]
    NotInMonoid(Vec<i64>),
    #[error("coefficients from different rings")]
    RingMismatch,
    #[error("curve data JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, CurveError>;
