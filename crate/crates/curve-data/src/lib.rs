//! Curve classes, the effective monoid `P`, co-Artinian ideals and the
//! truncated coefficient ring `Q[P]/I`.

mod classes;
mod coef;
mod data;
mod effective;
mod error;

pub use classes::{Curvature, CurveClassData};
pub use coef::{format_class, Coef, CoefficientRing};
pub use data::{CurveData, IdealSpec, MonoidSpec};
pub use effective::{complement, ClassMonoid, CoArtinianIdeal};
pub use error::{CurveError, Result};
