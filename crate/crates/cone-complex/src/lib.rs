//! Dual cone complexes of snc divisors, their integral points, and the
//! skeleton cut out by a choice of coefficients.

mod complex;
mod error;
mod geometry;
mod skeleton;

pub use complex::{ConeComplex, ConeData, IntegralPoint, PointData, StrataPoset, StratumData};
pub use error::{ComplexError, Result};
pub use geometry::{GeometryData, RelativeData};
pub use skeleton::{ks_skeleton, Relative, Skeleton};
