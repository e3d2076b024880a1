//! Toric monoids inside lattices: saturation, pushouts, integrality,
//! lengths of monomial quotients and localization at faces.

pub mod cone;
mod error;
mod face;
mod hilbert;
mod integral;
mod length;
pub mod linalg;
mod monoid;
pub mod oracle;
mod pushout;
pub mod rational;

pub use cone::{Cone, Face};
pub use error::{MonoidError, Result};
pub use face::{dvr_morphism_exists, localize_at_face, DvrLogData, Localization};
pub use hilbert::{saturate, saturate_in_group};
pub use integral::{is_integral, log_fibre_dim};
pub use length::{
    complement, lambda_stability, quotient_length, Length, StabilityInput, StabilityReport,
};
pub use monoid::{IdealData, MonoidData, MonoidHom, MonoidIdeal, ToricMonoid};
pub use pushout::{fine_pushout, fs_pushout, pushout_ideal, Pushout};
