//! The truncated ring `R_I` with its basis of theta functions: products
//! from structure constants, checks of the ring axioms and gradings, and
//! polynomial presentations.

mod checks;
mod element;
mod error;
mod find;
mod geometry;
mod presentation;
mod product;

pub use checks::{
    check_associativity, check_associativity_all, check_commutativity, check_degree_grading,
    check_torus_grading, check_unit, filtration_value, rees, AssocReport, CheckReport, Expansion,
    ReesReport,
};
pub use element::ThetaElement;
pub use error::{Result, RingError};
pub use find::find_presentation;
pub use geometry::{Geometry, PointBound};
pub use presentation::{Monomial, Polynomial, PresentationData, RingPresentation, VariableData};
pub use product::{
    multiply, multiply_elements, multiply_pairs, Contribution, ProductCache, ProductReport,
};
