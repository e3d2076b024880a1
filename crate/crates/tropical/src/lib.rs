//! Tropical families of four-pointed maps to cone complexes: validation,
//! universal cones, tail analysis, splitting and gluing, and fibre
//! products of cones.

pub mod analysis;
mod error;
pub mod family;
pub mod graph;
pub mod random;
pub mod transverse;
pub mod universal;

pub use analysis::{
    check_assumptions, classify_tails, find_splitting_edge, glue, in_leg_name, out_leg_name,
    split_at_edge, splitting_edges, tangent_edges, AssumptionReport, ChainData, SplittingEdge,
    TailClass,
};
pub use error::{Result, TropError};
pub use family::{load_complex, FamilyData, TropFamily, TropType, ValidationReport};
pub use graph::{BoundaryClass, GraphData, LegLabel, TropGraph};
pub use transverse::{
    cone_fibre_product, projection_surjects_on_faces, psi_y, transverse_hypothesis, ConeMap,
    FibreProduct,
};
pub use universal::{nonneg_solutions, universal_cone, UniversalCone};
