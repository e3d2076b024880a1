#![allow(dead_code)]

use invariants::Policy;
use std::path::PathBuf;
use theta_ring::{Geometry, RingPresentation};

pub fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load(name: &str) -> Geometry {
    Geometry::load(&path(name), None, None).unwrap()
}

pub fn load_policy(name: &str, policy: Policy) -> Geometry {
    Geometry::load(&path(name), None, Some(policy)).unwrap()
}

pub fn presentation(geo: &Geometry) -> RingPresentation {
    let text = std::fs::read_to_string(geo.presentation_path.as_ref().unwrap()).unwrap();
    RingPresentation::from_json(geo, &text).unwrap()
}

/// Geometry (2) with the table read off from its presentation.
pub fn line_conic_full() -> Geometry {
    let mut geo = load("line_conic.geometry.json");
    let pres = presentation(&geo);
    geo.table = pres.derive_table(&geo, 6).unwrap();
    geo
}
