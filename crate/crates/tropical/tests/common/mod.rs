#![allow(dead_code)]

use std::path::PathBuf;
use tropical::TropFamily;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn family(name: &str) -> TropFamily {
    TropFamily::load(&fixture(&format!("tropical/{name}.family.json"))).expect("fixture loads")
}
