//! The curve-class part of a geometry file.

use crate::classes::{Curvature, CurveClassData};
use crate::coef::CoefficientRing;
use crate::effective::{ClassMonoid, CoArtinianIdeal};
use crate::error::{CurveError, Result};
use lattice_monoid::rational;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidSpec {
    pub generators: Vec<Vec<i64>>,
    pub phi: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealSpec {
    Generators { generators: Vec<Vec<i64>> },
    Threshold { phi: Vec<i64>, k: i64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveData {
    pub h2_rank: usize,
    pub pairing_matrix: Vec<Vec<i64>>,
    pub c1: Vec<i64>,
    pub flag: Curvature,
    #[serde(
        default,
        with = "rational::opt_vec",
        skip_serializing_if = "Option::is_none"
    )]
    pub logcy_coeffs: Option<Vec<BigRational>>,
    pub class_monoid: MonoidSpec,
    pub ideal: IdealSpec,
}

impl CurveData {
    pub fn from_json(text: &str) -> Result<CurveData> {
        serde_json::from_str(text).map_err(|e| CurveError::Json(e.to_string()))
    }

    pub fn classes(&self) -> Result<CurveClassData> {
        CurveClassData::new(
            self.h2_rank,
            self.pairing_matrix.clone(),
            self.c1.clone(),
            self.flag,
            self.logcy_coeffs.clone(),
        )
    }

    pub fn monoid(&self) -> Result<ClassMonoid> {
        ClassMonoid::new(
            self.h2_rank,
            self.class_monoid.generators.clone(),
            self.class_monoid.phi.clone(),
        )
    }

    pub fn ideal(&self, p: &ClassMonoid) -> Result<CoArtinianIdeal> {
        match &self.ideal {
            IdealSpec::Generators { generators } => {
                CoArtinianIdeal::generated(p, generators.clone())
            }
            IdealSpec::Threshold { phi, k } => CoArtinianIdeal::threshold(p, phi.clone(), *k),
        }
    }

    /// Validated classes and coefficient ring; the curvature flag is
    /// checked on the generators of `P`.
    pub fn build(&self) -> Result<(CurveClassData, CoefficientRing)> {
        let classes = self.classes()?;
        let p = self.monoid()?;
        classes.check_curvature(p.monoid().generators())?;
        let ideal = self.ideal(&p)?;
        Ok((classes, CoefficientRing::new(p, ideal)?))
    }
}
