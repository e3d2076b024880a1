//! The cone-complex part of a geometry file.

use crate::complex::{ConeComplex, StrataPoset, StratumData};
use crate::error::{ComplexError, Result};
use crate::skeleton::{ks_skeleton, Relative, Skeleton};
use lattice_monoid::rational;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelativeData {
    /// Multiplicity of each divisor in `g^*(0)`, aligned with `divisors`.
    pub multiplicities: Vec<i64>,
    pub over_zero: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeometryData {
    pub divisors: Vec<String>,
    pub strata: Vec<StratumData>,
    #[serde(
        default,
        with = "rational::opt_vec",
        skip_serializing_if = "Option::is_none"
    )]
    pub skeleton_coeffs: Option<Vec<BigRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative: Option<RelativeData>,
}

impl GeometryData {
    pub fn from_json(text: &str) -> Result<GeometryData> {
        serde_json::from_str(text)
            .map_err(|e| ComplexError::Inconsistent(format!("geometry JSON: {e}")))
    }

    pub fn complex(&self) -> Result<ConeComplex> {
        ConeComplex::build(&StrataPoset {
            divisors: self.divisors.clone(),
            strata: self.strata.clone(),
        })
    }

    pub fn relative(&self, complex: &ConeComplex) -> Result<Option<Relative>> {
        self.relative
            .as_ref()
            .map(|r| Relative::new(complex, &r.multiplicities, &r.over_zero))
            .transpose()
    }

    /// The skeleton for the stored coefficients; all zero when absent.
    pub fn skeleton(&self, complex: &ConeComplex) -> Result<Skeleton> {
        let a = self
            .skeleton_coeffs
            .clone()
            .unwrap_or_else(|| vec![BigRational::zero(); self.divisors.len()]);
        let rel = self.relative(complex)?;
        ks_skeleton(complex, &a, rel.as_ref())
    }
}
