//! Curve classes, their intersection numbers with the boundary divisors and
//! with `c_1`.

use crate::error::{CurveError, Result};
use lattice_monoid::rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Curvature {
    #[serde(rename = "nef")]
    Nef,
    #[serde(rename = "anti-nef")]
    AntiNef,
    #[serde(rename = "logCY")]
    LogCy,
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curvature::Nef => "nef",
            Curvature::AntiNef => "anti-nef",
            Curvature::LogCy => "logCY",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClassData {
    rank: usize,
    /// `pairing[i][j] = D_i · A_j`.
    pairing: Vec<Vec<i64>>,
    c1: Vec<i64>,
    flag: Curvature,
    logcy: Option<Vec<BigRational>>,
}

impl CurveClassData {
    pub fn new(
        rank: usize,
        pairing: Vec<Vec<i64>>,
        c1: Vec<i64>,
        flag: Curvature,
        logcy: Option<Vec<BigRational>>,
    ) -> Result<CurveClassData> {
        if let Some(row) = pairing.iter().find(|r| r.len() != rank) {
            return Err(CurveError::Dimension(format!(
                "pairing row {row:?} should have {rank} entries"
            )));
        }
        if c1.len() != rank {
            return Err(CurveError::Dimension(format!(
                "c1 has {} entries, rank is {rank}",
                c1.len()
            )));
        }
        match (&flag, &logcy) {
            (Curvature::LogCy, None) => {
                return Err(CurveError::LogCy("logCY flag needs coefficients".into()))
            }
            (_, Some(a)) => {
                if a.len() != pairing.len() {
                    return Err(CurveError::LogCy(format!(
                        "{} coefficients for {} divisors",
                        a.len(),
                        pairing.len()
                    )));
                }
                if let Some(x) = a.iter().find(|x| x.is_negative()) {
                    return Err(CurveError::LogCy(format!(
                        "negative coefficient {}",
                        rational::format_short(x)
                    )));
                }
                // c = -Σ a_i row_i, exactly
                for j in 0..rank {
                    let s: BigRational = a
                        .iter()
                        .zip(&pairing)
                        .map(|(ai, row)| ai * BigRational::from_integer(BigInt::from(row[j])))
                        .sum();
                    if s + BigRational::from_integer(BigInt::from(c1[j])) != BigRational::zero() {
                        return Err(CurveError::LogCy(format!(
                            "c1 ≠ -Σ a_i D_i on basis class {j}"
                        )));
                    }
                }
            }
            _ => {}
        }
        Ok(CurveClassData {
            rank,
            pairing,
            c1,
            flag,
            logcy,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisor_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn c1(&self) -> &[i64] {
        &self.c1
    }

    pub fn flag(&self) -> Curvature {
        self.flag
    }

    pub fn logcy_coeffs(&self) -> Option<&[BigRational]> {
        self.logcy.as_deref()
    }

    /// `D_i · A`.
    pub fn divisor_pairing(&self, i: usize, a: &[i64]) -> i64 {
        self.pairing[i].iter().zip(a).map(|(x, y)| x * y).sum()
    }

    /// `(D_1 · A, ..., D_s · A)`.
    pub fn divisor_pairings(&self, a: &[i64]) -> Vec<i64> {
        (0..self.pairing.len())
            .map(|i| self.divisor_pairing(i, a))
            .collect()
    }

    /// `A · c_1`.
    pub fn c1_pairing(&self, a: &[i64]) -> i64 {
        self.c1.iter().zip(a).map(|(x, y)| x * y).sum()
    }

    /// True iff `A · c_1 = 0`, the only classes that may carry invariants.
    pub fn nef_filter(&self, a: &[i64]) -> bool {
        self.c1_pairing(a) == 0
    }

    /// Checks the sign condition of the flag on the given effective classes.
    pub fn check_curvature(&self, effective: &[Vec<i64>]) -> Result<()> {
        for a in effective {
            let v = self.c1_pairing(a);
            let bad = match self.flag {
                Curvature::Nef => v < 0,
                Curvature::AntiNef => v > 0,
                Curvature::LogCy => false,
            };
            if bad {
                return Err(CurveError::Curvature {
                    flag: self.flag.to_string(),
                    class: a.clone(),
                    value: v,
                });
            }
        }
        Ok(())
    }
}
