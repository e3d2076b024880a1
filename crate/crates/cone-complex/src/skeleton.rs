//! The skeleton of good divisors and the degree function of the relative
//! case.

use crate::complex::{ConeComplex, IntegralPoint};
use crate::error::{ComplexError, Result};
use lattice_monoid::rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Relative data: divisor multiplicities in the fibre over `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relative {
    mu: Vec<i64>,
    over_zero: Vec<bool>,
}

impl Relative {
    pub fn new(complex: &ConeComplex, mu: &[i64], over_zero: &[String]) -> Result<Relative> {
        let n = complex.divisors().len();
        if mu.len() != n {
            return Err(ComplexError::Relative(format!(
                "{} multiplicities for {} divisors",
                mu.len(),
                n
            )));
        }
        let mut flags = vec![false; n];
        for name in over_zero {
            flags[complex.divisor_index(name)?] = true;
        }
        for i in 0..n {
            if flags[i] && mu[i] < 1 {
                return Err(ComplexError::Relative(format!(
                    "{} lies over 0 but has multiplicity {}",
                    complex.divisors()[i],
                    mu[i]
                )));
            }
            if !flags[i] && mu[i] != 0 {
                return Err(ComplexError::Relative(format!(
                    "{} is horizontal but has multiplicity {}",
                    complex.divisors()[i],
                    mu[i]
                )));
            }
        }
        Ok(Relative {
            mu: mu.to_vec(),
            over_zero: flags,
        })
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.mu
    }

    pub fn is_over_zero(&self, label: usize) -> bool {
        self.over_zero[label]
    }

    /// `Σ μ_i ⟨p, D_i⟩`.
    pub fn degree(&self, complex: &ConeComplex, p: &IntegralPoint) -> i64 {
        complex
            .pairings(p)
            .iter()
            .zip(&self.mu)
            .map(|(x, m)| x * m)
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    coeffs: Vec<BigRational>,
    normalized: Vec<BigRational>,
    good: Vec<bool>,
    cones: Vec<usize>,
}

impl Skeleton {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients after subtracting `w · g^{-1}(0)` in the relative case.
    pub fn normalized(&self) -> &[BigRational] {
        &self.normalized
    }

    pub fn good(&self) -> &[bool] {
        &self.good
    }

    /// Indices of the cones all of whose rays are good.
    pub fn cones(&self) -> &[usize] {
        &self.cones
    }

    pub fn contains_cone(&self, cone: usize) -> bool {
        self.cones.binary_search(&cone).is_ok()
    }

    pub fn contains(&self, p: &IntegralPoint) -> bool {
        self.contains_cone(p.cone())
    }
}

/// Good divisors are those with vanishing coefficient, after normalizing by
/// the minimal weight `a_i/μ_i` over the fibre divisors in the relative case.
pub fn ks_skeleton(
    complex: &ConeComplex,
    a: &[BigRational],
    relative: Option<&Relative>,
) -> Result<Skeleton> {
    let n = complex.divisors().len();
    if a.len() != n {
        return Err(ComplexError::Relative(format!(
            "{} coefficients for {} divisors",
            a.len(),
            n
        )));
    }
    if let Some(i) = a.iter().position(|x| x.is_negative()) {
        return Err(ComplexError::NegativeCoefficient(format!(
            "{} ({})",
            complex.divisors()[i],
            rational::format_short(&a[i])
        )));
    }
    let mut normalized = a.to_vec();
    if let Some(rel) = relative {
        let weights: Vec<BigRational> = (0..n)
            .filter(|&i| rel.is_over_zero(i))
            .map(|i| &a[i] / BigRational::from_integer(BigInt::from(rel.mu[i])))
            .collect();
        if let Some(w) = weights.iter().min().cloned() {
            for i in (0..n).filter(|&i| rel.is_over_zero(i)) {
                normalized[i] = &a[i] - &w * BigRational::from_integer(BigInt::from(rel.mu[i]));
            }
        }
    }
    let good: Vec<bool> = normalized.iter().map(|x| x.is_zero()).collect();
    let cones = (0..complex.cones().len())
        .filter(|&c| complex.cone(c).labels.iter().all(|&l| good[l]))
        .collect();
    Ok(Skeleton {
        coeffs: a.to_vec(),
        normalized,
        good,
        cones,
    })
}
