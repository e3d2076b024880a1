use crate::error::{InvariantError, Result, Rule};
use crate::table::{InvariantTable, Policy};
use cone_complex::{ConeComplex, IntegralPoint, Relative, Skeleton};
use curve_data::CurveClassData;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Where a structure constant came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Unit,
    Constant,
    /// `A · c1 ≠ 0`.
    Vanishing,
    /// `r` does not have the forced pairings.
    Constraint,
    Table,
    /// Absent from a table under the complete policy.
    Missing,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Unit => "unit",
            Source::Constant => "constant",
            Source::Vanishing | Source::Constraint | Source::Missing => "filtered-zero",
            Source::Table => "table",
        }
    }
}

/// The data the rule cascade reads.
#[derive(Clone, Copy)]
pub struct Rules<'a> {
    pub complex: &'a ConeComplex,
    pub skeleton: &'a Skeleton,
    pub classes: &'a CurveClassData,
    pub relative: Option<&'a Relative>,
}

impl<'a> Rules<'a> {
    /// 1 if `p1 + p2 = r` inside a cone of the skeleton containing all three.
    pub fn constant_term(
        &self,
        p1: &IntegralPoint,
        p2: &IntegralPoint,
        r: &IntegralPoint,
    ) -> BigRational {
        let hit = self
            .complex
            .sums_in_common_cones(p1, p2)
            .iter()
            .any(|(s, sum)| sum == r && self.skeleton.contains_cone(*s));
        if hit {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }

    /// `⟨p1, D_i⟩ + ⟨p2, D_i⟩ − A·D_i` for every divisor.
    pub fn forced_pairings(&self, p1: &IntegralPoint, p2: &IntegralPoint, a: &[i64]) -> Vec<i64> {
        let x = self.complex.pairings(p1);
        let y = self.complex.pairings(p2);
        let d = self.classes.divisor_pairings(a);
        (0..x.len()).map(|i| x[i] + y[i] - d[i]).collect()
    }

    /// Points of the skeleton with the forced pairings; one per cone
    /// realizing them.
    pub fn candidate_outputs(
        &self,
        p1: &IntegralPoint,
        p2: &IntegralPoint,
        a: &[i64],
    ) -> Vec<IntegralPoint> {
        let v = self.forced_pairings(p1, p2, a);
        self.complex
            .points_with_pairings(&v)
            .into_iter()
            .filter(|r| self.skeleton.contains(r))
            .collect()
    }

    /// The checks a supplied entry must pass.
    pub fn validate(
        &self,
        a: &[i64],
        p1: &IntegralPoint,
        p2: &IntegralPoint,
        r: &IntegralPoint,
    ) -> std::result::Result<(), Rule> {
        if a.iter().all(|&x| x == 0) {
            return Err(Rule::ConstantMaps);
        }
        if p1.is_zero() || p2.is_zero() {
            return Err(Rule::Unit);
        }
        let c = self.classes.c1_pairing(a);
        if c != 0 {
            return Err(Rule::FirstChern(c));
        }
        let forced = self.forced_pairings(p1, p2, a);
        let actual = self.complex.pairings(r);
        if let Some(i) = (0..forced.len()).find(|&i| forced[i] != actual[i]) {
            return Err(Rule::Constraint {
                divisor: self.complex.divisors()[i].clone(),
                expected: forced[i],
                found: actual[i],
            });
        }
        if let Some(rel) = self.relative {
            let expected = rel.degree(self.complex, p1) + rel.degree(self.complex, p2);
            let found = rel.degree(self.complex, r);
            if expected != found {
                return Err(Rule::Degree { expected, found });
            }
        }
        Ok(())
    }

    /// `N^A_{p1 p2 r}` by the rule cascade: unit, constant maps, `A·c1`,
    /// intersection constraints, then the table.
    pub fn get_n(
        &self,
        a: &[i64],
        p1: &IntegralPoint,
        p2: &IntegralPoint,
        r: &IntegralPoint,
        table: &InvariantTable,
    ) -> Result<(BigRational, Source)> {
        let zero_class = a.iter().all(|&x| x == 0);
        if p1.is_zero() || p2.is_zero() {
            let other = if p1.is_zero() { p2 } else { p1 };
            let v = if zero_class && r == other {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            return Ok((v, Source::Unit));
        }
        if zero_class {
            return Ok((self.constant_term(p1, p2, r), Source::Constant));
        }
        if self.classes.c1_pairing(a) != 0 {
            return Ok((BigRational::zero(), Source::Vanishing));
        }
        if self.forced_pairings(p1, p2, a) != self.complex.pairings(r) || !self.skeleton.contains(r)
        {
            return Ok((BigRational::zero(), Source::Constraint));
        }
        match table.lookup(a, p1, p2, r) {
            Some(v) => Ok((v.clone(), Source::Table)),
            None => match table.policy() {
                Policy::Complete => Ok((BigRational::zero(), Source::Missing)),
                Policy::Strict => Err(InvariantError::Unknown {
                    a: format_class(a),
                    p1: self.complex.format_point(p1),
                    p2: self.complex.format_point(p2),
                    r: self.complex.format_point(r),
                }),
            },
        }
    }
}

fn format_class(a: &[i64]) -> String {
    let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("[{}]", s.join(","))
}
