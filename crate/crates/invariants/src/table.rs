use crate::error::{InvariantError, Result, Rule};
use crate::rules::Rules;
use cone_complex::{ConeComplex, IntegralPoint, PointData};
use lattice_monoid::rational;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

/// What a missing entry means.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Missing entries are zero.
    Complete,
    /// Missing entries are an error.
    #[default]
    Strict,
}

impl FromStr for Policy {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Policy> {
        match s {
            "complete" => Ok(Policy::Complete),
            "strict" => Ok(Policy::Strict),
            _ => Err(InvariantError::Policy(s.to_string())),
        }
    }
}

/// One JSON line of a table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryData {
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    pub p1: PointData,
    pub p2: PointData,
    pub r: PointData,
    #[serde(rename = "N", with = "rational")]
    pub n: BigRational,
}

type Key = (Vec<i64>, IntegralPoint, IntegralPoint, IntegralPoint);

fn key(a: &[i64], p1: &IntegralPoint, p2: &IntegralPoint, r: &IntegralPoint) -> Key {
    let (x, y) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
    (a.to_vec(), x.clone(), y.clone(), r.clone())
}

/// Supplied invariants, keyed by `(A, {p1, p2}, r)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantTable {
    policy: Policy,
    entries: BTreeMap<Key, BigRational>,
}

impl InvariantTable {
    pub fn new(policy: Policy) -> InvariantTable {
        InvariantTable {
            policy,
            entries: BTreeMap::new(),
        }
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn set_policy(&mut self, policy: Policy) {
        self.policy = policy;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds a validated entry. Re-adding the same value is allowed.
    pub fn insert(
        &mut self,
        rules: &Rules,
        a: &[i64],
        p1: &IntegralPoint,
        p2: &IntegralPoint,
        r: &IntegralPoint,
        n: BigRational,
    ) -> std::result::Result<(), Rule> {
        rules.validate(a, p1, p2, r)?;
        let k = key(a, p1, p2, r);
        match self.entries.get(&k) {
            Some(old) if *old != n => Err(Rule::Conflict),
            _ => {
                self.entries.insert(k, n);
                Ok(())
            }
        }
    }

    /// Reads JSON lines; blank lines and lines starting with `#` are skipped.
    pub fn load(text: &str, rules: &Rules, policy: Policy) -> Result<InvariantTable> {
        let mut t = InvariantTable::new(policy);
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| InvariantError::Parse {
                line: line_no,
                message,
            };
            let e: EntryData = serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
            if e.a.len() != rules.classes.rank() {
                return Err(parse_err(format!(
                    "class has {} entries, rank is {}",
                    e.a.len(),
                    rules.classes.rank()
                )));
            }
            let pt = |d: &PointData| {
                rules
                    .complex
                    .point_from_data(d)
                    .map_err(|e| parse_err(e.to_string()))
            };
            let (p1, p2, r) = (pt(&e.p1)?, pt(&e.p2)?, pt(&e.r)?);
            t.insert(rules, &e.a, &p1, &p2, &r, e.n)
                .map_err(|rule| InvariantError::Rejected {
                    line: line_no,
                    rule,
                })?;
        }
        Ok(t)
    }

    pub fn lookup(
        &self,
        a: &[i64],
        p1: &IntegralPoint,
        p2: &IntegralPoint,
        r: &IntegralPoint,
    ) -> Option<&BigRational> {
        self.entries.get(&key(a, p1, p2, r))
    }

    /// Entries in key order, with `p1 ≤ p2`.
    pub fn entries(
        &self,
    ) -> impl Iterator<
        Item = (
            &[i64],
            &IntegralPoint,
            &IntegralPoint,
            &IntegralPoint,
            &BigRational,
        ),
    > {
        self.entries
            .iter()
            .map(|((a, p1, p2, r), n)| (a.as_slice(), p1, p2, r, n))
    }

    pub fn to_jsonl(&self, complex: &ConeComplex) -> String {
        let mut out = String::new();
        for (a, p1, p2, r, n) in self.entries() {
            let e = EntryData {
                a: a.to_vec(),
                p1: complex.point_data(p1),
                p2: complex.point_data(p2),
                r: complex.point_data(r),
                n: n.clone(),
            };
            out.push_str(&serde_json::to_string(&e).expect("serializable"));
            out.push('\n');
        }
        out
    }
}
