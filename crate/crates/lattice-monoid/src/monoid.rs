//! Toric monoids, their ideals and homomorphisms.

use crate::cone::Cone;
use crate::error::{MonoidError, Result};
use crate::linalg::{self, hnf, is_zero, lattice_contains, mat_vec, sub, Matrix, Vector};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

/// A finitely generated submonoid of `Z^rank`.
///
/// Generators are kept canonical: no zero vector, no duplicates, sorted
/// lexicographically. Equality compares the generator lists, so two
/// presentations of the same monoid are equal only after [`ToricMonoid::minimize`].
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "MonoidData", try_from = "MonoidData")]
pub struct ToricMonoid {
    rank: usize,
    generators: Matrix,
    cone: OnceLock<Cone>,
    lattice: OnceLock<Matrix>,
    saturated: OnceLock<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidData {
    pub rank: usize,
    pub generators: Matrix,
}

impl From<ToricMonoid> for MonoidData {
    fn from(m: ToricMonoid) -> Self {
        MonoidData {
            rank: m.rank,
            generators: m.generators,
        }
    }
}

impl TryFrom<MonoidData> for ToricMonoid {
    type Error = MonoidError;
    fn try_from(d: MonoidData) -> Result<Self> {
        ToricMonoid::new(d.rank, d.generators)
    }
}

impl PartialEq for ToricMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.generators == other.generators
    }
}

impl Eq for ToricMonoid {}

impl Hash for ToricMonoid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.generators.hash(state);
    }
}

impl fmt::Debug for ToricMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ToricMonoid(rank {}, {:?})", self.rank, self.generators)
    }
}

pub(crate) fn check_len(rank: usize, v: &[i64]) -> Result<()> {
    if v.len() != rank {
        return Err(MonoidError::DimensionMismatch {
            expected: rank,
            found: v.len(),
        });
    }
    Ok(())
}

fn canonical(mut gens: Matrix) -> Matrix {
    gens.retain(|g| !is_zero(g));
    gens.sort();
    gens.dedup();
    gens
}

impl ToricMonoid {
    pub fn new(rank: usize, generators: Matrix) -> Result<ToricMonoid> {
        for g in &generators {
            check_len(rank, g)?;
        }
        Ok(Self::from_canonical(rank, canonical(generators)))
    }

    fn from_canonical(rank: usize, generators: Matrix) -> ToricMonoid {
        ToricMonoid {
            rank,
            generators,
            cone: OnceLock::new(),
            lattice: OnceLock::new(),
            saturated: OnceLock::new(),
        }
    }

    pub(crate) fn known_saturated(self) -> ToricMonoid {
        let _ = self.saturated.set(true);
        self
    }

    /// The free monoid `N^r` on the standard basis.
    pub fn free(r: usize) -> ToricMonoid {
        Self::from_canonical(r, canonical(linalg::identity(r))).known_saturated()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn cone(&self) -> &Cone {
        self.cone
            .get_or_init(|| Cone::new(self.rank, &self.generators))
    }

    /// HNF basis of the group generated by the monoid.
    pub fn lattice_basis(&self) -> &[Vector] {
        self.lattice.get_or_init(|| hnf(&self.generators))
    }

    pub fn group_rank(&self) -> usize {
        self.cone().dim()
    }

    pub fn in_group(&self, x: &[i64]) -> bool {
        x.len() == self.rank && lattice_contains(self.lattice_basis(), x)
    }

    /// Whether the group of the monoid is all of `Z^rank`.
    pub fn spans_ambient(&self) -> bool {
        let b = self.lattice_basis();
        b.len() == self.rank && (0..self.rank).all(|i| b[i][i] == 1)
    }

    pub fn is_sharp(&self) -> bool {
        self.cone().is_pointed()
    }

    pub fn is_saturated(&self) -> bool {
        *self.saturated.get_or_init(|| {
            let sat = crate::hilbert::saturate(self);
            sat.generators().iter().all(|h| self.fine_contains(h))
        })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.rank {
            return false;
        }
        if !self.cone().contains(x) || !self.in_group(x) {
            return false;
        }
        if self.saturated.get() == Some(&true) {
            return true;
        }
        self.fine_contains(x)
    }

    /// Exact membership by search over representations. Generators in the
    /// lineality space generate a group, so only the remaining generators
    /// need to be peeled off; the grading bounds the search.
    pub(crate) fn fine_contains(&self, x: &[i64]) -> bool {
        let cone = self.cone();
        if !cone.contains(x) {
            return false;
        }
        let (lin, rest): (Matrix, Matrix) = self
            .generators
            .iter()
            .cloned()
            .partition(|g| cone.in_lineality(g));
        let lin_basis = hnf(&lin);
        let mut seen: HashSet<Vector> = HashSet::new();
        let mut stack = vec![x.to_vec()];
        while let Some(r) = stack.pop() {
            if cone.in_lineality(&r) && lattice_contains(&lin_basis, &r) {
                return true;
            }
            for g in &rest {
                let next = sub(&r, g);
                if cone.contains(&next) && !seen.contains(&next) {
                    seen.insert(next.clone());
                    stack.push(next);
                }
            }
        }
        false
    }

    /// Removes redundant generators. For sharp monoids the result is the
    /// set of irreducible elements; otherwise generators are dropped
    /// greedily in order.
    pub fn minimize(&self) -> ToricMonoid {
        let sat = self.saturated.get().copied();
        let result = if self.is_sharp() {
            let keep: Matrix = self
                .generators
                .iter()
                .filter(|g| {
                    !self
                        .generators
                        .iter()
                        .any(|c| c != *g && self.contains(&sub(g, c)))
                })
                .cloned()
                .collect();
            Self::from_canonical(self.rank, keep)
        } else {
            let mut gens = self.generators.clone();
            let mut i = 0;
            while i < gens.len() {
                let mut rest = gens.clone();
                let g = rest.remove(i);
                let m = Self::from_canonical(self.rank, rest.clone());
                if m.contains(&g) {
                    gens = rest;
                } else {
                    i += 1;
                }
            }
            Self::from_canonical(self.rank, gens)
        };
        if let Some(s) = sat {
            let _ = result.saturated.set(s);
        }
        result
    }

    /// Equality as submonoids of the same lattice.
    pub fn same_monoid(&self, other: &ToricMonoid) -> bool {
        self.rank == other.rank
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }
}

/// A monoid ideal `K = union of g + P` over its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidIdeal {
    parent: ToricMonoid,
    generators: Matrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealData {
    pub generators: Matrix,
}

impl MonoidIdeal {
    pub fn new(parent: &ToricMonoid, generators: Matrix) -> Result<MonoidIdeal> {
        for g in &generators {
            check_len(parent.rank(), g)?;
            if !parent.contains(g) {
                return Err(MonoidError::NotInMonoid(g.clone()));
            }
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        Ok(MonoidIdeal {
            parent: parent.clone(),
            generators: gens,
        })
    }

    pub fn parent(&self) -> &ToricMonoid {
        &self.parent
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn to_data(&self) -> IdealData {
        IdealData {
            generators: self.generators.clone(),
        }
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        check_len(self.parent.rank(), x)?;
        if !self.parent.contains(x) {
            return Err(MonoidError::NotInMonoid(x.to_vec()));
        }
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &[i64]) -> bool {
        self.generators
            .iter()
            .any(|g| self.parent.contains(&sub(x, g)))
    }
}

/// A homomorphism given by an integer matrix on the ambient lattices.
/// The matrix has `target.rank()` rows and `source.rank()` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    source: ToricMonoid,
    target: ToricMonoid,
    matrix: Matrix,
}

impl MonoidHom {
    pub fn new(source: &ToricMonoid, target: &ToricMonoid, matrix: Matrix) -> Result<MonoidHom> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(MonoidError::InvalidHom(format!(
                "matrix shape does not match ranks {} -> {}",
                source.rank(),
                target.rank()
            )));
        }
        for g in source.generators() {
            let img = mat_vec(&matrix, g);
            if !target.contains(&img) {
                return Err(MonoidError::InvalidHom(format!(
                    "generator {g:?} maps to {img:?} outside the target"
                )));
            }
        }
        Ok(MonoidHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(m: &ToricMonoid) -> MonoidHom {
        MonoidHom {
            source: m.clone(),
            target: m.clone(),
            matrix: linalg::identity(m.rank()),
        }
    }

    pub fn source(&self) -> &ToricMonoid {
        &self.source
    }

    pub fn target(&self) -> &ToricMonoid {
        &self.target
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Vector {
        mat_vec(&self.matrix, x)
    }

    /// Whether only zero maps to zero (for sharp monoids: locality).
    pub fn is_local(&self) -> bool {
        self.source
            .generators()
            .iter()
            .all(|g| !is_zero(&self.apply(g)))
    }

    pub fn is_injective_on_groups(&self) -> bool {
        let images: Matrix = self
            .source
            .lattice_basis()
            .iter()
            .map(|b| self.apply(b))
            .collect();
        linalg::rank(&images) == self.source.group_rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_generators() {
        let m = ToricMonoid::new(2, vec![vec![1, 2], vec![0, 0], vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(m.generators(), &[vec![1, 0], vec![1, 2]]);
        assert!(ToricMonoid::new(2, vec![vec![1]]).is_err());
    }

    #[test]
    fn fine_membership() {
        let m = ToricMonoid::new(2, vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert!(m.contains(&[2, 2]));
        assert!(!m.contains(&[1, 1]));
        assert!(!m.is_saturated());
        let z = ToricMonoid::new(1, vec![vec![2], vec![-3]]).unwrap();
        assert!(!z.is_sharp());
        assert!(z.contains(&[1]));
        assert!(z.contains(&[-7]));
    }

    #[test]
    fn minimize_sharp_and_not() {
        let m = ToricMonoid::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.minimize().generators(), &[vec![0, 1], vec![1, 0]]);
        let z = ToricMonoid::new(1, vec![vec![1], vec![-1], vec![2]]).unwrap();
        assert_eq!(z.minimize().generators().len(), 2);
    }

    #[test]
    fn ideal_membership() {
        let p = ToricMonoid::free(2);
        let k = MonoidIdeal::new(&p, vec![vec![2, 0]]).unwrap();
        assert!(k.contains(&[3, 0]).unwrap());
        assert!(!k.contains(&[1, 5]).unwrap());
        assert!(k.contains(&[-1, 0]).is_err());
        let zero = MonoidIdeal::new(&p, vec![vec![0, 0]]).unwrap();
        assert!(zero.contains(&[0, 0]).unwrap());
        assert!(!k.contains(&[0, 0]).unwrap());
    }

    #[test]
    fn homs_validate() {
        let n = ToricMonoid::free(1);
        let n2 = ToricMonoid::free(2);
        assert!(MonoidHom::new(&n, &n2, vec![vec![1], vec![1]]).is_ok());
        assert!(MonoidHom::new(&n, &n2, vec![vec![1], vec![-1]]).is_err());
        assert!(MonoidHom::new(&n, &n2, vec![vec![1]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = ToricMonoid::new(2, vec![vec![0, 1], vec![2, -1]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rank":2,"generators":[[0,1],[2,-1]]}"#);
        let back: ToricMonoid = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
