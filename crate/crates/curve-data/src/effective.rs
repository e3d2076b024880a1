//! The monoid `P` of effective classes and its co-Artinian ideals.

use crate::error::{CurveError, Result};
use lattice_monoid::linalg::{dot, sub, Vector};
use lattice_monoid::{MonoidIdeal, ToricMonoid};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct ClassMonoid {
    monoid: ToricMonoid,
    phi: Vector,
}

impl ClassMonoid {
    pub fn new(rank: usize, generators: Vec<Vector>, phi: Vector) -> Result<ClassMonoid> {
        if phi.len() != rank {
            return Err(CurveError::Dimension(format!(
                "phi has {} entries, rank is {rank}",
                phi.len()
            )));
        }
        let monoid =
            ToricMonoid::new(rank, generators).map_err(|e| CurveError::Monoid(e.to_string()))?;
        if let Some(g) = monoid.generators().iter().find(|g| dot(&phi, g) <= 0) {
            return Err(CurveError::Monoid(format!(
                "phi is not positive on generator {g:?}"
            )));
        }
        if !monoid.is_saturated() {
            return Err(CurveError::Monoid("P must be saturated".into()));
        }
        Ok(ClassMonoid { monoid, phi })
    }

    pub fn rank(&self) -> usize {
        self.monoid.rank()
    }

    pub fn monoid(&self) -> &ToricMonoid {
        &self.monoid
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn value(&self, a: &[i64]) -> i64 {
        dot(&self.phi, a)
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.monoid.contains(a)
    }
}

#[derive(Clone, Debug)]
pub enum CoArtinianIdeal {
    Generators(MonoidIdeal),
    /// `{A : ψ(A) ≥ k}` for a functional `ψ` positive on `P \ 0`.
    Threshold {
        psi: Vector,
        k: i64,
    },
}

impl CoArtinianIdeal {
    pub fn generated(p: &ClassMonoid, generators: Vec<Vector>) -> Result<CoArtinianIdeal> {
        let ideal = MonoidIdeal::new(p.monoid(), generators)
            .map_err(|e| CurveError::Monoid(e.to_string()))?;
        // a ray of the saturated cone has a multiple in I iff some generator lies on it
        for ray in p.monoid().cone().rays() {
            let on_ray = ideal
                .generators()
                .iter()
                .any(|g| lattice_monoid::linalg::rank(&[g.clone(), ray.clone()]) <= 1);
            if !on_ray {
                return Err(CurveError::NotCoArtinian(format!(
                    "no multiple of the ray {ray:?} lies in I"
                )));
            }
        }
        Ok(CoArtinianIdeal::Generators(ideal))
    }

    pub fn threshold(p: &ClassMonoid, psi: Vector, k: i64) -> Result<CoArtinianIdeal> {
        if psi.len() != p.rank() {
            return Err(CurveError::Dimension(format!(
                "threshold functional has {} entries",
                psi.len()
            )));
        }
        if let Some(g) = p.monoid().generators().iter().find(|g| dot(&psi, g) <= 0) {
            return Err(CurveError::NotCoArtinian(format!(
                "threshold functional vanishes on {g:?}"
            )));
        }
        Ok(CoArtinianIdeal::Threshold { psi, k })
    }

    /// The maximal ideal `P \ 0`.
    pub fn maximal(p: &ClassMonoid) -> CoArtinianIdeal {
        CoArtinianIdeal::Generators(
            MonoidIdeal::new(p.monoid(), p.monoid().generators().to_vec()).unwrap(),
        )
    }

    /// Membership for an element of `P`.
    pub fn contains(&self, p: &ClassMonoid, a: &[i64]) -> bool {
        match self {
            CoArtinianIdeal::Generators(ideal) => {
                ideal.generators().iter().any(|g| p.contains(&sub(a, g)))
            }
            CoArtinianIdeal::Threshold { psi, k } => dot(psi, a) >= *k,
        }
    }
}

/// `P \ I` ordered by `(φ, lex)`, by breadth-first search from `0`.
pub fn complement(p: &ClassMonoid, ideal: &CoArtinianIdeal) -> Result<Vec<Vector>> {
    const LIMIT: usize = 1 << 20;
    let zero = vec![0i64; p.rank()];
    let mut seen: BTreeSet<Vector> = BTreeSet::new();
    if ideal.contains(p, &zero) {
        return Ok(Vec::new());
    }
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in p.monoid().generators() {
                let y: Vector = x.iter().zip(g).map(|(a, b)| a + b).collect();
                if !seen.contains(&y) && !ideal.contains(p, &y) {
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        if seen.len() > LIMIT {
            return Err(CurveError::NotCoArtinian(format!(
                "more than {LIMIT} classes outside I"
            )));
        }
        frontier = next;
    }
    let mut out: Vec<Vector> = seen.into_iter().collect();
    out.sort_by(|a, b| (p.value(a), a).cmp(&(p.value(b), b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_complements() {
        let line = ClassMonoid::new(1, vec![vec![1]], vec![1]).unwrap();
        let max = CoArtinianIdeal::maximal(&line);
        assert_eq!(complement(&line, &max).unwrap(), vec![vec![0]]);
        let t3 = CoArtinianIdeal::generated(&line, vec![vec![3]]).unwrap();
        assert_eq!(
            complement(&line, &t3).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );

        let blowup = ClassMonoid::new(2, vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap();
        let i = CoArtinianIdeal::threshold(&blowup, vec![1, 1], 3).unwrap();
        let c = complement(&blowup, &i).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 0]);
        assert_eq!(c[1], vec![0, 1]);
    }

    #[test]
    fn rejects_infinite_complement() {
        let n2 = ClassMonoid::new(2, vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap();
        assert!(matches!(
            CoArtinianIdeal::generated(&n2, vec![vec![1, 0]]),
            Err(CurveError::NotCoArtinian(_))
        ));
    }
}
