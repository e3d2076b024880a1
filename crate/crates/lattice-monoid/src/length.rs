//! Lengths of monomial quotients of rank-two monoids and the stability of
//! those lengths under the pushout by `R -> R_λ`.

use crate::error::{MonoidError, Result};
use crate::linalg::{big, dot, is_zero, primitive, rank, solve_unique, Matrix, Vector};
use crate::monoid::{MonoidHom, MonoidIdeal, ToricMonoid};
use crate::pushout::{fs_pushout, pushout_ideal};
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

/// Elements of `q` not in `k`, when there are finitely many.
pub fn complement(k: &MonoidIdeal) -> Result<Option<Vec<Vector>>> {
    let q = k.parent();
    if !q.is_sharp() {
        return Err(MonoidError::NotSharp);
    }
    if !q.is_saturated() {
        return Err(MonoidError::NotSaturated);
    }
    let d = q.group_rank();
    if d > 2 {
        return Err(MonoidError::RankTooLarge(d));
    }
    if k.generators().iter().any(|g| is_zero(g)) {
        return Ok(Some(Vec::new()));
    }
    let cone = q.cone();
    let phi = cone.grading();
    // on each ray, the ideal must contain a multiple of the ray generator
    let mut bound = 0i64;
    for ray in cone.rays() {
        let on_ray = k
            .generators()
            .iter()
            .filter(|g| rank(&[(*g).clone(), ray.clone()]) == 1)
            .map(|g| dot(&phi, g))
            .min();
        match on_ray {
            Some(v) => bound += v,
            None => return Ok(None),
        }
    }
    let zero = vec![0i64; q.rank()];
    let mut seen: BTreeSet<Vector> = BTreeSet::new();
    let mut queue = VecDeque::from([zero.clone()]);
    seen.insert(zero);
    while let Some(x) = queue.pop_front() {
        for g in q.generators() {
            let y: Vector = x.iter().zip(g).map(|(a, b)| a + b).collect();
            if dot(&phi, &y) <= bound && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(Some(
        seen.into_iter()
            .filter(|x| !k.contains_unchecked(x))
            .collect(),
    ))
}

/// Number of elements of `Q` outside the ideal `K`.
pub fn quotient_length(k: &MonoidIdeal) -> Result<Length> {
    Ok(match complement(k)? {
        Some(c) => Length::Finite(c.len() as u64),
        None => Length::Infinite,
    })
}

#[derive(Clone, Debug)]
pub struct StabilityInput {
    pub q: ToricMonoid,
    pub ell_q: Vector,
    pub delta: Vector,
    /// image of ℓ under `R -> Q`
    pub theta_ell: Vector,
    pub mu: i64,
    pub lambda: i64,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub a: BigRational,
    pub b: BigRational,
    pub bound: BigRational,
    pub q_lambda: ToricMonoid,
    pub ideal: MonoidIdeal,
    pub length_q: Length,
    pub length_q_lambda: Length,
    pub iso_on_reduced: bool,
    pub multiplicities_equal: bool,
}

/// Compares `(Q, K)` with `(Q_λ, K' ∪ J_λ')` where `Q_λ = Q ⊕_R R_λ`,
/// `K = (δ, ℓ_q - μδ)` and `J_λ = (ℓ - λδ)`.
///
/// The reduced loci agree when both complements are finite and nonempty
/// (each reduced locus is then the torus-fixed point) and `Q_λ` has the
/// same group as `Q`.
pub fn lambda_stability(input: &StabilityInput) -> Result<StabilityReport> {
    let q = &input.q;
    if q.rank() != 2 || q.group_rank() != 2 {
        return Err(MonoidError::Precondition("Q must have rank two".into()));
    }
    if !q.is_sharp() {
        return Err(MonoidError::NotSharp);
    }
    if !q.is_saturated() {
        return Err(MonoidError::NotSaturated);
    }
    let ab = solve_unique(
        &[input.ell_q.clone(), input.delta.clone()],
        &input.theta_ell,
    )
    .ok_or_else(|| MonoidError::Precondition("ℓ_q and δ are dependent".into()))?;
    let (a, b) = (ab[0].clone(), ab[1].clone());
    if !a.is_positive() {
        return Err(MonoidError::Precondition(
            "coefficient a must be positive".into(),
        ));
    }
    let mu = big(input.mu);
    let other: Vector = input
        .ell_q
        .iter()
        .zip(&input.delta)
        .map(|(l, d)| l - input.mu * d)
        .collect();
    let mut expected = vec![primitive(&input.delta), primitive(&other)];
    expected.sort();
    if q.cone().rays() != expected {
        return Err(MonoidError::Precondition(
            "Q is not rationally generated by δ and ℓ_q - μδ".into(),
        ));
    }
    let bound = &a + &b + &mu * &a;
    if big(input.lambda) < bound {
        return Err(MonoidError::LambdaTooSmall {
            lambda: input.lambda,
            bound: bound.to_string(),
        });
    }
    let r = ToricMonoid::free(2);
    let r_lambda = ToricMonoid::new(2, vec![vec![1, -input.lambda], vec![0, 1]])?;
    let theta: Matrix = (0..2)
        .map(|i| vec![input.theta_ell[i], input.delta[i]])
        .collect();
    let h1 = MonoidHom::new(&r, q, theta)?;
    let h2 = MonoidHom::new(&r, &r_lambda, crate::linalg::identity(2))?;
    let po = fs_pushout(&h1, &h2)?;
    let k = MonoidIdeal::new(q, vec![input.delta.clone(), other])?;
    let j = MonoidIdeal::new(&r_lambda, vec![vec![1, -input.lambda]])?;
    let ideal = pushout_ideal(&po, &k, &j)?;
    let length_q = quotient_length(&k)?;
    let length_q_lambda = quotient_length(&ideal)?;
    let finite_nonempty = |l: Length| matches!(l, Length::Finite(n) if n > 0);
    let same_group = po.monoid.spans_ambient() == q.spans_ambient()
        && q.lattice_basis() == po.monoid.lattice_basis();
    let iso_on_reduced =
        finite_nonempty(length_q) && finite_nonempty(length_q_lambda) && same_group;
    let multiplicities_equal = length_q == length_q_lambda;
    Ok(StabilityReport {
        a,
        b,
        bound,
        q_lambda: po.monoid,
        ideal,
        length_q,
        length_q_lambda,
        iso_on_reduced,
        multiplicities_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(r: usize, g: &[&[i64]]) -> ToricMonoid {
        ToricMonoid::new(r, g.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn spec_lengths() {
        let n2 = ToricMonoid::free(2);
        let m = MonoidIdeal::new(&n2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(quotient_length(&m).unwrap(), Length::Finite(1));
        let q = crate::hilbert::saturate(&mono(2, &[&[0, 1], &[2, -1]]));
        let k = MonoidIdeal::new(&q, vec![vec![0, 1], vec![2, -1]]).unwrap();
        assert_eq!(quotient_length(&k).unwrap(), Length::Finite(2));
        assert_eq!(
            complement(&k).unwrap().unwrap(),
            vec![vec![0, 0], vec![1, 0]]
        );
        let axis = MonoidIdeal::new(&n2, vec![vec![1, 0]]).unwrap();
        assert_eq!(quotient_length(&axis).unwrap(), Length::Infinite);
    }

    fn input(q: ToricMonoid, theta_ell: Vector, mu: i64, lambda: i64) -> StabilityInput {
        StabilityInput {
            q,
            ell_q: vec![1, 0],
            delta: vec![0, 1],
            theta_ell,
            mu,
            lambda,
        }
    }

    #[test]
    fn stability_example() {
        let q = mono(2, &[&[0, 1], &[1, -1]]);
        let rep = lambda_stability(&input(q.clone(), vec![1, 0], 1, 5)).unwrap();
        assert!(rep.iso_on_reduced);
        assert!(rep.multiplicities_equal);
        assert_eq!(rep.a, big(1));
        assert_eq!(rep.length_q, Length::Finite(1));
        let err = lambda_stability(&input(q, vec![1, 0], 1, 1)).unwrap_err();
        assert!(matches!(err, MonoidError::LambdaTooSmall { .. }));
    }

    #[test]
    fn a_equals_two() {
        let q = mono(2, &[&[0, 1], &[1, -1]]);
        let rep = lambda_stability(&input(q, vec![2, -1], 1, 6)).unwrap();
        assert_eq!(rep.a, big(2));
        assert!(rep.iso_on_reduced);
    }
}
