//! The truncated coefficient ring `S_I = Q[P]/I`.

use crate::effective::{complement, ClassMonoid, CoArtinianIdeal};
use crate::error::{CurveError, Result};
use lattice_monoid::linalg::Vector;
use lattice_monoid::rational;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// An element of `S_I`: rational coefficients on the classes of `P \ I`,
/// indexed by position in the ring's class list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coef {
    terms: BTreeMap<usize, BigRational>,
}

impl Coef {
    pub fn zero() -> Coef {
        Coef::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, class: usize) -> BigRational {
        self.terms
            .get(&class)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, class: usize, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(class).or_insert_with(BigRational::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn add_assign(&mut self, other: &Coef) {
        for (k, v) in other.terms() {
            self.add_term(k, v);
        }
    }

    pub fn scale(&self, q: &BigRational) -> Coef {
        if q.is_zero() {
            return Coef::zero();
        }
        Coef {
            terms: self.terms.iter().map(|(k, v)| (*k, v * q)).collect(),
        }
    }

    pub fn neg(&self) -> Coef {
        self.scale(&-BigRational::one())
    }
}

#[derive(Clone, Debug)]
pub struct CoefficientRing {
    p: ClassMonoid,
    ideal: CoArtinianIdeal,
    classes: Vec<Vector>,
    index: HashMap<Vector, usize>,
    products: Vec<Vec<Option<usize>>>,
}

impl CoefficientRing {
    pub fn new(p: ClassMonoid, ideal: CoArtinianIdeal) -> Result<CoefficientRing> {
        let classes = complement(&p, &ideal)?;
        let index: HashMap<Vector, usize> = classes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let products = classes
            .iter()
            .map(|a| {
                classes
                    .iter()
                    .map(|b| {
                        let s: Vector = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        index.get(&s).copied()
                    })
                    .collect()
            })
            .collect();
        Ok(CoefficientRing {
            p,
            ideal,
            classes,
            index,
            products,
        })
    }

    pub fn monoid(&self) -> &ClassMonoid {
        &self.p
    }

    pub fn ideal(&self) -> &CoArtinianIdeal {
        &self.ideal
    }

    /// `P \ I` in `(φ, lex)` order.
    pub fn classes(&self) -> &[Vector] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &Vector {
        &self.classes[i]
    }

    pub fn index_of(&self, a: &[i64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Index of `A + B`, or `None` if it lies in `I`.
    pub fn add_classes(&self, a: usize, b: usize) -> Option<usize> {
        self.products[a][b]
    }

    pub fn one(&self) -> Coef {
        match self.index_of(&vec![0; self.p.rank()]) {
            Some(i) => self.monomial(i, BigRational::one()),
            None => Coef::zero(),
        }
    }

    pub fn monomial(&self, class: usize, q: BigRational) -> Coef {
        let mut c = Coef::zero();
        c.add_term(class, &q);
        c
    }

    /// `t^A`, which is zero when `A ∈ I`.
    pub fn t(&self, a: &[i64]) -> Result<Coef> {
        if !self.p.contains(a) {
            return Err(CurveError::NotInMonoid(a.to_vec()));
        }
        Ok(match self.index_of(a) {
            Some(i) => self.monomial(i, BigRational::one()),
            None => Coef::zero(),
        })
    }

    fn check(&self, c: &Coef) -> Result<()> {
        match c.terms.keys().next_back() {
            Some(&k) if k >= self.classes.len() => Err(CurveError::RingMismatch),
            _ => Ok(()),
        }
    }

    pub fn add(&self, x: &Coef, y: &Coef) -> Result<Coef> {
        self.check(x)?;
        self.check(y)?;
        let mut out = x.clone();
        out.add_assign(y);
        Ok(out)
    }

    /// Product with monomials in `I` dropped.
    pub fn mul(&self, x: &Coef, y: &Coef) -> Result<Coef> {
        self.check(x)?;
        self.check(y)?;
        let mut out = Coef::zero();
        for (a, p) in x.terms() {
            for (b, q) in y.terms() {
                if let Some(c) = self.products[a][b] {
                    out.add_term(c, &(p * q));
                }
            }
        }
        Ok(out)
    }

    /// Terms as `N/D t^[a1,...]`, in class order; `0` when empty.
    pub fn format(&self, c: &Coef) -> String {
        if c.is_zero() {
            return "0".into();
        }
        c.terms()
            .map(|(k, q)| format!("{} {}", rational::format(q), format_class(&self.classes[k])))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn format_class(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("t^[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn truncated_square() {
        let p = ClassMonoid::new(2, vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap();
        let i = CoArtinianIdeal::threshold(&p, vec![1, 1], 3).unwrap();
        let ring = CoefficientRing::new(p, i).unwrap();
        let x = ring.add(&ring.one(), &ring.t(&[1, 0]).unwrap()).unwrap();
        let sq = ring.mul(&x, &x).unwrap();
        let mut expected = ring.one();
        expected.add_term(ring.index_of(&[1, 0]).unwrap(), &q(2));
        expected.add_term(ring.index_of(&[2, 0]).unwrap(), &q(1));
        assert_eq!(sq, expected);
        let cube = ring.mul(&sq, &x).unwrap();
        assert_eq!(cube.get(ring.index_of(&[2, 0]).unwrap()), q(3));
        assert_eq!(ring.t(&[3, 0]).unwrap(), Coef::zero());
        assert_eq!(ring.format(&ring.t(&[0, 1]).unwrap()), "1/1 t^[0,1]");
    }
}
