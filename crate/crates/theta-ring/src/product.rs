//! Products of theta functions from structure constants.

use crate::element::ThetaElement;
use crate::error::{Result, RingError};
use crate::geometry::Geometry;
use cone_complex::IntegralPoint;
use invariants::Source;
use lattice_monoid::rational;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::HashMap;

/// One structure constant `N^A_{p1 p2 r}` that was looked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub class: usize,
    pub r: IntegralPoint,
    pub n: BigRational,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductReport {
    pub p1: IntegralPoint,
    pub p2: IntegralPoint,
    pub contributions: Vec<Contribution>,
    pub result: ThetaElement,
}

impl ProductReport {
    /// Contributions with `N ≠ 0`.
    pub fn nonzero(&self) -> impl Iterator<Item = &Contribution> {
        self.contributions.iter().filter(|c| !c.n.is_zero())
    }

    pub fn to_json(&self, geo: &Geometry) -> Value {
        let contributions: Vec<Value> = self
            .contributions
            .iter()
            .map(|c| {
                json!({
                    "A": geo.ring.class(c.class),
                    "r": geo.complex.point_data(&c.r),
                    "N": rational::format(&c.n),
                    "source": c.source.as_str(),
                })
            })
            .collect();
        json!({
            "p1": geo.complex.point_data(&self.p1),
            "p2": geo.complex.point_data(&self.p2),
            "contributions": contributions,
            "result": self.result.to_json(geo),
            "text": self.result.format(geo),
        })
    }
}

fn check_in_skeleton(geo: &Geometry, p: &IntegralPoint) -> Result<()> {
    if geo.skeleton.contains(p) {
        Ok(())
    } else {
        Err(RingError::OutsideSkeleton(geo.format_point(p)))
    }
}

/// `θ_{p1} · θ_{p2} = Σ_{A, r} N^A_{p1 p2 r} t^A θ_r` over `A ∈ P \ I` and
/// the candidate outputs of each `A`.
pub fn multiply(geo: &Geometry, p1: &IntegralPoint, p2: &IntegralPoint) -> Result<ProductReport> {
    check_in_skeleton(geo, p1)?;
    check_in_skeleton(geo, p2)?;
    let rules = geo.rules();
    let mut contributions = Vec::new();
    let mut result = ThetaElement::zero();
    for (k, a) in geo.ring.classes().iter().enumerate() {
        for r in rules.candidate_outputs(p1, p2, a) {
            let (n, source) = rules.get_n(a, p1, p2, &r, &geo.table)?;
            if !n.is_zero() {
                result.add_term(&r, &geo.ring.monomial(k, n.clone()));
            }
            contributions.push(Contribution {
                class: k,
                r,
                n,
                source,
            });
        }
    }
    Ok(ProductReport {
        p1: p1.clone(),
        p2: p2.clone(),
        contributions,
        result,
    })
}

/// Products of many pairs on up to `jobs` threads; the output order is the
/// input order.
pub fn multiply_pairs(
    geo: &Geometry,
    pairs: &[(IntegralPoint, IntegralPoint)],
    jobs: usize,
) -> Result<Vec<ProductReport>> {
    if jobs <= 1 {
        return pairs.iter().map(|(p, q)| multiply(geo, p, q)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| RingError::Scenario(e.to_string()))?;
    pool.install(|| pairs.par_iter().map(|(p, q)| multiply(geo, p, q)).collect())
}

/// Memoized products for repeated use.
#[derive(Default)]
pub struct ProductCache {
    products: HashMap<(IntegralPoint, IntegralPoint), ThetaElement>,
}

impl ProductCache {
    pub fn new() -> ProductCache {
        ProductCache::default()
    }

    pub fn product(
        &mut self,
        geo: &Geometry,
        p: &IntegralPoint,
        q: &IntegralPoint,
    ) -> Result<&ThetaElement> {
        let key = (p.clone(), q.clone());
        if !self.products.contains_key(&key) {
            let r = multiply(geo, p, q)?.result;
            self.products.insert(key.clone(), r);
        }
        Ok(&self.products[&key])
    }

    /// Bilinear extension of `multiply`.
    pub fn multiply_elements(
        &mut self,
        geo: &Geometry,
        x: &ThetaElement,
        y: &ThetaElement,
    ) -> Result<ThetaElement> {
        let mut out = ThetaElement::zero();
        for (p, c) in x.terms() {
            for (q, d) in y.terms() {
                let cd = geo.ring.mul(c, d)?;
                if cd.is_zero() {
                    continue;
                }
                let pq = self.product(geo, p, q)?.scale(geo, &cd);
                out.add_assign(&pq);
            }
        }
        Ok(out)
    }
}

pub fn multiply_elements(
    geo: &Geometry,
    x: &ThetaElement,
    y: &ThetaElement,
) -> Result<ThetaElement> {
    ProductCache::new().multiply_elements(geo, x, y)
}
