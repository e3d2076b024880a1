//! Elements of `R_I`: finite sums `Σ c_p θ_p` with `c_p ∈ S_I`.

use crate::geometry::Geometry;
use cone_complex::IntegralPoint;
use curve_data::{format_class, Coef};
use lattice_monoid::rational;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaElement {
    terms: BTreeMap<IntegralPoint, Coef>,
}

impl ThetaElement {
    pub fn zero() -> ThetaElement {
        ThetaElement::default()
    }

    /// `θ_p` with coefficient `1 = t^0`.
    pub fn theta(geo: &Geometry, p: &IntegralPoint) -> ThetaElement {
        let mut x = ThetaElement::zero();
        x.add_term(p, &geo.ring.one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntegralPoint, &Coef)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &IntegralPoint) -> Coef {
        self.terms.get(p).cloned().unwrap_or_else(Coef::zero)
    }

    /// Coefficient of `t^A θ_p`, with `A` a class index.
    pub fn get(&self, p: &IntegralPoint, class: usize) -> BigRational {
        self.coefficient(p).get(class)
    }

    pub fn add_term(&mut self, p: &IntegralPoint, c: &Coef) {
        let e = self.terms.entry(p.clone()).or_insert_with(Coef::zero);
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(p);
        }
    }

    pub fn add_assign(&mut self, other: &ThetaElement) {
        for (p, c) in &other.terms {
            self.add_term(p, c);
        }
    }

    pub fn sub(&self, other: &ThetaElement) -> ThetaElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p, &c.neg());
        }
        out
    }

    /// Multiplication by a coefficient, truncated in `S_I`.
    pub fn scale(&self, geo: &Geometry, c: &Coef) -> ThetaElement {
        let mut out = ThetaElement::zero();
        for (p, d) in &self.terms {
            out.add_term(p, &geo.ring.mul(c, d).expect("coefficients of one ring"));
        }
        out
    }

    /// `(point, class, value)` in point order, then class order.
    pub fn flat_terms(&self) -> Vec<(&IntegralPoint, usize, &BigRational)> {
        let mut out = Vec::new();
        for (p, c) in &self.terms {
            for (k, q) in c.terms() {
                out.push((p, k, q));
            }
        }
        out
    }

    /// `N/D t^[..] theta{cone:coords}` terms joined by ` + `; `0` when empty.
    pub fn format(&self, geo: &Geometry) -> String {
        let parts: Vec<String> = self
            .flat_terms()
            .into_iter()
            .map(|(p, k, q)| {
                format!(
                    "{} {} theta{{{}}}",
                    rational::format(q),
                    format_class(geo.ring.class(k)),
                    geo.format_point(p)
                )
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self, geo: &Geometry) -> Value {
        Value::Array(
            self.flat_terms()
                .into_iter()
                .map(|(p, k, q)| {
                    json!({
                        "N": rational::format(q),
                        "A": geo.ring.class(k),
                        "theta": geo.complex.point_data(p),
                    })
                })
                .collect(),
        )
    }
}
