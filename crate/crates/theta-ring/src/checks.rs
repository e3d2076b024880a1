//! Checks of the ring axioms and gradings on computed products.

use crate::element::ThetaElement;
use crate::error::Result;
use crate::geometry::Geometry;
use crate::product::{multiply, ProductCache, ProductReport};
use cone_complex::IntegralPoint;
use curve_data::format_class;
use lattice_monoid::rational;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> CheckReport {
        CheckReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        match self.failures.first() {
            None => format!("{}: ok ({} checked)", self.name, self.checked),
            Some(f) => format!(
                "{}: FAILED ({} of {} checked), first: {f}",
                self.name,
                self.failures.len(),
                self.checked
            ),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "passed": self.passed(),
            "checked": self.checked,
            "failures": self.failures,
        })
    }
}

/// `θ_0 · θ_p = θ_p = θ_p · θ_0`.
pub fn check_unit(geo: &Geometry, points: &[IntegralPoint]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("unit");
    let zero = geo.complex.zero_point();
    for p in points {
        let expected = ThetaElement::theta(geo, p);
        for (a, b) in [(&zero, p), (p, &zero)] {
            rep.checked += 1;
            let got = multiply(geo, a, b)?.result;
            if got != expected {
                rep.failures.push(format!(
                    "theta{{{}}} * theta{{{}}} = {}",
                    geo.format_point(a),
                    geo.format_point(b),
                    got.format(geo)
                ));
            }
        }
    }
    Ok(rep)
}

/// `θ_p θ_q = θ_q θ_p` on all pairs.
pub fn check_commutativity(geo: &Geometry, points: &[IntegralPoint]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("commutativity");
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            rep.checked += 1;
            let x = multiply(geo, p, q)?.result;
            let y = multiply(geo, q, p)?.result;
            if x != y {
                rep.failures.push(format!(
                    "theta{{{}}} * theta{{{}}}: {} vs {}",
                    geo.format_point(p),
                    geo.format_point(q),
                    x.format(geo),
                    y.format(geo)
                ));
            }
        }
    }
    Ok(rep)
}

fn describe(geo: &Geometry, rep: &ProductReport, class: usize, r: &IntegralPoint) -> String {
    format!(
        "{} theta{{{}}} in theta{{{}}} * theta{{{}}}",
        format_class(geo.ring.class(class)),
        geo.format_point(r),
        geo.format_point(&rep.p1),
        geo.format_point(&rep.p2)
    )
}

/// Every nonzero `t^A θ_r` in `θ_p θ_q` has
/// `⟨r, D_i⟩ + D_i · A = ⟨p, D_i⟩ + ⟨q, D_i⟩` for all `i`.
pub fn check_torus_grading(geo: &Geometry, products: &[ProductReport]) -> CheckReport {
    let mut rep = CheckReport::new("torus grading");
    for pr in products {
        let p = geo.complex.pairings(&pr.p1);
        let q = geo.complex.pairings(&pr.p2);
        for c in pr.nonzero() {
            rep.checked += 1;
            let r = geo.complex.pairings(&c.r);
            let d = geo.classes.divisor_pairings(geo.ring.class(c.class));
            if let Some(i) = (0..r.len()).find(|&i| r[i] + d[i] != p[i] + q[i]) {
                rep.failures.push(format!(
                    "{} at {}: {} + {} ≠ {} + {}",
                    describe(geo, pr, c.class, &c.r),
                    geo.complex.divisors()[i],
                    r[i],
                    d[i],
                    p[i],
                    q[i]
                ));
            }
        }
    }
    rep
}

/// `deg r = deg p + deg q` on every nonzero contribution; nothing to check
/// for absolute geometries.
pub fn check_degree_grading(geo: &Geometry, products: &[ProductReport]) -> CheckReport {
    let mut rep = CheckReport::new("degree grading");
    let Some(rel) = &geo.relative else {
        return rep;
    };
    for pr in products {
        let expected = rel.degree(&geo.complex, &pr.p1) + rel.degree(&geo.complex, &pr.p2);
        for c in pr.nonzero() {
            rep.checked += 1;
            let found = rel.degree(&geo.complex, &c.r);
            if found != expected {
                rep.failures.push(format!(
                    "{}: degree {found}, expected {expected}",
                    describe(geo, pr, c.class, &c.r)
                ));
            }
        }
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesReport {
    pub check: CheckReport,
    /// `(d, p)` for the generators `u^d θ_p`, `⟨p, s⟩ ≤ d ≤ bound`.
    pub generators: Vec<(i64, IntegralPoint)>,
}

impl ReesReport {
    pub fn to_json(&self, geo: &Geometry) -> Value {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|(d, p)| json!({"d": d, "theta": geo.complex.point_data(p)}))
            .collect();
        json!({"check": self.check.to_json(), "generators": gens})
    }
}

/// `⟨p, s⟩ = Σ s_i ⟨p, D_i⟩`.
pub fn filtration_value(geo: &Geometry, s: &[i64], p: &IntegralPoint) -> i64 {
    geo.complex
        .pairings(p)
        .iter()
        .zip(s)
        .map(|(x, y)| x * y)
        .sum()
}

/// The filtration by `⟨·, s⟩` for a nonnegative divisor `s`: checks
/// `⟨p1, s⟩ + ⟨p2, s⟩ ≥ ⟨r, s⟩` on every nonzero contribution and lists
/// the Rees generators up to `bound`.
pub fn rees(
    geo: &Geometry,
    s: &[i64],
    products: &[ProductReport],
    points: &[IntegralPoint],
    bound: i64,
) -> ReesReport {
    let mut check = CheckReport::new("rees filtration");
    if s.len() != geo.divisor_count() || s.iter().any(|&x| x < 0) {
        check.failures.push(format!(
            "s must be {} nonnegative coefficients",
            geo.divisor_count()
        ));
        return ReesReport {
            check,
            generators: Vec::new(),
        };
    }
    for pr in products {
        let lhs = filtration_value(geo, s, &pr.p1) + filtration_value(geo, s, &pr.p2);
        for c in pr.nonzero() {
            check.checked += 1;
            let v = filtration_value(geo, s, &c.r);
            if v > lhs {
                check
                    .failures
                    .push(format!("{}: {lhs} < {v}", describe(geo, pr, c.class, &c.r)));
            }
        }
    }
    let mut generators = Vec::new();
    for p in points {
        for d in filtration_value(geo, s, p)..=bound {
            generators.push((d, p.clone()));
        }
    }
    generators.sort();
    ReesReport { check, generators }
}

/// Coefficients indexed by `(class, r)`.
pub type Expansion = BTreeMap<(usize, IntegralPoint), BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocReport {
    pub points: [IntegralPoint; 3],
    /// `Σ N^{A1}_{p1 p2 s} N^{A2}_{s p3 r}`.
    pub left: Expansion,
    /// `Σ N^{A1}_{p2 p3 s} N^{A2}_{p1 s r}`.
    pub right: Expansion,
    pub left_element: ThetaElement,
    pub right_element: ThetaElement,
}

impl AssocReport {
    pub fn identity_holds(&self) -> bool {
        self.left == self.right
    }

    pub fn elements_agree(&self) -> bool {
        self.left_element == self.right_element
    }

    pub fn passed(&self) -> bool {
        self.identity_holds() && self.elements_agree()
    }

    /// The first `(A, r)` where the two sides differ.
    pub fn first_difference(&self, geo: &Geometry) -> Option<String> {
        let zero = BigRational::zero();
        let keys: std::collections::BTreeSet<_> =
            self.left.keys().chain(self.right.keys()).collect();
        keys.into_iter().find_map(|k| {
            let l = self.left.get(k).unwrap_or(&zero);
            let r = self.right.get(k).unwrap_or(&zero);
            (l != r).then(|| {
                format!(
                    "{} theta{{{}}}: {} vs {}",
                    format_class(geo.ring.class(k.0)),
                    geo.format_point(&k.1),
                    rational::format(l),
                    rational::format(r)
                )
            })
        })
    }
}

fn accumulate(
    geo: &Geometry,
    out: &mut Expansion,
    first: &ProductReport,
    second: impl Fn(&IntegralPoint) -> Result<ProductReport>,
) -> Result<()> {
    for c1 in first.nonzero() {
        let pr = second(&c1.r)?;
        for c2 in pr.nonzero() {
            if let Some(a) = geo.ring.add_classes(c1.class, c2.class) {
                let e = out
                    .entry((a, c2.r.clone()))
                    .or_insert_with(BigRational::zero);
                *e += &c1.n * &c2.n;
                if e.is_zero() {
                    out.remove(&(a, c2.r.clone()));
                }
            }
        }
    }
    Ok(())
}

/// Both sides of the associativity identity for `(p1, p2, p3)`, and the
/// two products `(θ_{p1} θ_{p2}) θ_{p3}` and `θ_{p1} (θ_{p2} θ_{p3})`.
pub fn check_associativity(
    geo: &Geometry,
    p1: &IntegralPoint,
    p2: &IntegralPoint,
    p3: &IntegralPoint,
) -> Result<AssocReport> {
    let mut left = Expansion::new();
    accumulate(geo, &mut left, &multiply(geo, p1, p2)?, |s| {
        multiply(geo, s, p3)
    })?;
    let mut right = Expansion::new();
    accumulate(geo, &mut right, &multiply(geo, p2, p3)?, |s| {
        multiply(geo, p1, s)
    })?;
    let mut cache = ProductCache::new();
    let (t1, t2, t3) = (
        ThetaElement::theta(geo, p1),
        ThetaElement::theta(geo, p2),
        ThetaElement::theta(geo, p3),
    );
    let l12 = cache.multiply_elements(geo, &t1, &t2)?;
    let left_element = cache.multiply_elements(geo, &l12, &t3)?;
    let r23 = cache.multiply_elements(geo, &t2, &t3)?;
    let right_element = cache.multiply_elements(geo, &t1, &r23)?;
    Ok(AssocReport {
        points: [p1.clone(), p2.clone(), p3.clone()],
        left,
        right,
        left_element,
        right_element,
    })
}

/// Associativity on every triple of the given points.
pub fn check_associativity_all(geo: &Geometry, points: &[IntegralPoint]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("associativity");
    for p1 in points {
        for p2 in points {
            for p3 in points {
                rep.checked += 1;
                let a = check_associativity(geo, p1, p2, p3)?;
                if !a.passed() {
                    rep.failures.push(format!(
                        "({}, {}, {}): {}",
                        geo.format_point(p1),
                        geo.format_point(p2),
                        geo.format_point(p3),
                        a.first_difference(geo)
                            .unwrap_or_else(|| "products of elements differ".into())
                    ));
                }
            }
        }
    }
    Ok(rep)
}
