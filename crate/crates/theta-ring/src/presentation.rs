//! Polynomial presentations of `R_I`: variables standing for theta
//! functions, relations over `S_I`, and the monomial rule inside a cone.

use crate::checks::CheckReport;
use crate::element::ThetaElement;
use crate::error::{Result, RingError};
use crate::geometry::Geometry;
use cone_complex::IntegralPoint;
use curve_data::Coef;
use invariants::{InvariantTable, Policy};
use lattice_monoid::rational;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Exponent vector, ordered by degree and then lexicographically, so that
/// `x1 > x2 > ...` within a degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// All monomials in `n` variables of degree at most `bound`.
    pub fn all_up_to(n: usize, bound: u32) -> Vec<Monomial> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if cur.len() == n {
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur.push(e);
                rec(n, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, bound, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A polynomial over `S_I`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coef>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn monomial(m: Monomial, c: Coef) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter()
    }

    pub fn lead(&self) -> Option<(&Monomial, &Coef)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.lead().map_or(0, |(m, _)| m.degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coef) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Coef::zero);
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, geo: &Geometry, c: &Coef) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, d) in &self.terms {
            out.add_term(
                m.clone(),
                &geo.ring.mul(c, d).expect("coefficients of one ring"),
            );
        }
        out
    }

    pub fn mul_monomial(&self, q: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(q), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, geo: &Geometry, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(
                    m.mul(n),
                    &geo.ring.mul(c, d).expect("coefficients of one ring"),
                );
            }
        }
        out
    }

    fn pop_last(&mut self) -> Option<(Monomial, Coef)> {
        self.terms.pop_last()
    }

    /// Terms in decreasing monomial order, e.g. `x1*x2*x3 - t^[1,1] - t^[1,0]*x1`.
    pub fn format(&self, geo: &Geometry, names: &[String]) -> String {
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            for (k, q) in c.terms() {
                let mut factors = Vec::new();
                let class = geo.ring.class(k);
                let trivial = class.iter().all(|&x| x == 0) && m.degree() == 0;
                if !q.abs().is_one() || trivial {
                    factors.push(rational::format_short(&q.abs()));
                }
                if class.iter().any(|&x| x != 0) {
                    factors.push(curve_data::format_class(class));
                }
                if m.degree() > 0 {
                    factors.push(m.format(names));
                }
                let body = factors.join("*");
                if out.is_empty() {
                    out = if q.is_negative() {
                        format!("-{body}")
                    } else {
                        body
                    };
                } else {
                    out.push_str(if q.is_negative() { " - " } else { " + " });
                    out.push_str(&body);
                }
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// Parses sums of terms such as `2*t^[1,0]*x1^2*x3`; factors are
    /// separated by `*` or spaces.
    pub fn parse(geo: &Geometry, names: &[String], text: &str) -> Result<Polynomial> {
        let err = |m: String| RingError::Presentation(format!("{m} in {text:?}"));
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut negative = false;
        let mut after_sign = false;
        for ch in text.chars() {
            match ch {
                '+' | '-' if depth == 0 => {
                    if !cur.trim().is_empty() {
                        pieces.push((negative, std::mem::take(&mut cur)));
                    } else if after_sign || !pieces.is_empty() {
                        return Err(err("misplaced sign".into()));
                    }
                    cur.clear();
                    negative = ch == '-';
                    after_sign = true;
                }
                _ => {
                    match ch {
                        '[' => depth += 1,
                        ']' => depth -= 1,
                        _ => {}
                    }
                    if !ch.is_whitespace() {
                        after_sign = false;
                    }
                    cur.push(ch);
                }
            }
        }
        if cur.trim().is_empty() {
            return Err(err("missing term".into()));
        }
        pieces.push((negative, cur));
        let n = names.len();
        let mut poly = Polynomial::zero();
        for (neg, piece) in pieces {
            let mut q = BigRational::one();
            let mut coef = geo.ring.one();
            let mut mono = Monomial::one(n);
            for f in piece.replace('*', " ").split_whitespace() {
                if let Some(inner) = f.strip_prefix("t^[").and_then(|s| s.strip_suffix(']')) {
                    let a: Vec<i64> = if inner.trim().is_empty() {
                        Vec::new()
                    } else {
                        inner
                            .split(',')
                            .map(|x| {
                                x.trim()
                                    .parse::<i64>()
                                    .map_err(|_| err(format!("bad class {f:?}")))
                            })
                            .collect::<Result<_>>()?
                    };
                    if a.len() != geo.classes.rank() {
                        return Err(err(format!("class {f:?} has the wrong rank")));
                    }
                    coef = geo.ring.mul(&coef, &geo.ring.t(&a)?)?;
                } else if f.starts_with(|c: char| c.is_ascii_digit()) {
                    q *= rational::parse(f).ok_or_else(|| err(format!("bad number {f:?}")))?;
                } else {
                    let (name, e) = match f.split_once('^') {
                        Some((v, e)) => (
                            v,
                            e.parse::<u32>()
                                .map_err(|_| err(format!("bad exponent {f:?}")))?,
                        ),
                        None => (f, 1),
                    };
                    let i = names
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| err(format!("unknown variable {name:?}")))?;
                    mono.0[i] += e;
                }
            }
            if neg {
                q = -q;
            }
            poly.add_term(mono, &coef.scale(&q));
        }
        Ok(poly)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VariableData {
    pub name: String,
    pub point: String,
}

/// JSON form of a presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationData {
    pub variables: Vec<VariableData>,
    pub relations: Vec<String>,
    #[serde(default = "default_true")]
    pub monomial_rule: bool,
}

fn default_true() -> bool {
    true
}

type Rule = (Monomial, Polynomial);

#[derive(Clone, Debug)]
pub struct RingPresentation {
    names: Vec<String>,
    points: Vec<IntegralPoint>,
    relations: Vec<Polynomial>,
    /// Inter-reduced relations as rewrite rules `lead → rest`.
    rules: Vec<Rule>,
    monomial_rule: bool,
}

/// Divides by the leading coefficient, which must be a nonzero rational.
fn make_monic(geo: &Geometry, p: &Polynomial) -> Result<Polynomial> {
    let (m, c) = p.lead().expect("nonzero");
    let terms: Vec<(usize, &BigRational)> = c.terms().collect();
    let zero_class = geo.ring.index_of(&vec![0; geo.classes.rank()]);
    match terms.as_slice() {
        [(k, q)] if Some(*k) == zero_class => Ok(p.scale(geo, &geo.ring.one().scale(&q.recip()))),
        _ => Err(RingError::Presentation(format!(
            "leading coefficient {} of {} is not invertible",
            geo.ring.format(c),
            m.format(
                &(0..m.0.len())
                    .map(|i| format!("x{}", i + 1))
                    .collect::<Vec<_>>()
            )
        ))),
    }
}

fn to_rule(p: &Polynomial) -> Rule {
    let mut rest = p.clone();
    let (lead, _) = rest.pop_last().expect("nonzero");
    let mut rhs = Polynomial::zero();
    for (m, c) in rest.terms() {
        rhs.add_term(m.clone(), &c.neg());
    }
    (lead, rhs)
}

fn reduce(geo: &Geometry, rules: &[Rule], p: &Polynomial) -> Polynomial {
    let mut p = p.clone();
    let mut done = Polynomial::zero();
    while let Some((m, c)) = p.pop_last() {
        match rules.iter().find(|(l, _)| l.divides(&m)) {
            Some((l, rhs)) => {
                let r = rhs.mul_monomial(&m.div(l)).scale(geo, &c);
                p.add_assign(&r);
            }
            None => done.add_term(m, &c),
        }
    }
    done
}

impl RingPresentation {
    pub fn new(
        geo: &Geometry,
        names: Vec<String>,
        points: Vec<IntegralPoint>,
        relations: Vec<Polynomial>,
        monomial_rule: bool,
    ) -> Result<RingPresentation> {
        if names.len() != points.len() {
            return Err(RingError::Presentation("one point per variable".into()));
        }
        let mut seen = BTreeSet::new();
        for (n, p) in names.iter().zip(&points) {
            if n == "t" || n.is_empty() || !n.starts_with(|c: char| c.is_alphabetic()) {
                return Err(RingError::Presentation(format!("bad variable name {n:?}")));
            }
            if !seen.insert(n.clone()) {
                return Err(RingError::Presentation(format!(
                    "variable {n} declared twice"
                )));
            }
            if p.is_zero() || !geo.skeleton.contains(p) {
                return Err(RingError::Presentation(format!(
                    "variable {n} must be a nonzero point of the skeleton"
                )));
            }
        }
        let mut rels: Vec<Polynomial> = relations
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| make_monic(geo, r))
            .collect::<Result<_>>()?;
        for _ in 0..1000 {
            let mut changed = false;
            for i in 0..rels.len() {
                let others: Vec<Rule> = rels
                    .iter()
                    .enumerate()
                    .filter(|(j, r)| *j != i && !r.is_zero())
                    .map(|(_, r)| to_rule(r))
                    .collect();
                if rels[i].is_zero() {
                    continue;
                }
                let nf = reduce(geo, &others, &rels[i]);
                if nf != rels[i] {
                    changed = true;
                    rels[i] = if nf.is_zero() {
                        nf
                    } else {
                        make_monic(geo, &nf)?
                    };
                }
            }
            rels.retain(|r| !r.is_zero());
            if !changed {
                break;
            }
        }
        let rules = rels.iter().map(to_rule).collect();
        Ok(RingPresentation {
            names,
            points,
            relations,
            rules,
            monomial_rule,
        })
    }

    pub fn from_data(geo: &Geometry, data: &PresentationData) -> Result<RingPresentation> {
        let names: Vec<String> = data.variables.iter().map(|v| v.name.clone()).collect();
        let points = data
            .variables
            .iter()
            .map(|v| geo.point(&v.point))
            .collect::<Result<Vec<_>>>()?;
        let relations = data
            .relations
            .iter()
            .map(|r| Polynomial::parse(geo, &names, r))
            .collect::<Result<Vec<_>>>()?;
        RingPresentation::new(geo, names, points, relations, data.monomial_rule)
    }

    pub fn from_json(geo: &Geometry, text: &str) -> Result<RingPresentation> {
        let data: PresentationData =
            serde_json::from_str(text).map_err(|e| RingError::Presentation(e.to_string()))?;
        RingPresentation::from_data(geo, &data)
    }

    pub fn to_data(&self, geo: &Geometry) -> PresentationData {
        PresentationData {
            variables: self
                .names
                .iter()
                .zip(&self.points)
                .map(|(n, p)| VariableData {
                    name: n.clone(),
                    point: geo.format_point(p),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.format(geo, &self.names))
                .collect(),
            monomial_rule: self.monomial_rule,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn points(&self) -> &[IntegralPoint] {
        &self.points
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// The rewrite rules as relations `lead − rest`.
    pub fn reduced_relations(&self, geo: &Geometry) -> Vec<Polynomial> {
        self.rules
            .iter()
            .map(|(l, rhs)| {
                let mut p = Polynomial::monomial(l.clone(), geo.ring.one());
                for (m, c) in rhs.terms() {
                    p.add_term(m.clone(), &c.neg());
                }
                p
            })
            .collect()
    }

    pub fn format_rules(&self, geo: &Geometry) -> Vec<String> {
        self.rules
            .iter()
            .map(|(l, rhs)| {
                format!(
                    "{} -> {}",
                    l.format(&self.names),
                    rhs.format(geo, &self.names)
                )
            })
            .collect()
    }

    pub fn parse(&self, geo: &Geometry, text: &str) -> Result<Polynomial> {
        Polynomial::parse(geo, &self.names, text)
    }

    pub fn format(&self, geo: &Geometry, p: &Polynomial) -> String {
        p.format(geo, &self.names)
    }

    pub fn normal_form(&self, geo: &Geometry, p: &Polynomial) -> Polynomial {
        reduce(geo, &self.rules, p)
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        !self.rules.iter().any(|(l, _)| l.divides(m))
    }

    /// The theta point of a monomial: the variables' points added inside the
    /// unique skeleton cone that holds them.
    pub fn monomial_point(&self, geo: &Geometry, m: &Monomial) -> Result<IntegralPoint> {
        if !self.monomial_rule && m.degree() > 1 {
            return Err(RingError::Presentation(format!(
                "monomial {} has no theta point without the monomial rule",
                m.format(&self.names)
            )));
        }
        let mut cur = geo.complex.zero_point();
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                let sums: Vec<IntegralPoint> = geo
                    .complex
                    .sums_in_common_cones(&cur, &self.points[i])
                    .into_iter()
                    .filter(|(s, _)| geo.skeleton.contains_cone(*s))
                    .map(|(_, p)| p)
                    .collect();
                match sums.as_slice() {
                    [p] => cur = p.clone(),
                    _ => {
                        return Err(RingError::Presentation(format!(
                            "monomial {} does not lie in a single cone",
                            m.format(&self.names)
                        )))
                    }
                }
            }
        }
        Ok(cur)
    }

    /// Rewrites to normal form and reads off theta functions.
    pub fn eval(&self, geo: &Geometry, p: &Polynomial) -> Result<ThetaElement> {
        let nf = self.normal_form(geo, p);
        let mut out = ThetaElement::zero();
        for (m, c) in nf.terms() {
            out.add_term(&self.monomial_point(geo, m)?, c);
        }
        Ok(out)
    }

    pub fn eval_text(&self, geo: &Geometry, text: &str) -> Result<ThetaElement> {
        self.eval(geo, &self.parse(geo, text)?)
    }

    /// For every monomial of degree `≤ bound` that several rules can rewrite,
    /// all first steps must lead to the same normal form.
    pub fn check_confluence(&self, geo: &Geometry, bound: u32) -> Result<CheckReport> {
        let mut rep = CheckReport {
            name: "confluence".into(),
            checked: 0,
            failures: Vec::new(),
        };
        for m in Monomial::all_up_to(self.names.len(), bound) {
            let applicable: Vec<&Rule> = self.rules.iter().filter(|(l, _)| l.divides(&m)).collect();
            if applicable.len() < 2 {
                continue;
            }
            rep.checked += 1;
            let forms: Vec<Polynomial> = applicable
                .iter()
                .map(|(l, rhs)| self.normal_form(geo, &rhs.mul_monomial(&m.div(l))))
                .collect();
            if let Some(k) = (1..forms.len()).find(|&k| forms[k] != forms[0]) {
                return Err(RingError::NotConfluent(format!(
                    "{} rewrites by {} -> {} to {} and by {} -> {} to {}",
                    m.format(&self.names),
                    applicable[0].0.format(&self.names),
                    applicable[0].1.format(geo, &self.names),
                    forms[0].format(geo, &self.names),
                    applicable[k].0.format(&self.names),
                    applicable[k].1.format(geo, &self.names),
                    forms[k].format(geo, &self.names)
                )));
            }
        }
        Ok(rep)
    }

    /// A normal monomial whose theta point is `p`.
    pub fn theta_monomial(&self, geo: &Geometry, p: &IntegralPoint) -> Result<Monomial> {
        let n = self.names.len();
        let usable: Vec<(usize, Vec<i64>)> = (0..n)
            .filter_map(|i| {
                geo.complex
                    .coords_in(&self.points[i], p.cone())
                    .map(|c| (i, c))
            })
            .collect();
        let mut found: Vec<Monomial> = Vec::new();
        let target = p.coords().to_vec();
        fn rec(
            k: usize,
            usable: &[(usize, Vec<i64>)],
            left: &mut Vec<i64>,
            cur: &mut Monomial,
            found: &mut Vec<Monomial>,
        ) {
            if left.iter().all(|&x| x == 0) {
                found.push(cur.clone());
                return;
            }
            if k == usable.len() {
                return;
            }
            let (i, c) = &usable[k];
            let mut e = 0;
            loop {
                rec(k + 1, usable, left, cur, found);
                if c.iter().all(|&x| x == 0) || left.iter().zip(c).any(|(l, x)| l < x) {
                    break;
                }
                for (l, x) in left.iter_mut().zip(c) {
                    *l -= x;
                }
                cur.0[*i] += 1;
                e += 1;
            }
            for (l, x) in left.iter_mut().zip(c) {
                *l += x * e;
            }
            cur.0[*i] -= e as u32;
        }
        rec(
            0,
            &usable,
            &mut target.clone(),
            &mut Monomial::one(n),
            &mut found,
        );
        found.sort();
        found.dedup();
        for m in found {
            if self.is_normal(&m) && self.monomial_point(geo, &m).ok().as_ref() == Some(p) {
                return Ok(m);
            }
        }
        Err(RingError::Presentation(format!(
            "theta{{{}}} is not a normal monomial in the variables",
            geo.format_point(p)
        )))
    }

    /// Structure constants read off from the presentation for all pairs of
    /// nonzero skeleton points with `φ ≤ bound`. Every candidate `(A, r)`
    /// with `A ≠ 0` and `A·c1 = 0` gets an entry, zeros included.
    pub fn derive_table(&self, geo: &Geometry, bound: i64) -> Result<InvariantTable> {
        let rules = geo.rules();
        let pts: Vec<IntegralPoint> = geo
            .points_within(bound)?
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        let mut mono: HashMap<IntegralPoint, Monomial> = HashMap::new();
        for p in &pts {
            mono.insert(p.clone(), self.theta_monomial(geo, p)?);
        }
        let mut table = InvariantTable::new(Policy::Strict);
        for (i, p1) in pts.iter().enumerate() {
            for p2 in &pts[i..] {
                let m = mono[p1].mul(&mono[p2]);
                let el = self.eval(geo, &Polynomial::monomial(m, geo.ring.one()))?;
                let mut seen: BTreeSet<(IntegralPoint, usize)> = BTreeSet::new();
                let describe = |r: &IntegralPoint, k: usize| {
                    format!(
                        "{} theta{{{}}} in theta{{{}}} * theta{{{}}}",
                        curve_data::format_class(geo.ring.class(k)),
                        geo.format_point(r),
                        geo.format_point(p1),
                        geo.format_point(p2)
                    )
                };
                for (k, a) in geo.ring.classes().iter().enumerate() {
                    let zero_class = a.iter().all(|&x| x == 0);
                    if !zero_class && geo.classes.c1_pairing(a) != 0 {
                        continue;
                    }
                    for r in rules.candidate_outputs(p1, p2, a) {
                        let n = el.get(&r, k);
                        if zero_class {
                            if n != rules.constant_term(p1, p2, &r) {
                                return Err(RingError::Presentation(format!(
                                    "{} disagrees with the constant-map value",
                                    describe(&r, k)
                                )));
                            }
                        } else {
                            table.insert(&rules, a, p1, p2, &r, n).map_err(|rule| {
                                RingError::Presentation(format!("{}: {rule}", describe(&r, k)))
                            })?;
                        }
                        seen.insert((r, k));
                    }
                }
                if let Some((r, k, _)) = el
                    .flat_terms()
                    .into_iter()
                    .find(|(r, k, _)| !seen.contains(&((*r).clone(), *k)))
                {
                    return Err(RingError::Presentation(format!(
                        "{} is not a candidate output",
                        describe(r, k)
                    )));
                }
            }
        }
        Ok(table)
    }
}
