//! Relations among monomials in chosen theta functions, by exact linear
//! algebra over `Q` on the basis `t^A x^m`.

use crate::element::ThetaElement;
use crate::error::{Result, RingError};
use crate::geometry::Geometry;
use crate::presentation::{Monomial, Polynomial, RingPresentation};
use crate::product::ProductCache;
use cone_complex::IntegralPoint;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

type SparseVec = BTreeMap<usize, BigRational>;

fn axpy(v: &mut SparseVec, a: &BigRational, w: &SparseVec) {
    for (k, x) in w {
        let e = v.entry(*k).or_insert_with(BigRational::zero);
        *e += a * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Row echelon form keyed by pivot column; pivots are the smallest nonzero
/// column of each row and are normalized to 1.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut from = 0;
        loop {
            let next = v
                .range(from..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, x)| (*k, x.clone()));
            let Some((k, x)) = next else { break };
            axpy(&mut v, &-x, &self.rows[&k]);
            from = k + 1;
        }
        v
    }

    /// Adds `v` if it is independent; returns whether it was.
    fn insert(&mut self, v: &SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&k, x)) = v.iter().next() else {
            return false;
        };
        let inv = x.recip();
        let v: SparseVec = v.iter().map(|(c, y)| (*c, y * &inv)).collect();
        // keep rows fully reduced against the new pivot
        for row in self.rows.values_mut() {
            if let Some(y) = row.get(&k).cloned() {
                axpy(row, &-y, &v);
            }
        }
        self.rows.insert(k, v);
        true
    }
}

/// Kernel of the linear map sending column `j` to `images[j]`, as a reduced
/// echelon basis.
fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    // eliminate on [image | e_j] rows: combinations with zero image span the kernel
    let offset = images
        .iter()
        .filter_map(|v| v.keys().next_back())
        .max()
        .map_or(0, |m| m + 1);
    let mut ech = Echelon::default();
    let mut kern = Echelon::default();
    for (j, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.insert(offset + j, BigRational::from_integer(1.into()));
        let red = ech.reduce(&row);
        match red.keys().next() {
            Some(&k) if k < offset => {
                ech.insert(&red);
            }
            _ => {
                let v: SparseVec = red.into_iter().map(|(k, x)| (k - offset, x)).collect();
                kern.insert(&v);
            }
        }
    }
    kern.rows.into_values().collect()
}

/// All relations of degree `≤ bound` among monomials in `θ_{g_1}, ...,
/// θ_{g_n}` (variables `x1, ..., xn`), as a minimal list: a relation is kept
/// only if it is not an `S_I`-combination of monomial multiples of the
/// earlier ones. Monomials are evaluated left to right,
/// `x1^a x2^b ... = ((θ_{g1} θ_{g1}) ...) θ_{g2} ...`.
pub fn find_presentation(
    geo: &Geometry,
    generators: &[IntegralPoint],
    bound: u32,
) -> Result<RingPresentation> {
    let n = generators.len();
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut monos = Monomial::all_up_to(n, bound);
    monos.reverse();
    let classes = geo.ring.dim();
    let col = |m: usize, a: usize| m * classes + a;
    let mono_index: HashMap<Monomial, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    let mut cache = ProductCache::new();
    let mut values: HashMap<Monomial, ThetaElement> = HashMap::new();
    for m in monos.iter().rev() {
        let v = match m.0.iter().rposition(|&e| e > 0) {
            None => ThetaElement::theta(geo, &geo.complex.zero_point()),
            Some(i) => {
                let mut prev = m.clone();
                prev.0[i] -= 1;
                let g = ThetaElement::theta(geo, &generators[i]);
                cache.multiply_elements(geo, &values[&prev], &g)?
            }
        };
        values.insert(m.clone(), v);
    }

    let mut targets: HashMap<(IntegralPoint, usize), usize> = HashMap::new();
    let mut images: Vec<SparseVec> = Vec::with_capacity(monos.len() * classes);
    for m in &monos {
        for a in 0..classes {
            let v = values[m].scale(
                geo,
                &geo.ring.monomial(a, BigRational::from_integer(1.into())),
            );
            let mut img = SparseVec::new();
            for (p, k, q) in v.flat_terms() {
                let next = targets.len();
                let t = *targets.entry((p.clone(), k)).or_insert(next);
                img.insert(t, q.clone());
            }
            images.push(img);
        }
    }

    let mut rows = kernel(&images);
    // smallest leading monomial first, and within it the smallest class
    rows.sort_by_key(|r| {
        let k = *r.keys().next().expect("nonzero");
        (std::cmp::Reverse(k / classes), k % classes)
    });

    let mut span = Echelon::default();
    let mut relations: Vec<SparseVec> = Vec::new();
    for row in rows {
        if span.reduce(&row).is_empty() {
            continue;
        }
        let deg = row
            .keys()
            .map(|&c| monos[c / classes].degree())
            .max()
            .unwrap_or(0);
        for c in monos.iter().filter(|c| c.degree() + deg <= bound) {
            for b in 0..classes {
                let mut w = SparseVec::new();
                for (&k, x) in &row {
                    let (m, a) = (&monos[k / classes], k % classes);
                    if let Some(ab) = geo.ring.add_classes(a, b) {
                        w.insert(col(mono_index[&m.mul(c)], ab), x.clone());
                    }
                }
                span.insert(&w);
            }
        }
        relations.push(row);
    }

    let mut polys: Vec<Polynomial> = relations
        .iter()
        .map(|r| {
            let mut p = Polynomial::zero();
            for (&k, x) in r {
                p.add_term(
                    monos[k / classes].clone(),
                    &geo.ring.monomial(k % classes, x.clone()),
                );
            }
            p
        })
        .collect();
    polys.sort_by(|a, b| {
        let (la, lb) = (a.lead().expect("nonzero").0, b.lead().expect("nonzero").0);
        la.degree().cmp(&lb.degree()).then_with(|| lb.cmp(la))
    });
    RingPresentation::new(geo, names, generators.to_vec(), polys, true).map_err(|e| match e {
        RingError::Presentation(m) => {
            RingError::Presentation(format!("found relations cannot be used for rewriting: {m}"))
        }
        other => other,
    })
}
