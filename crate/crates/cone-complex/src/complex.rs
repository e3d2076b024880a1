//! Cone complexes with one unimodular simplicial cone per stratum.

use crate::error::{ComplexError, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

/// A stratum as given in the geometry file. `parents` lists the strata one
/// label larger whose cones have this one as a facet.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumData {
    pub id: String,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parents: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrataPoset {
    pub divisors: Vec<String>,
    pub strata: Vec<StratumData>,
}

impl StrataPoset {
    /// Plain snc data: the zero stratum and one ray per divisor are added when
    /// missing, and parents are derived from label containment. Only valid
    /// when no two strata share a label set.
    pub fn auto_derive(
        divisors: Vec<String>,
        strata: Vec<(String, Vec<String>)>,
    ) -> Result<StrataPoset> {
        let mut sets: Vec<(String, Vec<String>)> = Vec::new();
        for (id, mut labels) in strata {
            labels.sort();
            if sets.iter().any(|(_, l)| *l == labels) {
                return Err(ComplexError::Inconsistent(format!(
                    "label set {labels:?} repeats; give parents explicitly"
                )));
            }
            sets.push((id, labels));
        }
        if !sets.iter().any(|(_, l)| l.is_empty()) {
            sets.insert(0, ("0".into(), vec![]));
        }
        for d in &divisors {
            if !sets.iter().any(|(_, l)| *l == [d.clone()]) {
                sets.push((d.clone(), vec![d.clone()]));
            }
        }
        let strata = sets
            .iter()
            .map(|(id, labels)| {
                let parents = sets
                    .iter()
                    .filter(|(_, other)| {
                        other.len() == labels.len() + 1 && labels.iter().all(|l| other.contains(l))
                    })
                    .map(|(pid, _)| pid.clone())
                    .collect();
                StratumData {
                    id: id.clone(),
                    labels: labels.clone(),
                    parents: Some(parents),
                }
            })
            .collect();
        Ok(StrataPoset { divisors, strata })
    }
}

#[derive(Clone, Debug)]
pub struct ConeData {
    pub id: String,
    /// Divisor indices, increasing. Coordinates of points follow this order.
    pub labels: Vec<usize>,
    /// `facets[k]` drops `labels[k]`.
    pub facets: Vec<usize>,
}

impl ConeData {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug)]
pub struct ConeComplex {
    divisors: Vec<String>,
    cones: Vec<ConeData>,
    zero: usize,
    rays: Vec<usize>,
}

/// A point with strictly positive coordinates on the labels of its cone,
/// which is therefore the smallest cone containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralPoint {
    cone: usize,
    coords: Vec<i64>,
}

impl IntegralPoint {
    pub fn cone(&self) -> usize {
        self.cone
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.coords.iter().sum()
    }
}

impl Ord for IntegralPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), self.cone, &self.coords).cmp(&(other.total(), other.cone, &other.coords))
    }
}

impl PartialOrd for IntegralPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// JSON form of a point: `{cone, coords}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointData {
    pub cone: String,
    pub coords: Vec<i64>,
}

impl ConeComplex {
    pub fn build(poset: &StrataPoset) -> Result<ConeComplex> {
        let divisors = poset.divisors.clone();
        let mut div_index = BTreeMap::new();
        for (i, d) in divisors.iter().enumerate() {
            if div_index.insert(d.clone(), i).is_some() {
                return Err(ComplexError::Inconsistent(format!(
                    "divisor {d:?} listed twice"
                )));
            }
        }
        let mut id_index = BTreeMap::new();
        let mut label_sets = Vec::new();
        for (k, s) in poset.strata.iter().enumerate() {
            if id_index.insert(s.id.clone(), k).is_some() {
                return Err(ComplexError::DuplicateId(s.id.clone()));
            }
            let mut labels = s
                .labels
                .iter()
                .map(|l| {
                    div_index
                        .get(l)
                        .copied()
                        .ok_or_else(|| ComplexError::UnknownLabel(l.clone()))
                })
                .collect::<Result<Vec<usize>>>()?;
            labels.sort();
            let before = labels.len();
            labels.dedup();
            if labels.len() != before {
                return Err(ComplexError::Inconsistent(format!(
                    "stratum {:?} repeats a label",
                    s.id
                )));
            }
            label_sets.push(labels);
        }
        let n = poset.strata.len();
        if poset.strata.iter().any(|s| s.parents.is_none()) {
            if poset.strata.iter().all(|s| s.parents.is_none()) {
                let sets = poset
                    .strata
                    .iter()
                    .map(|s| (s.id.clone(), s.labels.clone()))
                    .collect();
                let derived = StrataPoset::auto_derive(divisors.clone(), sets)?;
                return ConeComplex::build(&derived);
            }
            return Err(ComplexError::Inconsistent(
                "either every stratum lists parents or none does".into(),
            ));
        }
        // children[c] = cones having c as parent
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, s) in poset.strata.iter().enumerate() {
            for p in s.parents.as_deref().unwrap_or(&[]) {
                let pi = *id_index
                    .get(p)
                    .ok_or_else(|| ComplexError::UnknownCone(p.clone()))?;
                let (small, big) = (&label_sets[k], &label_sets[pi]);
                if big.len() != small.len() + 1 || !small.iter().all(|l| big.contains(l)) {
                    return Err(ComplexError::Inconsistent(format!(
                        "{:?} is not a parent of {:?}: labels must grow by one",
                        p, s.id
                    )));
                }
                if children[pi].contains(&k) {
                    return Err(ComplexError::Inconsistent(format!("parent {p:?} repeated")));
                }
                children[pi].push(k);
            }
        }
        let zeros: Vec<usize> = (0..n).filter(|&k| label_sets[k].is_empty()).collect();
        if zeros.len() != 1 {
            return Err(ComplexError::Inconsistent(format!(
                "expected exactly one stratum with no labels, found {}",
                zeros.len()
            )));
        }
        let mut cones = Vec::with_capacity(n);
        for k in 0..n {
            let labels = label_sets[k].clone();
            let mut facets = Vec::with_capacity(labels.len());
            for &l in &labels {
                let want: Vec<usize> = labels.iter().copied().filter(|&m| m != l).collect();
                let found: Vec<usize> = children[k]
                    .iter()
                    .copied()
                    .filter(|&c| label_sets[c] == want)
                    .collect();
                if found.len() != 1 {
                    return Err(ComplexError::Inconsistent(format!(
                        "cone {:?} has {} facets without label {:?}",
                        poset.strata[k].id,
                        found.len(),
                        divisors[l]
                    )));
                }
                facets.push(found[0]);
            }
            cones.push(ConeData {
                id: poset.strata[k].id.clone(),
                labels,
                facets,
            });
        }
        let mut rays = vec![usize::MAX; divisors.len()];
        for (k, c) in cones.iter().enumerate() {
            if c.labels.len() == 1 {
                if rays[c.labels[0]] != usize::MAX {
                    return Err(ComplexError::Inconsistent(format!(
                        "divisor {:?} has several rays",
                        divisors[c.labels[0]]
                    )));
                }
                rays[c.labels[0]] = k;
            }
        }
        if let Some(i) = rays.iter().position(|&r| r == usize::MAX) {
            return Err(ComplexError::Inconsistent(format!(
                "divisor {:?} has no ray",
                divisors[i]
            )));
        }
        let complex = ConeComplex {
            divisors,
            cones,
            zero: zeros[0],
            rays,
        };
        complex.check_commuting()?;
        Ok(complex)
    }

    fn check_commuting(&self) -> Result<()> {
        for c in &self.cones {
            for a in 0..c.labels.len() {
                for b in a + 1..c.labels.len() {
                    let via_a = self.drop_label(c.facets[a], c.labels[b]);
                    let via_b = self.drop_label(c.facets[b], c.labels[a]);
                    if via_a != via_b {
                        return Err(ComplexError::Inconsistent(format!(
                            "face maps of {:?} do not commute",
                            c.id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn drop_label(&self, cone: usize, label: usize) -> usize {
        let c = &self.cones[cone];
        let k = c
            .labels
            .iter()
            .position(|&l| l == label)
            .expect("label present");
        c.facets[k]
    }

    pub fn divisors(&self) -> &[String] {
        &self.divisors
    }

    pub fn divisor_index(&self, name: &str) -> Result<usize> {
        self.divisors
            .iter()
            .position(|d| d == name)
            .ok_or_else(|| ComplexError::UnknownLabel(name.into()))
    }

    pub fn cones(&self) -> &[ConeData] {
        &self.cones
    }

    pub fn cone(&self, k: usize) -> &ConeData {
        &self.cones[k]
    }

    pub fn cone_index(&self, id: &str) -> Result<usize> {
        self.cones
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| ComplexError::UnknownCone(id.into()))
    }

    pub fn zero_cone(&self) -> usize {
        self.zero
    }

    pub fn ray(&self, label: usize) -> usize {
        self.rays[label]
    }

    /// The face of `cone` spanned by the given labels, which must be a
    /// subset of its labels.
    pub fn face(&self, cone: usize, keep: &[usize]) -> usize {
        let mut c = cone;
        let labels = self.cones[cone].labels.clone();
        for l in labels {
            if !keep.contains(&l) {
                c = self.drop_label(c, l);
            }
        }
        c
    }

    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        let t = &self.cones[tau].labels;
        t.iter().all(|l| self.cones[sigma].labels.contains(l)) && self.face(sigma, t) == tau
    }

    /// All faces of `cone` (including itself), in index order.
    pub fn faces(&self, cone: usize) -> Vec<usize> {
        let labels = &self.cones[cone].labels;
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for mask in 0u64..(1 << labels.len()) {
            let keep: Vec<usize> = (0..labels.len())
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| labels[k])
                .collect();
            out.insert(self.face(cone, &keep));
        }
        out.into_iter().collect()
    }

    pub fn zero_point(&self) -> IntegralPoint {
        IntegralPoint {
            cone: self.zero,
            coords: Vec::new(),
        }
    }

    /// The point of `cone` with the given nonnegative coordinates, moved to
    /// the face spanned by its support.
    pub fn point(&self, cone: usize, coords: &[i64]) -> Result<IntegralPoint> {
        let c = self
            .cones
            .get(cone)
            .ok_or_else(|| ComplexError::UnknownCone(cone.to_string()))?;
        if coords.len() != c.labels.len() {
            return Err(ComplexError::InvalidPoint(format!(
                "cone {:?} needs {} coordinates, got {}",
                c.id,
                c.labels.len(),
                coords.len()
            )));
        }
        if coords.iter().any(|&x| x < 0) {
            return Err(ComplexError::InvalidPoint(format!(
                "negative coordinate in {coords:?}"
            )));
        }
        let keep: Vec<usize> = c
            .labels
            .iter()
            .zip(coords)
            .filter(|(_, &x)| x > 0)
            .map(|(&l, _)| l)
            .collect();
        let face = self.face(cone, &keep);
        Ok(IntegralPoint {
            cone: face,
            coords: coords.iter().copied().filter(|&x| x > 0).collect(),
        })
    }

    pub fn ray_generator(&self, label: usize) -> IntegralPoint {
        IntegralPoint {
            cone: self.rays[label],
            coords: vec![1],
        }
    }

    /// `⟨p, D_i⟩`.
    pub fn pairing(&self, p: &IntegralPoint, label: usize) -> Result<i64> {
        if label >= self.divisors.len() {
            return Err(ComplexError::UnknownLabel(label.to_string()));
        }
        let c = &self.cones[p.cone];
        Ok(c.labels
            .iter()
            .position(|&l| l == label)
            .map_or(0, |k| p.coords[k]))
    }

    /// Pairings with every divisor.
    pub fn pairings(&self, p: &IntegralPoint) -> Vec<i64> {
        let mut v = vec![0; self.divisors.len()];
        for (l, x) in self.cones[p.cone].labels.iter().zip(&p.coords) {
            v[*l] = *x;
        }
        v
    }

    /// Coordinates of `p` in a cone having `p`'s cone as a face.
    pub fn coords_in(&self, p: &IntegralPoint, sigma: usize) -> Option<Vec<i64>> {
        if !self.is_face(p.cone, sigma) {
            return None;
        }
        let pv = self.pairings(p);
        Some(self.cones[sigma].labels.iter().map(|&l| pv[l]).collect())
    }

    /// `p + q` computed inside `sigma`, when both lie in it.
    pub fn add_in_cone(
        &self,
        p: &IntegralPoint,
        q: &IntegralPoint,
        sigma: usize,
    ) -> Option<IntegralPoint> {
        let a = self.coords_in(p, sigma)?;
        let b = self.coords_in(q, sigma)?;
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Some(self.point(sigma, &sum).expect("nonnegative sum"))
    }

    /// For each minimal cone containing both points, that cone and the sum
    /// taken in it.
    pub fn sums_in_common_cones(
        &self,
        p: &IntegralPoint,
        q: &IntegralPoint,
    ) -> Vec<(usize, IntegralPoint)> {
        let mut union: Vec<usize> = self.cones[p.cone].labels.clone();
        union.extend(&self.cones[q.cone].labels);
        union.sort();
        union.dedup();
        let mut out: Vec<(usize, IntegralPoint)> = (0..self.cones.len())
            .filter(|&s| self.cones[s].labels == union)
            .filter_map(|s| self.add_in_cone(p, q, s).map(|r| (s, r)))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        out
    }

    /// Every point whose pairing vector is `v`: one per cone whose labels are
    /// the support of `v`.
    pub fn points_with_pairings(&self, v: &[i64]) -> Vec<IntegralPoint> {
        if v.len() != self.divisors.len() || v.iter().any(|&x| x < 0) {
            return Vec::new();
        }
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] > 0).collect();
        let coords: Vec<i64> = support.iter().map(|&i| v[i]).collect();
        let mut out: Vec<IntegralPoint> = (0..self.cones.len())
            .filter(|&s| self.cones[s].labels == support)
            .map(|s| IntegralPoint {
                cone: s,
                coords: coords.clone(),
            })
            .collect();
        out.sort();
        out
    }

    /// All points `p` with `Σ φ_i ⟨p, D_i⟩ ≤ d` in the given cones, ordered by
    /// `(φ(p), cone, coords)`.
    pub fn enumerate_points(
        &self,
        phi: &[i64],
        d: i64,
        cones: Option<&[usize]>,
    ) -> Result<Vec<IntegralPoint>> {
        if phi.len() != self.divisors.len() {
            return Err(ComplexError::InvalidPoint(format!(
                "functional has {} entries for {} divisors",
                phi.len(),
                self.divisors.len()
            )));
        }
        if let Some(i) = phi.iter().position(|&x| x <= 0) {
            return Err(ComplexError::DegenerateBound(self.divisors[i].clone()));
        }
        let all: Vec<usize> = (0..self.cones.len()).collect();
        let mut out = Vec::new();
        for &s in cones.unwrap_or(&all) {
            let weights: Vec<i64> = self.cones[s].labels.iter().map(|&l| phi[l]).collect();
            let mut cur = Vec::new();
            positive_vectors(&weights, d, &mut cur, &mut |coords| {
                out.push(IntegralPoint {
                    cone: s,
                    coords: coords.to_vec(),
                })
            });
        }
        let value = |p: &IntegralPoint| -> i64 {
            self.cones[p.cone]
                .labels
                .iter()
                .zip(&p.coords)
                .map(|(l, x)| phi[*l] * x)
                .sum()
        };
        out.sort_by(|a, b| {
            value(a)
                .cmp(&value(b))
                .then_with(|| (a.cone, &a.coords).cmp(&(b.cone, &b.coords)))
        });
        Ok(out)
    }

    /// `cone:c1,c2,...` with the cone's stratum id.
    pub fn format_point(&self, p: &IntegralPoint) -> String {
        let coords: Vec<String> = p.coords.iter().map(|x| x.to_string()).collect();
        format!("{}:{}", self.cones[p.cone].id, coords.join(","))
    }

    pub fn point_data(&self, p: &IntegralPoint) -> PointData {
        PointData {
            cone: self.cones[p.cone].id.clone(),
            coords: p.coords.clone(),
        }
    }

    pub fn point_from_data(&self, data: &PointData) -> Result<IntegralPoint> {
        let cone = self.cone_index(&data.cone)?;
        self.point(cone, &data.coords)
    }

    /// Parses `0`, `cone:c1,c2,...`, or a sum of ray generators such as
    /// `v1+2v2` (`v<i>` is the ray of the i-th divisor) or `D1+2D2` by
    /// divisor name. Sums must determine a unique cone.
    pub fn parse_point(&self, text: &str) -> Result<IntegralPoint> {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero_point());
        }
        if let Some((id, rest)) = text.split_once(':') {
            let cone = self.cone_index(id.trim())?;
            let coords = if rest.trim().is_empty() {
                Vec::new()
            } else {
                rest.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| ComplexError::InvalidPoint(text.into()))
                    })
                    .collect::<Result<Vec<i64>>>()?
            };
            return self.point(cone, &coords);
        }
        let mut v = vec![0i64; self.divisors.len()];
        for term in text.split('+') {
            let term = term.trim();
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let (k, name) = term.split_at(digits);
            let k: i64 = if k.is_empty() {
                1
            } else {
                k.parse()
                    .map_err(|_| ComplexError::InvalidPoint(text.into()))?
            };
            let name = name.trim_start_matches('*');
            let label = match self.divisor_index(name) {
                Ok(i) => i,
                Err(e) => match name.strip_prefix('v').and_then(|i| i.parse::<usize>().ok()) {
                    Some(i) if i >= 1 && i <= self.divisors.len() => i - 1,
                    _ => return Err(e),
                },
            };
            v[label] += k;
        }
        let mut pts = self.points_with_pairings(&v);
        match pts.len() {
            0 => Err(ComplexError::InvalidPoint(format!(
                "no cone contains {text}"
            ))),
            1 => Ok(pts.remove(0)),
            _ => Err(ComplexError::Ambiguous(text.into())),
        }
    }
}

fn positive_vectors(
    weights: &[i64],
    budget: i64,
    cur: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if cur.len() == weights.len() {
        emit(cur);
        return;
    }
    let w = weights[cur.len()];
    let rest: i64 = weights[cur.len() + 1..].iter().sum();
    let mut x = 1;
    while w * x + rest <= budget {
        cur.push(x);
        positive_vectors(weights, budget - w * x, cur, emit);
        cur.pop();
        x += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_divisor() {
        let poset = StrataPoset::auto_derive(names(&["D"]), vec![]).unwrap();
        let c = ConeComplex::build(&poset).unwrap();
        assert_eq!(c.cones().len(), 2);
        assert!(c.zero_point().is_zero());
        assert_eq!(c.parse_point("2v1").unwrap().coords(), &[2]);
    }

    #[test]
    fn positive_enumeration() {
        let mut got = Vec::new();
        positive_vectors(&[1, 2], 5, &mut Vec::new(), &mut |v| got.push(v.to_vec()));
        assert_eq!(got, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![3, 1]]);
    }
}
