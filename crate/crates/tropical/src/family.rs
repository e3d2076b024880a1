//! Types and families of tropical maps to a cone complex whose cones are
//! standard orthants on their divisor labels.
//!
//! Vertex maps `nu_v` are matrices: one row per coordinate of `bsigma(v)`,
//! each row a linear function on the base cone, i.e. a vector in `Z^rank`
//! paired with points of `omega = Hom(Q, R>=0)`.

use crate::error::{Result, TropError};
use crate::graph::{GraphData, LegLabel, TropGraph};
use cone_complex::{ConeComplex, GeometryData, IntegralPoint};
use lattice_monoid::linalg::{dot, is_zero, rank, Matrix, Vector};
use lattice_monoid::ToricMonoid;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseData {
    pub rank: usize,
    pub generators: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Geometry file holding the target complex, relative to this file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    pub graph: GraphData,
    pub bsigma: BTreeMap<String, String>,
    pub u: BTreeMap<String, Vector>,
    pub base: BaseData,
    pub nu: BTreeMap<String, Matrix>,
    pub lengths: BTreeMap<String, Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
}

/// Graph, cone assignment and contact orders. Contact orders are written in
/// the coordinates of the assigned cone.
#[derive(Clone, Debug)]
pub struct TropType {
    pub complex: ConeComplex,
    pub graph: TropGraph,
    pub vertex_cones: Vec<usize>,
    pub edge_cones: Vec<usize>,
    pub leg_cones: Vec<usize>,
    pub edge_u: Vec<Vector>,
    pub leg_u: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct TropFamily {
    pub name: Option<String>,
    pub geometry: Option<String>,
    pub ty: TropType,
    pub base: ToricMonoid,
    pub nu: Vec<Matrix>,
    pub lengths: Vec<Vector>,
    delta: Option<Vector>,
    /// Present iff the family carries a point constraint.
    pub r: Option<IntegralPoint>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn load_complex(path: &Path) -> Result<ConeComplex> {
    let text = std::fs::read_to_string(path).map_err(|source| TropError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(GeometryData::from_json(&text)?.complex()?)
}

fn labels(complex: &ConeComplex, cone: usize) -> &[usize] {
    &complex.cone(cone).labels
}

/// Embeds cone coordinates into the vector of pairings with all divisors.
pub fn to_global(complex: &ConeComplex, cone: usize, coords: &[i64]) -> Vector {
    let mut v = vec![0; complex.divisors().len()];
    for (&l, &x) in labels(complex, cone).iter().zip(coords) {
        v[l] = x;
    }
    v
}

pub fn support(v: &[i64]) -> BTreeSet<usize> {
    (0..v.len()).filter(|&i| v[i] != 0).collect()
}

impl TropType {
    pub fn labels(&self, cone: usize) -> &[usize] {
        labels(&self.complex, cone)
    }

    pub fn edge_u_global(&self, e: usize) -> Vector {
        to_global(&self.complex, self.edge_cones[e], &self.edge_u[e])
    }

    pub fn leg_u_global(&self, l: usize) -> Vector {
        to_global(&self.complex, self.leg_cones[l], &self.leg_u[l])
    }

    /// The contact order of the leg with this label, as a point.
    pub fn contact(&self, label: LegLabel) -> Option<Vector> {
        self.graph.leg_with(label).map(|l| self.leg_u_global(l))
    }

    fn check(&self, out: &mut Vec<String>) {
        let c = &self.complex;
        let g = &self.graph;
        let name = |k: usize| c.cone(k).id.clone();
        for (k, e) in g.edges().iter().enumerate() {
            let ec = self.edge_cones[k];
            for v in [e.from, e.to] {
                if !c.is_face(self.vertex_cones[v], ec) {
                    out.push(format!(
                        "edge {}: {} is not a face of {}",
                        e.name,
                        name(self.vertex_cones[v]),
                        name(ec)
                    ));
                }
            }
            let union: BTreeSet<usize> = [e.from, e.to]
                .iter()
                .flat_map(|&v| self.labels(self.vertex_cones[v]).iter().copied())
                .collect();
            if union != self.labels(ec).iter().copied().collect() {
                out.push(format!(
                    "edge {}: {} is not the smallest cone containing the edge",
                    e.name,
                    name(ec)
                ));
            }
        }
        for (k, l) in g.legs().iter().enumerate() {
            let lc = self.leg_cones[k];
            let vc = self.vertex_cones[l.vertex];
            if !c.is_face(vc, lc) {
                out.push(format!(
                    "leg {}: {} is not a face of {}",
                    l.name,
                    name(vc),
                    name(lc)
                ));
                continue;
            }
            let u = &self.leg_u[k];
            let vlabels = self.labels(vc);
            let mut union: BTreeSet<usize> = vlabels.iter().copied().collect();
            for (&lab, &x) in self.labels(lc).iter().zip(u) {
                if x > 0 || (x < 0 && l.bounded) {
                    union.insert(lab);
                }
                if x < 0 && !(l.bounded && vlabels.contains(&lab)) {
                    out.push(format!(
                        "leg {}: contact order leaves {} along {}",
                        l.name,
                        name(lc),
                        c.divisors()[lab]
                    ));
                }
            }
            if union != self.labels(lc).iter().copied().collect() {
                out.push(format!(
                    "leg {}: {} is not the smallest cone containing the leg",
                    l.name,
                    name(lc)
                ));
            }
        }
    }
}

impl TropFamily {
    pub fn from_data(data: &FamilyData, complex: &ConeComplex) -> Result<TropFamily> {
        let graph = TropGraph::from_data(&data.graph)?;
        let cone_of = |n: &str| -> Result<usize> {
            let id = data
                .bsigma
                .get(n)
                .ok_or_else(|| TropError::Input(format!("no cone assigned to {n:?}")))?;
            Ok(complex.cone_index(id)?)
        };
        let known: BTreeSet<&str> = graph
            .vertices()
            .iter()
            .map(String::as_str)
            .chain(graph.edges().iter().map(|e| e.name.as_str()))
            .chain(graph.legs().iter().map(|l| l.name.as_str()))
            .collect();
        for key in data
            .bsigma
            .keys()
            .chain(data.u.keys())
            .chain(data.nu.keys())
            .chain(data.lengths.keys())
        {
            if !known.contains(key.as_str()) {
                return Err(TropError::Input(format!("unknown name {key:?}")));
            }
        }
        let vertex_cones = graph
            .vertices()
            .iter()
            .map(|v| cone_of(v))
            .collect::<Result<Vec<_>>>()?;
        let edge_cones = graph
            .edges()
            .iter()
            .map(|e| cone_of(&e.name))
            .collect::<Result<Vec<_>>>()?;
        let leg_cones = graph
            .legs()
            .iter()
            .map(|l| cone_of(&l.name))
            .collect::<Result<Vec<_>>>()?;
        let u_of = |n: &str, cone: usize| -> Result<Vector> {
            let u = data
                .u
                .get(n)
                .ok_or_else(|| TropError::Input(format!("no contact order for {n:?}")))?;
            let dim = complex.cone(cone).dim();
            if u.len() != dim {
                return Err(TropError::Input(format!(
                    "contact order of {n:?} has {} entries, cone {} has dimension {dim}",
                    u.len(),
                    complex.cone(cone).id
                )));
            }
            Ok(u.clone())
        };
        let edge_u = graph
            .edges()
            .iter()
            .zip(&edge_cones)
            .map(|(e, &c)| u_of(&e.name, c))
            .collect::<Result<Vec<_>>>()?;
        let leg_u = graph
            .legs()
            .iter()
            .zip(&leg_cones)
            .map(|(l, &c)| u_of(&l.name, c))
            .collect::<Result<Vec<_>>>()?;
        let rk = data.base.rank;
        if rk == 0 || rk > 3 {
            return Err(TropError::Input(format!("base rank {rk} outside 1..=3")));
        }
        let base = ToricMonoid::new(rk, data.base.generators.clone())?;
        let vec_check = |what: String, v: &Vector| -> Result<()> {
            if v.len() != rk {
                return Err(TropError::Input(format!(
                    "{what} has {} entries, base rank is {rk}",
                    v.len()
                )));
            }
            Ok(())
        };
        let mut nu = Vec::new();
        for (v, &c) in graph.vertices().iter().zip(&vertex_cones) {
            let m = data.nu.get(v).cloned().unwrap_or_default();
            if m.len() != complex.cone(c).dim() {
                return Err(TropError::Input(format!(
                    "nu({v}) has {} rows, cone {} has dimension {}",
                    m.len(),
                    complex.cone(c).id,
                    complex.cone(c).dim()
                )));
            }
            for row in &m {
                vec_check(format!("nu({v}) row"), row)?;
            }
            nu.push(m);
        }
        let mut lengths = Vec::new();
        for e in graph.edges() {
            let l = data
                .lengths
                .get(&e.name)
                .ok_or_else(|| TropError::Input(format!("no length for edge {}", e.name)))?;
            vec_check(format!("length of {}", e.name), l)?;
            lengths.push(l.clone());
        }
        if let Some(d) = &data.delta {
            vec_check("delta".into(), d)?;
        }
        let r = data
            .r
            .as_deref()
            .map(|t| complex.parse_point(t))
            .transpose()?;
        if r.is_none() && data.delta.is_some() {
            return Err(TropError::Input(
                "delta given without a constraint point r".into(),
            ));
        }
        Ok(TropFamily {
            name: data.name.clone(),
            geometry: data.geometry.clone(),
            ty: TropType {
                complex: complex.clone(),
                graph,
                vertex_cones,
                edge_cones,
                leg_cones,
                edge_u,
                leg_u,
            },
            base,
            nu,
            lengths,
            delta: data.delta.clone(),
            r,
        })
    }

    pub fn from_json(text: &str, complex: &ConeComplex) -> Result<TropFamily> {
        let data: FamilyData = serde_json::from_str(text)
            .map_err(|e| TropError::Input(format!("family JSON: {e}")))?;
        Self::from_data(&data, complex)
    }

    /// Reads a family file and the geometry file it names.
    pub fn load(path: &Path) -> Result<TropFamily> {
        let text = std::fs::read_to_string(path).map_err(|source| TropError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let data: FamilyData = serde_json::from_str(&text)
            .map_err(|e| TropError::Input(format!("{}: {e}", path.display())))?;
        let geo = data.geometry.as_ref().ok_or_else(|| {
            TropError::Input(format!("{}: no geometry file named", path.display()))
        })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let complex = load_complex(&dir.join(geo))?;
        Self::from_data(&data, &complex)
    }

    pub fn to_data(&self) -> FamilyData {
        let c = &self.ty.complex;
        let g = &self.ty.graph;
        let id = |k: usize| c.cone(k).id.clone();
        let mut bsigma = BTreeMap::new();
        let mut u = BTreeMap::new();
        let mut nu = BTreeMap::new();
        let mut lengths = BTreeMap::new();
        for (k, v) in g.vertices().iter().enumerate() {
            bsigma.insert(v.clone(), id(self.ty.vertex_cones[k]));
            nu.insert(v.clone(), self.nu[k].clone());
        }
        for (k, e) in g.edges().iter().enumerate() {
            bsigma.insert(e.name.clone(), id(self.ty.edge_cones[k]));
            u.insert(e.name.clone(), self.ty.edge_u[k].clone());
            lengths.insert(e.name.clone(), self.lengths[k].clone());
        }
        for (k, l) in g.legs().iter().enumerate() {
            bsigma.insert(l.name.clone(), id(self.ty.leg_cones[k]));
            u.insert(l.name.clone(), self.ty.leg_u[k].clone());
        }
        FamilyData {
            name: self.name.clone(),
            geometry: self.geometry.clone(),
            graph: g.to_data(),
            bsigma,
            u,
            base: BaseData {
                rank: self.base.rank(),
                generators: self.base.generators().to_vec(),
            },
            nu,
            lengths,
            delta: self.delta.clone(),
            r: self.r.as_ref().map(|p| c.format_point(p)),
        }
    }

    /// The data with vertices, edges and legs sorted by name and every edge
    /// oriented from the smaller vertex name, for comparing families.
    pub fn canonical_data(&self) -> FamilyData {
        let mut d = self.to_data();
        d.name = None;
        d.geometry = None;
        d.graph.vertices.sort();
        for e in &mut d.graph.edges {
            if e.from > e.to {
                std::mem::swap(&mut e.from, &mut e.to);
                let u = d.u.get_mut(&e.name).expect("edge has u");
                u.iter_mut().for_each(|x| *x = -*x);
            }
        }
        d.graph.edges.sort_by(|a, b| a.name.cmp(&b.name));
        d.graph.legs.sort_by(|a, b| a.name.cmp(&b.name));
        d
    }

    pub fn complex(&self) -> &ConeComplex {
        &self.ty.complex
    }

    pub fn graph(&self) -> &TropGraph {
        &self.ty.graph
    }

    pub fn base_rank(&self) -> usize {
        self.base.rank()
    }

    /// Dimension of the base cone.
    pub fn base_dim(&self) -> usize {
        self.base.group_rank()
    }

    /// Ray generators of `omega`, the dual of the base monoid's cone.
    pub fn omega_rays(&self) -> Matrix {
        self.base.cone().normals().to_vec()
    }

    /// `nu_v` with one row per divisor, zero outside `bsigma(v)`.
    pub fn nu_global(&self, v: usize) -> Matrix {
        let rk = self.base_rank();
        let mut m = vec![vec![0; rk]; self.complex().divisors().len()];
        for (&l, row) in self
            .ty
            .labels(self.ty.vertex_cones[v])
            .iter()
            .zip(&self.nu[v])
        {
            m[l] = row.clone();
        }
        m
    }

    pub fn r_global(&self) -> Option<Vector> {
        self.r.as_ref().map(|p| self.complex().pairings(p))
    }

    /// The constraint functional: stored, or read off `nu_{v_out}` when
    /// `r != 0`. `None` when `r = 0` and none was given.
    pub fn delta(&self) -> Option<Vector> {
        if self.delta.is_some() {
            return self.delta.clone();
        }
        let r = self.r_global()?;
        let k = r.iter().position(|&x| x != 0)?;
        let o = self.ty.graph.leg_with(LegLabel::Out)?;
        let row = &self.nu_global(self.ty.graph.legs()[o].vertex)[k];
        if row.iter().any(|x| x % r[k] != 0) {
            return None;
        }
        Some(row.iter().map(|x| x / r[k]).collect())
    }

    pub fn stored_delta(&self) -> Option<&Vector> {
        self.delta.as_ref()
    }

    /// Checks every linear identity and cone condition of the family.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let ty = &self.ty;
        let g = &ty.graph;
        ty.check(&mut out);
        if !self.base.is_sharp() {
            out.push("base monoid is not sharp".into());
        }
        if !self.base.is_saturated() {
            out.push("base monoid is not saturated".into());
        }
        if self.base_dim() != self.base_rank() {
            out.push(format!(
                "base monoid spans a rank {} sublattice of Z^{}",
                self.base_dim(),
                self.base_rank()
            ));
        }
        let omega = self.omega_rays();
        for (k, v) in g.vertices().iter().enumerate() {
            for (row, &lab) in self.nu[k].iter().zip(ty.labels(ty.vertex_cones[k])) {
                let d = &self.complex().divisors()[lab];
                if is_zero(row) {
                    out.push(format!(
                        "vertex {v}: nu vanishes on {d}, so {} is not minimal",
                        self.complex().cone(ty.vertex_cones[k]).id
                    ));
                } else if omega.iter().any(|m| dot(row, m) < 0) {
                    out.push(format!("vertex {v}: nu leaves the cone along {d}"));
                }
            }
        }
        for (k, e) in g.edges().iter().enumerate() {
            let l = &self.lengths[k];
            if is_zero(l) || !self.base.contains(l) {
                out.push(format!(
                    "edge {}: length {l:?} is not a nonzero element of the base monoid",
                    e.name
                ));
            }
            let (a, b) = (self.nu_global(e.from), self.nu_global(e.to));
            let u = ty.edge_u_global(k);
            for (lab, ((ra, rb), x)) in a.iter().zip(&b).zip(&u).enumerate() {
                let ok = rb.iter().zip(ra).zip(l).all(|((p, q), s)| p - q == x * s);
                if !ok {
                    out.push(format!(
                        "edge {}: nu({}) - nu({}) differs from l u on {}",
                        e.name,
                        g.vertices()[e.to],
                        g.vertices()[e.from],
                        self.complex().divisors()[lab]
                    ));
                }
            }
        }
        self.check_constraint(&mut out);
        ValidationReport { violations: out }
    }

    fn check_constraint(&self, out: &mut Vec<String>) {
        let g = &self.ty.graph;
        let Some(r) = self.r_global() else {
            return;
        };
        let Some(o) = g.leg_with(LegLabel::Out) else {
            out.push("constraint point given but no out leg".into());
            return;
        };
        let leg = &g.legs()[o];
        let neg: Vector = r.iter().map(|x| -x).collect();
        if self.ty.leg_u_global(o) != neg {
            out.push("out leg: contact order is not -r".into());
        }
        if leg.bounded != !is_zero(&r) {
            out.push(format!(
                "out leg: must be {} for this r",
                if is_zero(&r) { "a ray" } else { "bounded" }
            ));
        }
        let r_cone = self.r.as_ref().expect("r present").cone();
        if !self.complex().is_face(r_cone, self.ty.leg_cones[o]) {
            out.push("out leg: its cone does not contain r".into());
        }
        let Some(delta) = self.delta() else {
            if !is_zero(&r) {
                out.push("nu(v_out) is not an integral multiple of r".into());
            }
            return;
        };
        if !self.base.contains(&delta) {
            out.push(format!("delta {delta:?} is not in the base monoid"));
        }
        let nu = self.nu_global(leg.vertex);
        for (k, row) in nu.iter().enumerate() {
            let want: Vector = delta.iter().map(|d| d * r[k]).collect();
            if *row != want {
                out.push(format!(
                    "nu(v_out) differs from delta r on {}",
                    self.complex().divisors()[k]
                ));
            }
        }
    }

    /// Rank of the map from the base to all positions, lengths and `delta`.
    pub fn tangent_rank(&self) -> usize {
        let mut rows: Matrix = self.nu.iter().flatten().cloned().collect();
        rows.extend(self.lengths.iter().cloned());
        if let Some(d) = self.delta() {
            rows.push(d);
        }
        rank(&rows)
    }
}
