//! Splitting edges, tails, and cutting a four-pointed family in two.

use crate::error::{Result, TropError};
use crate::family::{FamilyData, TropFamily};
use crate::graph::{BoundaryClass, Chain, EdgeData, LegData, LegLabel};
use lattice_monoid::linalg::{is_zero, rank, Matrix, Vector};
use lattice_monoid::Cone;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailClass {
    TailFree,
    Terminal,
    Internal,
}

impl TailClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TailClass::TailFree => "tail_free",
            TailClass::Terminal => "terminal",
            TailClass::Internal => "internal",
        }
    }
}

impl fmt::Display for TailClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The chain with lengths `l_i` and tangent vectors `u_i` oriented from
/// `v_i` to `v_(i+1)`, as pairings with all divisors.
#[derive(Clone, Debug)]
pub struct ChainData {
    pub chain: Chain,
    pub lengths: Vec<Vector>,
    pub u: Vec<Vector>,
}

impl ChainData {
    pub fn total_length(&self) -> Vector {
        let mut l = vec![0; self.lengths.first().map_or(0, Vec::len)];
        for x in &self.lengths {
            for (a, b) in l.iter_mut().zip(x) {
                *a += b;
            }
        }
        l
    }
}

fn independent(a: &[i64], b: &[i64]) -> bool {
    rank(&[a.to_vec(), b.to_vec()]) == 2
}

impl TropFamily {
    pub fn chain_data(&self) -> Result<ChainData> {
        let chain = self.graph().chain()?;
        let lengths = chain
            .edges
            .iter()
            .map(|&(e, _)| self.lengths[e].clone())
            .collect();
        let u = chain
            .edges
            .iter()
            .map(|&(e, forward)| {
                let u = self.ty.edge_u_global(e);
                if forward {
                    u
                } else {
                    u.iter().map(|x| -x).collect()
                }
            })
            .collect();
        Ok(ChainData { chain, lengths, u })
    }

    fn split_chain(&self) -> Result<ChainData> {
        let cd = self.chain_data()?;
        match cd.chain.class {
            BoundaryClass::X12 | BoundaryClass::X23 => Ok(cd),
            c => Err(TropError::NotApplicable(format!("boundary class {c}"))),
        }
    }

    fn require_delta(&self) -> Result<Vector> {
        self.delta()
            .ok_or_else(|| TropError::NotApplicable("the family has no delta".into()))
    }

    pub fn has_terminal_tail(&self) -> Result<bool> {
        self.graph().has_terminal_tail()
    }
}

/// Chain positions (from 1) of the edges whose length is independent of `delta`.
pub fn splitting_edges(fam: &TropFamily) -> Result<Vec<usize>> {
    let cd = fam.split_chain()?;
    let delta = fam.require_delta()?;
    Ok((0..cd.lengths.len())
        .filter(|&i| independent(&cd.lengths[i], &delta))
        .map(|i| i + 1)
        .collect())
}

pub fn classify_tails(fam: &TropFamily) -> Result<TailClass> {
    fam.split_chain()?;
    if fam.has_terminal_tail()? {
        return Ok(TailClass::Terminal);
    }
    match splitting_edges(fam)?.len() {
        0 => Err(TropError::Assumption(
            "every chain length is proportional to delta, so the image of (l, delta) is a ray"
                .into(),
        )),
        1 => Ok(TailClass::TailFree),
        _ => Ok(TailClass::Internal),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AssumptionReport {
    pub class: String,
    pub base_dim: usize,
    pub universal_dim: usize,
    pub tangent_rank: usize,
    /// The image of `(l, delta)` is two-dimensional and contains `l*`.
    pub image_ok: bool,
}

impl AssumptionReport {
    pub fn failure(&self) -> Option<String> {
        if self.base_dim != 2 {
            return Some(format!("base cone has dimension {}, not 2", self.base_dim));
        }
        if self.universal_dim != 2 || self.tangent_rank != 2 {
            return Some(format!(
                "not miniversal: universal cone has dimension {}, tangent map rank {}",
                self.universal_dim, self.tangent_rank
            ));
        }
        if !self.image_ok {
            return Some(
                "the image of (l, delta) is not a two-dimensional cone containing l*".into(),
            );
        }
        None
    }

    pub fn holds(&self) -> bool {
        self.failure().is_none()
    }
}

pub fn check_assumptions(fam: &TropFamily) -> Result<AssumptionReport> {
    let cd = fam.split_chain()?;
    let delta = fam.require_delta()?;
    let l = cd.total_length();
    let image: Matrix = fam
        .omega_rays()
        .iter()
        .map(|m| {
            vec![
                lattice_monoid::linalg::dot(&l, m),
                lattice_monoid::linalg::dot(&delta, m),
            ]
        })
        .collect();
    let cone = Cone::new(2, &image);
    Ok(AssumptionReport {
        class: cd.chain.class.to_string(),
        base_dim: fam.base_dim(),
        universal_dim: fam.universal_cone().dim,
        tangent_rank: fam.tangent_rank(),
        image_ok: cone.dim() == 2 && cone.contains(&[1, 0]),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingEdge {
    /// Position along the chain, from 1.
    pub index: usize,
    pub edge: String,
    /// `u_i` in the coordinates of `bsigma(E_i)`, oriented along the chain.
    pub s: Vector,
    pub lengths_before_proportional: bool,
    pub independent: bool,
    pub in_cone: bool,
}

/// Whether `u` lies in the span of the image of `omega` under `nu`.
fn tangent(nu: &Matrix, u: &[i64]) -> bool {
    let rk = nu.first().map_or(0, Vec::len);
    let cols: Matrix = (0..rk)
        .map(|j| nu.iter().map(|row| row[j]).collect())
        .collect();
    let mut with = cols.clone();
    with.push(u.to_vec());
    rank(&with) == rank(&cols)
}

/// Chain positions `i` with `u_i` tangent to `tau_(i+1)`.
pub fn tangent_edges(fam: &TropFamily) -> Result<Vec<usize>> {
    let cd = fam.chain_data()?;
    Ok((0..cd.u.len())
        .filter(|&i| tangent(&fam.nu_global(cd.chain.vertices[i + 1]), &cd.u[i]))
        .map(|i| i + 1)
        .collect())
}

pub fn find_splitting_edge(fam: &TropFamily) -> Result<SplittingEdge> {
    let report = check_assumptions(fam)?;
    if let Some(f) = report.failure() {
        return Err(TropError::Assumption(f));
    }
    if fam.has_terminal_tail()? {
        return Err(TropError::TerminalTail);
    }
    let found = tangent_edges(fam)?;
    if found.len() != 1 {
        return Err(TropError::NotUnique(found));
    }
    let i = found[0];
    let cd = fam.chain_data()?;
    let delta = fam.require_delta()?;
    let (e, forward) = cd.chain.edges[i - 1];
    let s: Vector = if forward {
        fam.ty.edge_u[e].clone()
    } else {
        fam.ty.edge_u[e].iter().map(|x| -x).collect()
    };
    let out = SplittingEdge {
        index: i,
        edge: fam.graph().edges()[e].name.clone(),
        lengths_before_proportional: cd.lengths[..i - 1].iter().all(|l| !independent(l, &delta)),
        independent: independent(&cd.lengths[i - 1], &delta),
        in_cone: s.iter().all(|&x| x >= 0),
        s,
    };
    let failed = [
        (
            out.lengths_before_proportional,
            "(1) earlier lengths proportional to delta",
        ),
        (out.independent, "(2) length independent of delta"),
        (out.in_cone, "(3) tangent vector in its cone"),
    ];
    if let Some((_, p)) = failed.iter().find(|(ok, _)| !ok) {
        return Err(TropError::Property {
            index: i,
            property: p.to_string(),
        });
    }
    Ok(out)
}

pub fn in_leg_name(edge: &str) -> String {
    format!("{edge}/in")
}

pub fn out_leg_name(edge: &str) -> String {
    format!("{edge}/out")
}

/// Cuts the chain edge `i`. The first family holds the two legs next to `w`
/// and a new puncture of contact `-s`; the second holds the rest, the
/// constraint, and a new leg of contact `s`, where `s = u_i`.
pub fn split_at_edge(fam: &TropFamily, i: usize) -> Result<(TropFamily, TropFamily)> {
    let cd = fam.split_chain()?;
    if i == 0 || i > cd.lengths.len() {
        return Err(TropError::Input(format!("chain has no edge {i}")));
    }
    if !splitting_edges(fam)?.contains(&i) {
        return Err(TropError::NotSplitting(i));
    }
    let (e, forward) = cd.chain.edges[i - 1];
    let s: Vector = if forward {
        fam.ty.edge_u[e].clone()
    } else {
        fam.ty.edge_u[e].iter().map(|x| -x).collect()
    };
    if s.iter().any(|&x| x < 0) {
        return Err(TropError::Property {
            index: i,
            property: "(3) tangent vector in its cone".into(),
        });
    }
    let g = fam.graph();
    let (a, b) = (cd.chain.vertices[i - 1], cd.chain.vertices[i]);
    let data = fam.to_data();
    let edge_name = g.edges()[e].name.clone();
    let cone = data.bsigma[&edge_name].clone();
    let neg: Vector = s.iter().map(|x| -x).collect();
    let far = restrict(&data, &g.component(b, e), &edge_name);
    let near = restrict(&data, &g.component(a, e), &edge_name);
    let mut far = far;
    far.graph.legs.push(LegData {
        name: out_leg_name(&edge_name),
        vertex: g.vertices()[b].clone(),
        label: LegLabel::Out,
        bounded: !is_zero(&s),
    });
    far.bsigma.insert(out_leg_name(&edge_name), cone.clone());
    far.u.insert(out_leg_name(&edge_name), neg);
    far.delta = None;
    far.r = None;
    let mut near = near;
    near.graph.legs.push(LegData {
        name: in_leg_name(&edge_name),
        vertex: g.vertices()[a].clone(),
        label: LegLabel::Free,
        bounded: false,
    });
    near.bsigma.insert(in_leg_name(&edge_name), cone);
    near.u.insert(in_leg_name(&edge_name), s);
    let c = fam.complex();
    let f1 = TropFamily::from_data(&far, c)?;
    let f2 = TropFamily::from_data(&near, c)?;
    for f in [&f1, &f2] {
        let rep = f.validate();
        if !rep.is_valid() {
            return Err(TropError::Invalid(rep.violations));
        }
    }
    Ok((f1, f2))
}

fn restrict(data: &FamilyData, keep: &BTreeSet<usize>, cut: &str) -> FamilyData {
    let mut d = data.clone();
    let names: BTreeSet<String> = keep
        .iter()
        .map(|&k| data.graph.vertices[k].clone())
        .collect();
    d.graph.vertices.retain(|v| names.contains(v));
    d.graph
        .edges
        .retain(|e| e.name != cut && names.contains(&e.from) && names.contains(&e.to));
    d.graph.legs.retain(|l| names.contains(&l.vertex));
    let mut objects: BTreeSet<String> = names.clone();
    objects.extend(d.graph.edges.iter().map(|e| e.name.clone()));
    objects.extend(d.graph.legs.iter().map(|l| l.name.clone()));
    d.bsigma.retain(|k, _| objects.contains(k));
    d.u.retain(|k, _| objects.contains(k));
    d.nu.retain(|k, _| objects.contains(k));
    d.lengths.retain(|k, _| objects.contains(k));
    d
}

/// Inverse of [`split_at_edge`]: joins the new legs back into the edge
/// `edge` with the given length.
pub fn glue(far: &TropFamily, near: &TropFamily, edge: &str, length: &[i64]) -> Result<TropFamily> {
    let (fd, nd) = (far.to_data(), near.to_data());
    if fd.base != nd.base {
        return Err(TropError::Input("families have different bases".into()));
    }
    let take = |d: &FamilyData, name: &str| -> Result<LegData> {
        d.graph
            .legs
            .iter()
            .find(|l| l.name == name)
            .cloned()
            .ok_or_else(|| TropError::Input(format!("no leg {name:?}")))
    };
    let out_leg = take(&fd, &out_leg_name(edge))?;
    let in_leg = take(&nd, &in_leg_name(edge))?;
    let mut d = nd.clone();
    d.graph.legs.retain(|l| l.name != in_leg.name);
    d.graph.vertices.extend(fd.graph.vertices.iter().cloned());
    d.graph.edges.extend(fd.graph.edges.iter().cloned());
    d.graph.legs.extend(
        fd.graph
            .legs
            .iter()
            .filter(|l| l.name != out_leg.name)
            .cloned(),
    );
    d.graph.edges.push(EdgeData {
        name: edge.to_string(),
        from: in_leg.vertex.clone(),
        to: out_leg.vertex.clone(),
    });
    let u = nd.u[&in_leg.name].clone();
    let cone = nd.bsigma[&in_leg.name].clone();
    for (k, v) in &fd.bsigma {
        d.bsigma.insert(k.clone(), v.clone());
    }
    for (k, v) in &fd.u {
        d.u.insert(k.clone(), v.clone());
    }
    d.nu.extend(fd.nu.clone());
    d.lengths.extend(fd.lengths.clone());
    for name in [&in_leg.name, &out_leg.name] {
        d.bsigma.remove(name);
        d.u.remove(name);
    }
    d.bsigma.insert(edge.to_string(), cone);
    d.u.insert(edge.to_string(), u);
    d.lengths.insert(edge.to_string(), length.to_vec());
    d.name = None;
    TropFamily::from_data(&d, near.complex())
}
