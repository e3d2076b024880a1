//! Genus-zero domain graphs with four marked legs: spines, boundary classes
//! and the chain of edges between the two spine junctions.

use crate::error::{Result, TropError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LegLabel {
    X1,
    X2,
    X3,
    Out,
    Free,
}

impl LegLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            LegLabel::X1 => "x1",
            LegLabel::X2 => "x2",
            LegLabel::X3 => "x3",
            LegLabel::Out => "out",
            LegLabel::Free => "free",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeData {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegData {
    pub name: String,
    pub vertex: String,
    pub label: LegLabel,
    #[serde(default)]
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeData>,
    pub legs: Vec<LegData>,
}

/// Oriented from `from` to `to`; tangent vectors follow this orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub name: String,
    pub vertex: usize,
    pub label: LegLabel,
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    legs: Vec<Leg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryClass {
    Interior,
    /// `D(x1x2|x3,out)`
    X12,
    /// `D(x2x3|x1,out)`
    X23,
    /// `D(x1x3|x2,out)`
    X13,
    /// `D(x1x2x3|out)`
    X123,
}

impl BoundaryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryClass::Interior => "interior",
            BoundaryClass::X12 => "D(x1x2|x3,out)",
            BoundaryClass::X23 => "D(x2x3|x1,out)",
            BoundaryClass::X13 => "D(x1x3|x2,out)",
            BoundaryClass::X123 => "D(x1x2x3|out)",
        }
    }

    /// The two labels adjacent to `w` and the one adjacent to `v`.
    fn sides(self) -> Option<([LegLabel; 2], LegLabel)> {
        match self {
            BoundaryClass::X12 => Some(([LegLabel::X1, LegLabel::X2], LegLabel::X3)),
            BoundaryClass::X23 => Some(([LegLabel::X2, LegLabel::X3], LegLabel::X1)),
            BoundaryClass::X13 => Some(([LegLabel::X1, LegLabel::X3], LegLabel::X2)),
            _ => None,
        }
    }
}

impl fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// The path `v = v_1, ..., v_n = w`. `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]`; the flag says whether its stored orientation agrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub class: BoundaryClass,
    pub v: usize,
    pub w: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, bool)>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

const MARKED: [LegLabel; 4] = [LegLabel::X1, LegLabel::X2, LegLabel::X3, LegLabel::Out];

impl TropGraph {
    pub fn from_data(data: &GraphData) -> Result<TropGraph> {
        let mut names: BTreeSet<&str> = BTreeSet::new();
        let all = data
            .vertices
            .iter()
            .chain(data.edges.iter().map(|e| &e.name))
            .chain(data.legs.iter().map(|l| &l.name));
        for n in all {
            if !names.insert(n) {
                return Err(TropError::Input(format!("duplicate name {n:?}")));
            }
        }
        let index: HashMap<&str, usize> = data
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let vertex = |n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| TropError::Input(format!("unknown vertex {n:?}")))
        };
        let mut edges = Vec::new();
        for e in &data.edges {
            let (from, to) = (vertex(&e.from)?, vertex(&e.to)?);
            if from == to {
                return Err(TropError::Input(format!("edge {} is a loop", e.name)));
            }
            edges.push(Edge {
                name: e.name.clone(),
                from,
                to,
            });
        }
        let mut legs = Vec::new();
        for l in &data.legs {
            legs.push(Leg {
                name: l.name.clone(),
                vertex: vertex(&l.vertex)?,
                label: l.label,
                bounded: l.bounded,
            });
        }
        let g = TropGraph {
            vertices: data.vertices.clone(),
            edges,
            legs,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(TropError::Input("graph has no vertices".into()));
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(TropError::Input(format!(
                "genus 0 needs |E| = |V| - 1, got {} edges and {} vertices",
                self.edges.len(),
                self.vertices.len()
            )));
        }
        let reached = self.distances(0).iter().filter(|d| d.is_some()).count();
        if reached != self.vertices.len() {
            return Err(TropError::Input("graph is not connected".into()));
        }
        for label in MARKED {
            if self.legs.iter().filter(|l| l.label == label).count() > 1 {
                return Err(TropError::Input(format!(
                    "more than one leg labelled {}",
                    label.as_str()
                )));
            }
        }
        if let Some(l) = self
            .legs
            .iter()
            .find(|l| l.bounded && matches!(l.label, LegLabel::X1 | LegLabel::X2 | LegLabel::X3))
        {
            return Err(TropError::Input(format!(
                "marked leg {} cannot be bounded",
                l.name
            )));
        }
        Ok(())
    }

    pub fn to_data(&self) -> GraphData {
        GraphData {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeData {
                    name: e.name.clone(),
                    from: self.vertices[e.from].clone(),
                    to: self.vertices[e.to].clone(),
                })
                .collect(),
            legs: self
                .legs
                .iter()
                .map(|l| LegData {
                    name: l.name.clone(),
                    vertex: self.vertices[l.vertex].clone(),
                    label: l.label,
                    bounded: l.bounded,
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<TropGraph> {
        let data: GraphData =
            serde_json::from_str(text).map_err(|e| TropError::Input(format!("graph JSON: {e}")))?;
        Self::from_data(&data)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn leg_index(&self, name: &str) -> Option<usize> {
        self.legs.iter().position(|l| l.name == name)
    }

    pub fn leg_with(&self, label: LegLabel) -> Option<usize> {
        self.legs.iter().position(|l| l.label == label)
    }

    fn marked_vertex(&self, label: LegLabel) -> Result<usize> {
        self.leg_with(label)
            .map(|l| self.legs[l].vertex)
            .ok_or_else(|| TropError::NotApplicable(format!("no leg labelled {}", label.as_str())))
    }

    /// `(edge, other end)` for every edge at `v`.
    pub fn neighbours(&self, v: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(k, e)| {
                if e.from == v {
                    Some((k, e.to))
                } else if e.to == v {
                    Some((k, e.from))
                } else {
                    None
                }
            })
            .collect()
    }

    fn distances(&self, start: usize) -> Vec<Option<(usize, Option<usize>)>> {
        let mut seen: Vec<Option<(usize, Option<usize>)>> = vec![None; self.vertices.len()];
        seen[start] = Some((0, None));
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = seen[v].expect("visited").0;
            for (e, o) in self.neighbours(v) {
                if seen[o].is_none() {
                    seen[o] = Some((d + 1, Some(e)));
                    queue.push_back(o);
                }
            }
        }
        seen
    }

    /// Vertices and edges of the path from `a` to `b`, in order.
    pub fn path(&self, a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
        let tree = self.distances(a);
        let mut vs = vec![b];
        let mut es = Vec::new();
        let mut cur = b;
        while cur != a {
            let e = tree[cur].and_then(|t| t.1).expect("connected");
            es.push(e);
            let edge = &self.edges[e];
            cur = if edge.from == cur { edge.to } else { edge.from };
            vs.push(cur);
        }
        vs.reverse();
        es.reverse();
        (vs, es)
    }

    fn median(&self, a: usize, b: usize, c: usize) -> usize {
        let ab: BTreeSet<usize> = self.path(a, b).0.into_iter().collect();
        let bc: BTreeSet<usize> = self.path(b, c).0.into_iter().collect();
        let (ac, _) = self.path(a, c);
        ac.into_iter()
            .find(|v| ab.contains(v) && bc.contains(v))
            .expect("trees have medians")
    }

    /// The minimal subtree containing the vertices of the marked legs.
    pub fn spine(&self) -> Spine {
        let ends: Vec<usize> = MARKED
            .iter()
            .filter_map(|&l| self.leg_with(l).map(|k| self.legs[k].vertex))
            .collect();
        let mut vs = BTreeSet::new();
        let mut es = BTreeSet::new();
        for (i, &a) in ends.iter().enumerate() {
            vs.insert(a);
            for &b in &ends[i + 1..] {
                let (pv, pe) = self.path(a, b);
                vs.extend(pv);
                es.extend(pe);
            }
        }
        Spine {
            vertices: vs.into_iter().collect(),
            edges: es.into_iter().collect(),
        }
    }

    pub fn boundary_class(&self) -> Result<BoundaryClass> {
        let [a, b, c, o] = MARKED.map(|l| self.marked_vertex(l));
        let (a, b, c, o) = (a?, b?, c?, o?);
        let disjoint = |p: (usize, usize), q: (usize, usize)| {
            let s: BTreeSet<usize> = self.path(p.0, p.1).0.into_iter().collect();
            self.path(q.0, q.1).0.iter().all(|v| !s.contains(v))
        };
        if disjoint((a, b), (c, o)) {
            return Ok(BoundaryClass::X12);
        }
        if disjoint((b, c), (a, o)) {
            return Ok(BoundaryClass::X23);
        }
        if disjoint((a, c), (b, o)) {
            return Ok(BoundaryClass::X13);
        }
        if self.median(a, b, c) != o {
            return Ok(BoundaryClass::X123);
        }
        Ok(BoundaryClass::Interior)
    }

    /// The chain between the junction `v` on the side of `out` and the
    /// junction `w` on the other side.
    pub fn chain(&self) -> Result<Chain> {
        let class = self.boundary_class()?;
        let Some(([p, q], s)) = class.sides() else {
            return Err(TropError::NotApplicable(format!(
                "boundary class {class} has no chain"
            )));
        };
        let (a, b) = (self.marked_vertex(p)?, self.marked_vertex(q)?);
        let (c, o) = (self.marked_vertex(s)?, self.marked_vertex(LegLabel::Out)?);
        let v = self.median(c, o, a);
        let w = self.median(a, b, c);
        let (vertices, es) = self.path(v, w);
        let edges = es
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, self.edges[e].from == vertices[i]))
            .collect();
        Ok(Chain {
            class,
            v,
            w,
            vertices,
            edges,
        })
    }

    pub fn has_terminal_tail(&self) -> Result<bool> {
        let chain = self.chain()?;
        Ok(self.marked_vertex(LegLabel::Out)? != chain.v)
    }

    /// Vertices reachable from `start` without crossing `cut`.
    pub fn component(&self, start: usize, cut: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (e, o) in self.neighbours(v) {
                if e != cut && seen.insert(o) {
                    stack.push(o);
                }
            }
        }
        seen
    }
}
