//! Cones of nonnegative solutions of linear systems, and the universal
//! deformation cone of a tropical type.

use crate::family::{TropFamily, TropType};
use crate::graph::LegLabel;
use cone_complex::IntegralPoint;
use lattice_monoid::linalg::{dot, primitive, rank, Matrix, Vector};
use serde::Serialize;

/// Extreme rays of `{x >= 0 : e x = 0}` for every row `e` of `equations`,
/// by double description starting from the orthant.
pub fn nonneg_solutions(equations: &[Vector], n: usize) -> Matrix {
    assert!(n <= 128, "too many variables");
    let zeros = |r: &Vector| -> u128 {
        r.iter()
            .enumerate()
            .filter(|(_, &x)| x == 0)
            .fold(0u128, |m, (i, _)| m | (1 << i))
    };
    let mut rays: Matrix = (0..n)
        .map(|j| (0..n).map(|k| i64::from(k == j)).collect())
        .collect();
    for eq in equations {
        let vals: Vec<i64> = rays.iter().map(|r| dot(eq, r)).collect();
        let masks: Vec<u128> = rays.iter().map(zeros).collect();
        let mut next: Matrix = Vec::new();
        for (r, &v) in rays.iter().zip(&vals) {
            if v == 0 {
                next.push(r.clone());
            }
        }
        for (i, p) in rays.iter().enumerate() {
            if vals[i] <= 0 {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if vals[j] >= 0 {
                    continue;
                }
                let common = masks[i] & masks[j];
                let adjacent =
                    (0..rays.len()).all(|k| k == i || k == j || masks[k] & common != common);
                if !adjacent {
                    continue;
                }
                let ray: Vector = p
                    .iter()
                    .zip(q)
                    .map(|(a, b)| -vals[j] * a + vals[i] * b)
                    .collect();
                next.push(primitive(&ray));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    rays.sort();
    rays
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalCone {
    /// Every variable is constrained to be nonnegative.
    pub variables: Vec<String>,
    pub equations: Matrix,
    pub rays: Matrix,
    pub dim: usize,
}

/// The cone of all tropical maps of the given type: vertex positions in
/// their cones, edge lengths, and `delta` when a constraint point is given.
pub fn universal_cone(ty: &TropType, r: Option<&IntegralPoint>) -> UniversalCone {
    let c = &ty.complex;
    let g = &ty.graph;
    let s = c.divisors().len();
    let mut variables = Vec::new();
    // position[v][label] -> variable index
    let mut position: Vec<Vec<Option<usize>>> = Vec::new();
    for (k, v) in g.vertices().iter().enumerate() {
        let mut slots = vec![None; s];
        for &lab in ty.labels(ty.vertex_cones[k]) {
            slots[lab] = Some(variables.len());
            variables.push(format!("h({v})[{}]", c.divisors()[lab]));
        }
        position.push(slots);
    }
    let first_length = variables.len();
    for e in g.edges() {
        variables.push(format!("l({})", e.name));
    }
    let delta = r.map(|_| {
        variables.push("delta".into());
        variables.len() - 1
    });
    let n = variables.len();
    let mut equations = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        let u = ty.edge_u_global(k);
        for &lab in ty.labels(ty.edge_cones[k]) {
            let mut row = vec![0; n];
            if let Some(x) = position[e.to][lab] {
                row[x] += 1;
            }
            if let Some(x) = position[e.from][lab] {
                row[x] -= 1;
            }
            row[first_length + k] -= u[lab];
            equations.push(row);
        }
    }
    if let (Some(p), Some(d)) = (r, delta) {
        if let Some(o) = g.leg_with(LegLabel::Out) {
            let out = g.legs()[o].vertex;
            let rv = c.pairings(p);
            for lab in 0..s {
                let mut row = vec![0; n];
                if let Some(x) = position[out][lab] {
                    row[x] = 1;
                }
                row[d] = -rv[lab];
                if row.iter().any(|&x| x != 0) {
                    equations.push(row);
                }
            }
        }
    }
    equations.retain(|row| row.iter().any(|&x| x != 0));
    let rays = nonneg_solutions(&equations, n);
    let dim = rank(&rays);
    UniversalCone {
        variables,
        equations,
        rays,
        dim,
    }
}

impl TropFamily {
    pub fn universal_cone(&self) -> UniversalCone {
        universal_cone(&self.ty, self.r.as_ref())
    }

    /// The base maps isomorphically onto the tangent space of the universal
    /// cone: equal dimensions and an injective tangent map.
    pub fn is_miniversal(&self) -> bool {
        let d = self.base_dim();
        self.universal_cone().dim == d && self.tangent_rank() == d
    }
}
