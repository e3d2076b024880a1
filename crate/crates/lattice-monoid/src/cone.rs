//! Rational polyhedral cones given by integer generators.

use crate::linalg::{dot, integer_kernel, primitive, rank, rational_kernel, Matrix, Vector};
use std::collections::BTreeSet;

/// Inequality description of the cone spanned by a finite set of vectors.
///
/// A vector lies in the cone iff every equation vanishes on it and every
/// facet normal is nonnegative on it.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient: usize,
    dim: usize,
    generators: Matrix,
    equations: Matrix,
    normals: Matrix,
}

/// A face, recorded by the generators it contains and the facet normals
/// vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub generators: Vec<usize>,
    pub normals: Vec<usize>,
    pub dim: usize,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

impl Cone {
    pub fn new(ambient: usize, generators: &[Vector]) -> Cone {
        let gens: Matrix = generators
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        let dim = rank(&gens);
        let equations = integer_kernel(&gens, ambient);
        let mut normals = BTreeSet::new();
        if dim > 0 {
            let mut basis: Matrix = Vec::new();
            for g in &gens {
                let mut trial = basis.clone();
                trial.push(g.clone());
                if rank(&trial) == trial.len() {
                    basis = trial;
                }
                if basis.len() == dim {
                    break;
                }
            }
            for subset in combinations(gens.len(), dim - 1) {
                let s: Matrix = subset.iter().map(|&i| gens[i].clone()).collect();
                if rank(&s) != dim - 1 {
                    continue;
                }
                // h = sum c_k basis_k, orthogonal to s
                let gram: Matrix = s
                    .iter()
                    .map(|v| basis.iter().map(|b| dot(b, v)).collect())
                    .collect();
                let ker = rational_kernel(&gram, dim);
                debug_assert_eq!(ker.len(), 1);
                let c = &ker[0];
                let mut h = vec![0i64; ambient];
                for (ck, b) in c.iter().zip(&basis) {
                    for (hi, bi) in h.iter_mut().zip(b) {
                        *hi += ck * bi;
                    }
                }
                let h = primitive(&h);
                let vals: Vec<i64> = gens.iter().map(|g| dot(&h, g)).collect();
                if vals.iter().all(|&v| v >= 0) && vals.iter().any(|&v| v > 0) {
                    normals.insert(h);
                } else if vals.iter().all(|&v| v <= 0) && vals.iter().any(|&v| v < 0) {
                    normals.insert(h.iter().map(|x| -x).collect());
                }
            }
        }
        Cone {
            ambient,
            dim,
            generators: gens,
            equations,
            normals: normals.into_iter().collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn equations(&self) -> &[Vector] {
        &self.equations
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn in_span(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, x) == 0)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.in_span(x) && self.normals.iter().all(|h| dot(h, x) >= 0)
    }

    /// Membership in the largest linear subspace contained in the cone.
    pub fn in_lineality(&self, x: &[i64]) -> bool {
        self.in_span(x) && self.normals.iter().all(|h| dot(h, x) == 0)
    }

    pub fn is_pointed(&self) -> bool {
        self.dim == 0 || rank(&self.normals) == self.dim
    }

    /// Sum of the facet normals: nonnegative on the cone and zero exactly
    /// on the lineality space.
    pub fn grading(&self) -> Vector {
        let mut g = vec![0; self.ambient];
        for h in &self.normals {
            for (gi, hi) in g.iter_mut().zip(h) {
                *gi += hi;
            }
        }
        g
    }

    fn face_of(&self, gens: Vec<usize>) -> Face {
        let normals = (0..self.normals.len())
            .filter(|&k| {
                gens.iter()
                    .all(|&i| dot(&self.normals[k], &self.generators[i]) == 0)
            })
            .collect();
        let vecs: Matrix = gens.iter().map(|&i| self.generators[i].clone()).collect();
        Face {
            dim: rank(&vecs),
            generators: gens,
            normals,
        }
    }

    /// All faces, sorted by dimension and then by generator indices.
    pub fn faces(&self) -> Vec<Face> {
        let all: Vec<usize> = (0..self.generators.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = vec![all];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.clone()) {
                continue;
            }
            for h in &self.normals {
                let g: Vec<usize> = f
                    .iter()
                    .copied()
                    .filter(|&i| dot(h, &self.generators[i]) == 0)
                    .collect();
                if g.len() < f.len() && !seen.contains(&g) {
                    stack.push(g);
                }
            }
        }
        let mut faces: Vec<Face> = seen.into_iter().map(|g| self.face_of(g)).collect();
        faces.sort_by(|a, b| (a.dim, &a.generators).cmp(&(b.dim, &b.generators)));
        faces
    }

    /// The smallest face containing the given vectors.
    pub fn face_containing(&self, vectors: &[Vector]) -> Face {
        let normals: Vec<usize> = (0..self.normals.len())
            .filter(|&k| vectors.iter().all(|v| dot(&self.normals[k], v) == 0))
            .collect();
        let gens = (0..self.generators.len())
            .filter(|&i| {
                normals
                    .iter()
                    .all(|&k| dot(&self.normals[k], &self.generators[i]) == 0)
            })
            .collect();
        self.face_of(gens)
    }

    /// Primitive generators of the extremal rays of a pointed cone.
    pub fn rays(&self) -> Matrix {
        let mut rays: Vec<Vector> = self
            .faces()
            .into_iter()
            .filter(|f| f.dim == 1)
            .map(|f| primitive(&self.generators[f.generators[0]]))
            .collect();
        rays.sort();
        rays
    }
}
