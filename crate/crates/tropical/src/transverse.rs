//! Fibre products of cones over a common target and the face conditions
//! that make the first projection integral.

use crate::error::{Result, TropError};
use crate::universal::nonneg_solutions;
use lattice_monoid::linalg::{mat_vec, rank, Matrix, Vector};
use lattice_monoid::Cone;
use serde::Serialize;

const MAX_DIM: usize = 4;

/// A linear map from a cone spanned by `generators` in `Z^n` to `Z^m`.
#[derive(Clone, Debug)]
pub struct ConeMap {
    pub source: Cone,
    /// `m` rows of length `n`.
    pub matrix: Matrix,
}

impl ConeMap {
    pub fn new(n: usize, generators: &[Vector], matrix: Matrix) -> Result<ConeMap> {
        if generators.iter().any(|g| g.len() != n) || matrix.iter().any(|r| r.len() != n) {
            return Err(TropError::Input(
                "generator or matrix row of the wrong length".into(),
            ));
        }
        let source = Cone::new(n, generators);
        if source.dim() > MAX_DIM {
            return Err(TropError::DimensionLimit(source.dim()));
        }
        if !source.is_pointed() {
            return Err(TropError::Input("source cone is not pointed".into()));
        }
        Ok(ConeMap { source, matrix })
    }

    /// The standard orthant of dimension `n` with the given map.
    pub fn orthant(matrix: Matrix) -> Result<ConeMap> {
        let n = matrix.first().map_or(0, Vec::len);
        let gens: Matrix = (0..n)
            .map(|j| (0..n).map(|k| i64::from(j == k)).collect())
            .collect();
        Self::new(n, &gens, matrix)
    }

    pub fn apply(&self, x: &[i64]) -> Vector {
        mat_vec(&self.matrix, x)
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    /// The same map restricted to a face given by generator indices.
    pub fn restrict(&self, generators: &[usize]) -> ConeMap {
        let gens: Matrix = generators
            .iter()
            .map(|&i| self.source.generators()[i].clone())
            .collect();
        ConeMap {
            source: Cone::new(self.source.ambient(), &gens),
            matrix: self.matrix.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FibreProduct {
    /// Lives in `Z^(n1 + n2)`.
    pub cone: Cone,
    pub n1: usize,
    pub n2: usize,
}

impl FibreProduct {
    pub fn first(&self, x: &[i64]) -> Vector {
        x[..self.n1].to_vec()
    }

    pub fn second(&self, x: &[i64]) -> Vector {
        x[self.n1..].to_vec()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreReport {
    pub dim: usize,
    pub rays: Matrix,
}

/// `sigma_1 x_tau sigma_2 = {(x, y) : f1 x = f2 y}`.
pub fn cone_fibre_product(f1: &ConeMap, f2: &ConeMap) -> Result<FibreProduct> {
    if f1.target_dim() != f2.target_dim() {
        return Err(TropError::Input("maps have different targets".into()));
    }
    let (g1, g2) = (f1.source.generators(), f2.source.generators());
    let (k1, k2) = (g1.len(), g2.len());
    let images1: Matrix = g1.iter().map(|g| f1.apply(g)).collect();
    let images2: Matrix = g2.iter().map(|g| f2.apply(g)).collect();
    let equations: Matrix = (0..f1.target_dim())
        .map(|t| {
            images1
                .iter()
                .map(|im| im[t])
                .chain(images2.iter().map(|im| -im[t]))
                .collect()
        })
        .collect();
    let (n1, n2) = (f1.source.ambient(), f2.source.ambient());
    let rays: Matrix = nonneg_solutions(&equations, k1 + k2)
        .iter()
        .map(|c| {
            let mut x = vec![0; n1 + n2];
            for (j, g) in g1.iter().enumerate() {
                for (xi, gi) in x[..n1].iter_mut().zip(g) {
                    *xi += c[j] * gi;
                }
            }
            for (j, g) in g2.iter().enumerate() {
                for (xi, gi) in x[n1..].iter_mut().zip(g) {
                    *xi += c[k1 + j] * gi;
                }
            }
            x
        })
        .collect();
    let cone = Cone::new(n1 + n2, &rays);
    if cone.dim() > 2 * MAX_DIM {
        return Err(TropError::DimensionLimit(cone.dim()));
    }
    Ok(FibreProduct { cone, n1, n2 })
}

/// Whether the cone spanned by `vectors` is a face of `target`.
pub fn spans_face(target: &Cone, vectors: &[Vector]) -> bool {
    let face = target.face_containing(vectors);
    let span = Cone::new(target.ambient(), vectors);
    face.generators
        .iter()
        .all(|&i| span.contains(&target.generators()[i]))
}

/// Whether every face of `source` maps onto a face of `target` under `matrix`.
pub fn face_surjection_check(source: &Cone, target: &Cone, matrix: &Matrix) -> bool {
    source.faces().iter().all(|f| {
        let images: Matrix = f
            .generators
            .iter()
            .map(|&i| mat_vec(matrix, &source.generators()[i]))
            .collect();
        spans_face(target, &images)
    })
}

/// The first projection of the fibre product maps faces onto faces.
pub fn projection_surjects_on_faces(f1: &ConeMap, f2: &ConeMap) -> Result<bool> {
    let fp = cone_fibre_product(f1, f2)?;
    let n = fp.n1 + fp.n2;
    let proj: Matrix = (0..fp.n1)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    Ok(face_surjection_check(&fp.cone, &f1.source, &proj))
}

/// For each face `F2` of `sigma_2`, `f1^{-1}(f2(F2))` is a face of `sigma_1`.
pub fn transverse_hypothesis(f1: &ConeMap, f2: &ConeMap) -> Result<bool> {
    for face in f2.source.faces() {
        let fp = cone_fibre_product(f1, &f2.restrict(&face.generators))?;
        let preimage: Matrix = fp.cone.generators().iter().map(|x| fp.first(x)).collect();
        if !spans_face(&f1.source, &preimage) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R>=0^2 -> R>=0 l* + R>=0 delta*` with `e1 -> lambda l* + delta*` and
/// `e2 -> l*`.
pub fn psi_y(lambda: i64) -> ConeMap {
    ConeMap::orthant(vec![vec![lambda, 1], vec![1, 0]]).expect("two-dimensional orthant")
}

/// Smallest `lambda` in `1..=max` from which the hypothesis holds for every
/// larger `lambda` up to `max`.
pub fn lambda_threshold(test: &ConeMap, max: i64) -> Result<Option<i64>> {
    let mut threshold = None;
    for lambda in (1..=max).rev() {
        if transverse_hypothesis(&psi_y(lambda), test)? {
            threshold = Some(lambda);
        } else {
            break;
        }
    }
    Ok(threshold)
}

pub fn fibre_report(fp: &FibreProduct) -> FibreReport {
    let rays = fp.cone.rays();
    FibreReport {
        dim: rank(&rays),
        rays,
    }
}
