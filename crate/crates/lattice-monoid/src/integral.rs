//! Integrality of homomorphisms out of free monoids, and log fibre dimension.

use crate::error::{MonoidError, Result};
use crate::linalg::{det, dot, Matrix};
use crate::monoid::MonoidHom;

/// Whether the dual map sends every face of the target's dual cone onto a
/// face of the dual cone of the free source `N^r`.
///
/// A face of the target cone corresponds to the dual face spanned by the
/// facet normals vanishing on it; its image in `R^r_{>=0}` is spanned by the
/// vectors `(h(θ e_1), ..., h(θ e_r))`, and it is a coordinate face iff
/// every coordinate in its support is hit by an image vector supported on
/// that coordinate alone.
pub fn is_integral(theta: &MonoidHom) -> Result<bool> {
    let src = theta.source();
    let r = src.rank();
    if src.generators().len() != r || det(src.generators()).abs() != 1 {
        return Err(MonoidError::NotFree);
    }
    if !theta.target().is_saturated() {
        return Err(MonoidError::NotSaturated);
    }
    let images: Matrix = src.generators().iter().map(|g| theta.apply(g)).collect();
    let cone = theta.target().cone();
    for face in cone.faces() {
        let vectors: Matrix = face
            .normals
            .iter()
            .map(|&k| images.iter().map(|t| dot(&cone.normals()[k], t)).collect())
            .collect();
        for j in 0..r {
            let in_support = vectors.iter().any(|v| v[j] != 0);
            if !in_support {
                continue;
            }
            let hit = vectors
                .iter()
                .any(|v| v[j] != 0 && v.iter().enumerate().all(|(i, &x)| i == j || x == 0));
            if !hit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `rank P^gp - rank Q^gp` for `θ: Q -> P` injective on groups.
pub fn log_fibre_dim(theta: &MonoidHom) -> Result<i64> {
    if !theta.is_injective_on_groups() {
        return Err(MonoidError::NotInjective);
    }
    Ok(theta.target().group_rank() as i64 - theta.source().group_rank() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::ToricMonoid;

    #[test]
    fn hand_cases() {
        let n = ToricMonoid::free(1);
        let n2 = ToricMonoid::free(2);
        let diag = MonoidHom::new(&n, &n2, vec![vec![1], vec![1]]).unwrap();
        assert!(is_integral(&diag).unwrap());
        let shear = MonoidHom::new(&n2, &n2, vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert!(!is_integral(&shear).unwrap());
        assert!(is_integral(&MonoidHom::identity(&n2)).unwrap());
    }

    #[test]
    fn non_free_source_rejected() {
        let m = ToricMonoid::new(1, vec![vec![2], vec![3]]).unwrap();
        let n = ToricMonoid::free(1);
        let h = MonoidHom::new(&m, &n, vec![vec![1]]).unwrap();
        assert_eq!(is_integral(&h).unwrap_err(), MonoidError::NotFree);
    }

    #[test]
    fn fibre_dims() {
        let n = ToricMonoid::free(1);
        let n2 = ToricMonoid::free(2);
        let n3 = ToricMonoid::free(3);
        let diag = MonoidHom::new(&n, &n2, vec![vec![1], vec![1]]).unwrap();
        assert_eq!(log_fibre_dim(&diag).unwrap(), 1);
        assert_eq!(log_fibre_dim(&MonoidHom::identity(&n2)).unwrap(), 0);
        let into3 = MonoidHom::new(&n, &n3, vec![vec![1], vec![0], vec![2]]).unwrap();
        assert_eq!(log_fibre_dim(&into3).unwrap(), 2);
        let zero = MonoidHom::new(&n, &n2, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(log_fibre_dim(&zero).unwrap_err(), MonoidError::NotInjective);
    }
}
