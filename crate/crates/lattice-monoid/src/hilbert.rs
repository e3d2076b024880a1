//! Saturation and Hilbert bases.

use crate::cone::{subsets, Cone};
use crate::linalg::{
    adjugate, det, dot, hnf, integer_kernel, lattice_coords, lattice_reduce, mat_vec, quotient_map,
    saturated_span, Matrix, Vector,
};
use crate::monoid::ToricMonoid;
use std::collections::{BTreeMap, BTreeSet};

/// Lattice points of the half-open parallelepipeds spanned by maximal
/// linearly independent subsets of `gens`, in a full-rank setting `Z^d`.
fn parallelepiped_points(gens: &[Vector], d: usize) -> BTreeSet<Vector> {
    let mut out = BTreeSet::new();
    for subset in subsets(gens.len(), d) {
        let s: Matrix = subset.iter().map(|&i| gens[i].clone()).collect();
        // columns of m are the chosen generators
        let m: Matrix = (0..d).map(|r| s.iter().map(|g| g[r]).collect()).collect();
        let dt = det(&m);
        if dt == 0 || dt.abs() == 1 {
            continue;
        }
        let adj = adjugate(&m);
        let h = hnf(&s);
        let bounds: Vec<i64> = (0..d).map(|i| h[i][i]).collect();
        let total: i64 = bounds.iter().product();
        let mut y = vec![0i64; d];
        for _ in 0..total {
            let n = dt.abs();
            let sign = dt.signum();
            let mut point = vec![0i128; d];
            for i in 0..d {
                let num: i128 = (0..d).map(|j| adj[i][j] * y[j] as i128).sum::<i128>() * sign;
                let f = num.rem_euclid(n);
                for r in 0..d {
                    point[r] += f * s[i][r] as i128;
                }
            }
            let p: Vector = point
                .into_iter()
                .map(|v| i64::try_from(v / n).expect("overflow"))
                .collect();
            if p.iter().any(|&v| v != 0) {
                out.insert(p);
            }
            for i in 0..d {
                y[i] += 1;
                if y[i] < bounds[i] {
                    break;
                }
                y[i] = 0;
            }
        }
    }
    out
}

/// Irreducible elements of the saturated pointed monoid `cone ∩ Z^d`
/// among a generating candidate set.
fn irreducibles(cone: &Cone, candidates: &BTreeSet<Vector>) -> Vec<Vector> {
    let phi = cone.grading();
    let mut sorted: Vec<&Vector> = candidates.iter().collect();
    sorted.sort_by_key(|v| (dot(&phi, v), (*v).clone()));
    let mut basis: Vec<Vector> = Vec::new();
    for x in sorted {
        let reducible = basis.iter().any(|c| {
            let diff: Vector = x.iter().zip(c).map(|(a, b)| a - b).collect();
            cone.contains(&diff)
        });
        if !reducible {
            basis.push(x.clone());
        }
    }
    basis
}

/// Hilbert basis of `cone(gens) ∩ Z^d` for generators spanning `Q^d`.
fn hilbert_basis_full(gens: &[Vector], d: usize) -> Vec<Vector> {
    let cone = Cone::new(d, gens);
    let mut cands = parallelepiped_points(gens, d);
    cands.extend(gens.iter().cloned());
    if cone.is_pointed() {
        return irreducibles(&cone, &cands);
    }
    // split off the unit group
    let lin = integer_kernel(cone.normals(), d);
    let pi = quotient_map(&lin, d);
    let q = pi.len();
    let qgens: Vec<Vector> = gens.iter().map(|g| mat_vec(&pi, g)).collect();
    let qcone = Cone::new(q, &qgens);
    let mut lifts: BTreeMap<Vector, Vector> = BTreeMap::new();
    for c in &cands {
        let z = mat_vec(&pi, c);
        if z.iter().all(|&v| v == 0) {
            continue;
        }
        let lift = lattice_reduce(&lin, c);
        lifts
            .entry(z)
            .and_modify(|cur| {
                if lift < *cur {
                    *cur = lift.clone()
                }
            })
            .or_insert(lift);
    }
    let qcands: BTreeSet<Vector> = lifts.keys().cloned().collect();
    let mut out: Vec<Vector> = irreducibles(&qcone, &qcands)
        .into_iter()
        .map(|z| lifts[&z].clone())
        .collect();
    let mut neg = vec![0i64; d];
    for b in &lin {
        out.push(b.clone());
        for (n, x) in neg.iter_mut().zip(b) {
            *n -= x;
        }
    }
    out.push(neg);
    out
}

/// `cone(M) ∩ Z^n`: the saturation inside the ambient lattice, generated
/// by its Hilbert basis.
pub fn saturate(m: &ToricMonoid) -> ToricMonoid {
    let basis = saturated_span(m.generators(), m.rank());
    saturate_in(m, &basis).known_saturated()
}

/// `cone(M) ∩ M^gp`: the saturation inside the group of `M`.
pub fn saturate_in_group(m: &ToricMonoid) -> ToricMonoid {
    let basis = m.lattice_basis().to_vec();
    let out = saturate_in(m, &basis);
    if basis == saturated_span(m.generators(), m.rank()) {
        out.known_saturated()
    } else {
        out
    }
}

fn saturate_in(m: &ToricMonoid, basis: &[Vector]) -> ToricMonoid {
    let d = basis.len();
    if d == 0 {
        return ToricMonoid::new(m.rank(), Vec::new()).unwrap();
    }
    let coords: Vec<Vector> = m
        .generators()
        .iter()
        .map(|g| lattice_coords(basis, g).expect("generator outside the lattice"))
        .collect();
    let hb = hilbert_basis_full(&coords, d);
    let gens: Matrix = hb
        .iter()
        .map(|y| {
            let mut x = vec![0i64; m.rank()];
            for (c, b) in y.iter().zip(basis) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += c * bi;
                }
            }
            x
        })
        .collect();
    ToricMonoid::new(m.rank(), gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(r: usize, g: &[&[i64]]) -> ToricMonoid {
        ToricMonoid::new(r, g.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn spec_examples() {
        let m = mono(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(
            saturate(&m).generators(),
            &[vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(saturate(&ToricMonoid::free(2)), ToricMonoid::free(2));
        let r = mono(2, &[&[1, -3], &[0, 1]]);
        assert_eq!(saturate(&r), r);
    }

    #[test]
    fn sublattice_and_lineality() {
        // group is 2Z x Z
        let m = mono(2, &[&[2, 0], &[0, 1]]);
        assert_eq!(saturate_in_group(&m), m);
        assert!(!saturate_in_group(&m).is_saturated());
        assert_eq!(saturate(&m), ToricMonoid::free(2));
        let g = mono(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(saturate_in_group(&g), g);
        let h = mono(2, &[&[1, 0], &[-1, 0], &[1, 2]]);
        let s = saturate(&h);
        assert!(s.contains(&[0, 1]));
        assert!(s.contains(&[-5, 1]));
        assert!(!s.contains(&[0, -1]));
        assert_eq!(s.generators().len(), 3);
    }

    #[test]
    fn idempotent() {
        let m = mono(3, &[&[1, 0, 0], &[1, 3, 0], &[1, 1, 2]]);
        let s = saturate(&m);
        assert_eq!(saturate(&s), s);
        for g in m.generators() {
            assert!(s.contains(g));
        }
    }
}
