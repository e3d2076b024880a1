//! Pushouts of fine and of fs monoids.

use crate::error::{MonoidError, Result};
use crate::hilbert::saturate_in_group;
use crate::linalg::{
    hnf, identity, integer_kernel, lattice_contains, mat_mul, mat_vec, quotient_map,
    unimodular_inverse, Matrix, Vector,
};
use crate::monoid::{MonoidHom, MonoidIdeal, ToricMonoid};

/// A pushout together with the coordinate maps from the ambient lattices
/// of the two summands into the ambient lattice of the result.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub monoid: ToricMonoid,
    pub map1: Matrix,
    pub map2: Matrix,
}

impl Pushout {
    pub fn image1(&self, x: &[i64]) -> Vector {
        mat_vec(&self.map1, x)
    }

    pub fn image2(&self, x: &[i64]) -> Vector {
        mat_vec(&self.map2, x)
    }
}

/// Inverse of `h` when it is a unimodular matrix and the source group is
/// the whole ambient lattice, so that `h` identifies the group pushout with
/// the other summand's lattice.
fn identifying_inverse(h: &MonoidHom) -> Option<Matrix> {
    if !h.source().spans_ambient() || h.source().rank() != h.target().rank() {
        return None;
    }
    unimodular_inverse(h.matrix())
}

fn block_columns(m: &[Vector], from: usize, to: usize) -> Matrix {
    m.iter().map(|r| r[from..to].to_vec()).collect()
}

/// The image of `P1 ⊕ P2` in the group pushout, coordinatized by the
/// first summand when `h2` is an isomorphism of lattices, by the second
/// when `h1` is, and by a quotient lattice otherwise.
pub fn fine_pushout(h1: &MonoidHom, h2: &MonoidHom) -> Result<Pushout> {
    if h1.source() != h2.source() {
        return Err(MonoidError::InvalidHom(
            "homomorphisms have different sources".into(),
        ));
    }
    let (n1, n2) = (h1.target().rank(), h2.target().rank());
    let (map1, map2) = if let Some(inv) = identifying_inverse(h2) {
        (identity(n1), mat_mul(h1.matrix(), &inv))
    } else if let Some(inv) = identifying_inverse(h1) {
        (mat_mul(h2.matrix(), &inv), identity(n2))
    } else {
        let relations: Matrix = h1
            .source()
            .generators()
            .iter()
            .map(|q| {
                let mut v = h1.apply(q);
                v.extend(h2.apply(q).into_iter().map(|x| -x));
                v
            })
            .collect();
        check_torsion(h1.target(), h2.target(), &relations)?;
        let pi = quotient_map(&relations, n1 + n2);
        (block_columns(&pi, 0, n1), block_columns(&pi, n1, n1 + n2))
    };
    let mut gens: Matrix = h1
        .target()
        .generators()
        .iter()
        .map(|g| mat_vec(&map1, g))
        .collect();
    gens.extend(h2.target().generators().iter().map(|g| mat_vec(&map2, g)));
    let rank = map1.len();
    let monoid = ToricMonoid::new(rank, gens)?.minimize();
    Ok(Pushout { monoid, map1, map2 })
}

/// The relation lattice must be saturated inside `P1^gp ⊕ P2^gp`;
/// otherwise the group pushout has torsion.
fn check_torsion(p1: &ToricMonoid, p2: &ToricMonoid, relations: &[Vector]) -> Result<()> {
    let (n1, n2) = (p1.rank(), p2.rank());
    let n = n1 + n2;
    let mut lambda: Matrix = p1
        .lattice_basis()
        .iter()
        .map(|b| {
            let mut v = b.clone();
            v.extend(std::iter::repeat_n(0, n2));
            v
        })
        .collect();
    lambda.extend(p2.lattice_basis().iter().map(|b| {
        let mut v = vec![0; n1];
        v.extend(b.iter().copied());
        v
    }));
    let ann = integer_kernel(relations, n);
    // y such that (y * lambda) is annihilated by every row of ann
    let system: Matrix = ann
        .iter()
        .map(|w| lambda.iter().map(|b| crate::linalg::dot(b, w)).collect())
        .collect();
    let ys = integer_kernel(&system, lambda.len());
    let rel_basis = hnf(relations);
    for y in ys {
        let mut v = vec![0i64; n];
        for (c, b) in y.iter().zip(&lambda) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += c * bi;
            }
        }
        if !lattice_contains(&rel_basis, &v) {
            return Err(MonoidError::Torsion);
        }
    }
    Ok(())
}

/// Saturation of the fine pushout inside its group.
pub fn fs_pushout(h1: &MonoidHom, h2: &MonoidHom) -> Result<Pushout> {
    let fine = fine_pushout(h1, h2)?;
    Ok(Pushout {
        monoid: saturate_in_group(&fine.monoid),
        ..fine
    })
}

/// The ideal of the pushout generated by the images of `j1` and `j2`.
pub fn pushout_ideal(po: &Pushout, j1: &MonoidIdeal, j2: &MonoidIdeal) -> Result<MonoidIdeal> {
    let mut gens: Matrix = j1.generators().iter().map(|g| po.image1(g)).collect();
    gens.extend(j2.generators().iter().map(|g| po.image2(g)));
    MonoidIdeal::new(&po.monoid, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(r: usize, g: &[&[i64]]) -> ToricMonoid {
        ToricMonoid::new(r, g.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn inclusion_into_t_mu() {
        // coordinates (ell_q, delta)
        let q = ToricMonoid::free(2);
        let t = mono(2, &[&[0, 1], &[1, -1]]);
        let h1 = MonoidHom::identity(&q);
        let h2 = MonoidHom::new(&q, &t, identity(2)).unwrap();
        let po = fine_pushout(&h1, &h2).unwrap();
        let expected = mono(2, &[&[0, 1], &[1, 0], &[1, -1]]);
        assert!(po.monoid.same_monoid(&expected));
    }

    #[test]
    fn zero_source_is_coproduct() {
        let q = ToricMonoid::new(0, vec![]).unwrap();
        let p1 = ToricMonoid::free(1);
        let p2 = ToricMonoid::free(2);
        let h1 = MonoidHom::new(&q, &p1, vec![vec![]]).unwrap();
        let h2 = MonoidHom::new(&q, &p2, vec![vec![], vec![]]).unwrap();
        let po = fine_pushout(&h1, &h2).unwrap();
        assert_eq!(po.monoid.rank(), 3);
        assert_eq!(po.monoid.generators().len(), 3);
        assert!(po.monoid.is_saturated());
    }

    #[test]
    fn diagonal() {
        let n = ToricMonoid::free(1);
        let h = MonoidHom::identity(&n);
        let po = fine_pushout(&h, &h).unwrap();
        assert_eq!(po.monoid, n);
    }

    #[test]
    fn r_lambda_pushout() {
        // (ell_q, delta) coordinates; R = N ell + N delta
        let r = ToricMonoid::free(2);
        let p1 = mono(2, &[&[0, 1], &[1, -1]]);
        let r_lambda = mono(2, &[&[1, -3], &[0, 1]]);
        let h1 = MonoidHom::new(&r, &p1, identity(2)).unwrap();
        let h2 = MonoidHom::new(&r, &r_lambda, identity(2)).unwrap();
        let po = fs_pushout(&h1, &h2).unwrap();
        assert_eq!(po.monoid, mono(2, &[&[0, 1], &[1, -3]]));
    }

    #[test]
    fn torsion_detected() {
        // N -> N by 2 on both sides gives Z ⊕ Z / (2,-2)
        let n = ToricMonoid::free(1);
        let h = MonoidHom::new(&n, &n, vec![vec![2]]).unwrap();
        assert_eq!(fine_pushout(&h, &h).unwrap_err(), MonoidError::Torsion);
    }

    #[test]
    fn quotient_coordinates() {
        // N -> N^2 diagonal on both sides
        let n = ToricMonoid::free(1);
        let n2 = ToricMonoid::free(2);
        let h = MonoidHom::new(&n, &n2, vec![vec![1], vec![1]]).unwrap();
        let po = fine_pushout(&h, &h).unwrap();
        assert_eq!(po.monoid.rank(), 3);
        for q in n.generators() {
            assert_eq!(po.image1(&h.apply(q)), po.image2(&h.apply(q)));
        }
        let j1 = MonoidIdeal::new(&n2, vec![vec![1, 0]]).unwrap();
        let j2 = MonoidIdeal::new(&n2, vec![]).unwrap();
        let j = pushout_ideal(&po, &j1, &j2).unwrap();
        assert_eq!(j.generators().len(), 1);
    }
}
