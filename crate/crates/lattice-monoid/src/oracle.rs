//! Brute-force reference computations used to cross-check the main
//! algorithms. They share no code with them beyond elementary linear
//! algebra: cones are tested through Carathéodory decompositions and
//! lattices through gcds of maximal minors.

use crate::cone::subsets;
use crate::linalg::{adjugate, det, mat_vec, rank, rational_kernel, sub, Matrix, Vector};
use crate::monoid::{MonoidHom, MonoidIdeal, ToricMonoid};
use crate::pushout::Pushout;
use num_integer::Integer;
use std::collections::{BTreeSet, HashSet, VecDeque};

struct Simplex {
    rows: Vec<usize>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

/// Cone and lattice membership by exhaustive methods.
pub struct BruteCone {
    n: usize,
    d: usize,
    gens: Matrix,
    span_equations: Matrix,
    simplices: Vec<Simplex>,
    content: i128,
}

fn gcd_maximal_minors(rows: &[Vector], d: usize, n: usize) -> i128 {
    if d == 0 {
        return 1;
    }
    let mut g = 0i128;
    for rs in subsets(rows.len(), d) {
        for cs in subsets(n, d) {
            let m: Matrix = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| rows[r][c]).collect())
                .collect();
            g = g.gcd(&det(&m));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

impl BruteCone {
    pub fn new(gens: &[Vector], n: usize) -> BruteCone {
        let gens: Matrix = gens
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        let d = rank(&gens);
        let span_equations = rational_kernel(&gens, n);
        let mut simplices = Vec::new();
        for s in subsets(gens.len(), d) {
            let sg: Matrix = s.iter().map(|&i| gens[i].clone()).collect();
            if rank(&sg) < d {
                continue;
            }
            // pick d coordinates on which the chosen vectors are independent
            for rows in subsets(n, d) {
                let m: Matrix = rows
                    .iter()
                    .map(|&r| sg.iter().map(|g| g[r]).collect())
                    .collect();
                let dt = det(&m);
                if dt != 0 {
                    simplices.push(Simplex {
                        rows,
                        adj: adjugate(&m),
                        det: dt,
                    });
                    break;
                }
            }
        }
        let content = gcd_maximal_minors(&gens, d, n);
        BruteCone {
            n,
            d,
            gens,
            span_equations,
            simplices,
            content,
        }
    }

    pub fn in_span(&self, x: &[i64]) -> bool {
        self.span_equations
            .iter()
            .all(|e| e.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    pub fn in_cone(&self, x: &[i64]) -> bool {
        if !self.in_span(x) {
            return false;
        }
        if self.d == 0 {
            return x.iter().all(|&v| v == 0);
        }
        self.simplices.iter().any(|s| {
            let lam: Vec<i128> = (0..self.d)
                .map(|i| {
                    (0..self.d)
                        .map(|j| s.adj[i][j] * x[s.rows[j]] as i128)
                        .sum::<i128>()
                        * s.det.signum()
                })
                .collect();
            // x lies in the span, so the chosen rows determine the coefficients
            lam.iter().all(|&l| l >= 0)
        })
    }

    /// Membership in the group generated by the generators.
    pub fn in_group(&self, x: &[i64]) -> bool {
        if !self.in_span(x) {
            return false;
        }
        let mut with = self.gens.clone();
        with.push(x.to_vec());
        gcd_maximal_minors(&with, self.d, self.n) == self.content
    }

    /// Coordinate box containing every Hilbert basis element.
    pub fn box_bound(&self) -> Vec<i64> {
        (0..self.n)
            .map(|j| {
                let m = self.gens.iter().map(|g| g[j].abs()).max().unwrap_or(0);
                m * self.d.max(1) as i64
            })
            .collect()
    }
}

fn box_points(bound: &[i64]) -> Vec<Vector> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        let mut next = Vec::with_capacity(out.len() * (2 * b as usize + 1));
        for p in &out {
            for v in -b..=b {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Saturation points inside the Hilbert-basis box, and whether the cone
/// is pointed. `in_group` selects the group of `M` instead of `Z^n`.
pub fn saturation_points(m: &ToricMonoid, in_group: bool) -> (BruteCone, Vec<Vector>, bool) {
    let bc = BruteCone::new(m.generators(), m.rank());
    let pts: Vec<Vector> = box_points(&bc.box_bound())
        .into_iter()
        .filter(|x| bc.in_cone(x) && (!in_group || bc.in_group(x)))
        .collect();
    let set: HashSet<&Vector> = pts.iter().collect();
    let pointed = !pts.iter().any(|x| {
        x.iter().any(|&v| v != 0) && set.contains(&x.iter().map(|v| -v).collect::<Vector>())
    });
    (bc, pts, pointed)
}

/// Hilbert basis of the saturation by exhaustive irreducibility testing,
/// or `None` when the saturation is not sharp.
pub fn hilbert_basis(m: &ToricMonoid, in_group: bool) -> Option<Vec<Vector>> {
    let (bc, pts, pointed) = saturation_points(m, in_group);
    if !pointed {
        return None;
    }
    let set: HashSet<&Vector> = pts.iter().collect();
    let bound = bc.box_bound();
    let member = |x: &Vector| {
        if x.iter().zip(&bound).all(|(v, b)| v.abs() <= *b) {
            set.contains(x)
        } else {
            bc.in_cone(x) && (!in_group || bc.in_group(x))
        }
    };
    let mut hb: Vec<Vector> = pts
        .iter()
        .filter(|x| x.iter().any(|&v| v != 0))
        .filter(|x| {
            !pts.iter()
                .any(|y| y.iter().any(|&v| v != 0) && y != *x && member(&sub(x, y)))
        })
        .cloned()
        .collect();
    hb.sort();
    Some(hb)
}

/// Checks a computed fs pushout against generate-and-saturate.
pub fn check_fs_pushout(h1: &MonoidHom, h2: &MonoidHom, po: &Pushout) -> Result<(), String> {
    for q in h1.source().generators() {
        if po.image1(&h1.apply(q)) != po.image2(&h2.apply(q)) {
            return Err(format!("coordinate maps disagree on {q:?}"));
        }
    }
    let mut gens: Matrix = h1
        .target()
        .generators()
        .iter()
        .map(|g| po.image1(g))
        .collect();
    gens.extend(h2.target().generators().iter().map(|g| po.image2(g)));
    let fine = ToricMonoid::new(po.monoid.rank(), gens).map_err(|e| e.to_string())?;
    match hilbert_basis(&fine, true) {
        Some(hb) => {
            if hb != po.monoid.generators() {
                return Err(format!(
                    "Hilbert basis {:?} differs from oracle {:?}",
                    po.monoid.generators(),
                    hb
                ));
            }
        }
        None => {
            let (bc, pts, _) = saturation_points(&fine, true);
            for g in po.monoid.generators() {
                if !(bc.in_cone(g) && bc.in_group(g)) {
                    return Err(format!("generator {g:?} outside the saturation"));
                }
            }
            for p in &pts {
                if !po.monoid.contains(p) {
                    return Err(format!("saturation point {p:?} missing"));
                }
            }
        }
    }
    Ok(())
}

/// Complement of an ideal by breadth-first search from `0` through
/// elements outside the ideal. `None` if more than `cap` elements are found.
pub fn complement_bfs(k: &MonoidIdeal, cap: usize) -> Option<BTreeSet<Vector>> {
    let q = k.parent();
    let zero = vec![0i64; q.rank()];
    let in_ideal = |x: &Vector| k.generators().iter().any(|g| q.contains(&sub(x, g)));
    let mut seen = BTreeSet::new();
    if in_ideal(&zero) {
        return Some(seen);
    }
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in q.generators() {
            let y: Vector = x.iter().zip(g).map(|(a, b)| a + b).collect();
            if !seen.contains(&y) && !in_ideal(&y) {
                seen.insert(y.clone());
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

/// Complement of an ideal by scanning a coordinate box from the far corner.
pub fn complement_box(k: &MonoidIdeal, bound: i64) -> BTreeSet<Vector> {
    let q = k.parent();
    let bc = BruteCone::new(q.generators(), q.rank());
    let mut pts = box_points(&vec![bound; q.rank()]);
    pts.reverse();
    pts.into_iter()
        .filter(|x| bc.in_cone(x) && bc.in_group(x))
        .filter(|x| {
            !k.generators()
                .iter()
                .any(|g| bc.in_cone(&sub(x, g)) && bc.in_group(&sub(x, g)))
        })
        .collect()
}

/// Flatness of `N^r -> N^s` (matrix with `s` rows) from fibre dimensions
/// over the torus orbits of `A^r`. `None` when the map is not injective,
/// where fibre dimension does not characterize integrality.
pub fn flat_by_fibre_dimension(matrix: &[Vector]) -> Option<bool> {
    let s = matrix.len();
    let r = matrix.first().map_or(0, |row| row.len());
    let images: Matrix = (0..r)
        .map(|i| matrix.iter().map(|row| row[i]).collect())
        .collect();
    if rank(&images) < r {
        return None;
    }
    let expected = s as i64 - r as i64;
    for mask in 0u32..(1 << s) {
        let face: Vec<usize> = (0..s).filter(|j| mask & (1 << j) != 0).collect();
        let inside: Matrix = images
            .iter()
            .filter(|t| (0..s).all(|j| t[j] == 0 || face.contains(&j)))
            .cloned()
            .collect();
        if face.len() as i64 - rank(&inside) as i64 > expected {
            return Some(false);
        }
    }
    Some(true)
}

/// Integrality from the definition: whenever `q + θ(a) - θ(b)` lies in the
/// target with `a`, `b` of disjoint support, so does `q - θ(b)`. Searched
/// over `a`, `b` with entries up to `bound` and `q` in a box.
pub fn integral_by_definition(matrix: &[Vector], bound: i64) -> bool {
    let s = matrix.len();
    let r = matrix.first().map_or(0, |row| row.len());
    let in_target = |x: &Vector| x.iter().all(|&v| v >= 0);
    let vecs = box_points(&vec![bound; r])
        .into_iter()
        .map(|v| v.into_iter().map(|x| x.abs()).collect::<Vector>())
        .collect::<BTreeSet<_>>();
    let qbound = bound * matrix.iter().flatten().map(|x| x.abs()).max().unwrap_or(0) * r as i64;
    let qs: Vec<Vector> = box_points(&vec![qbound; s])
        .into_iter()
        .filter(in_target)
        .collect();
    for a in &vecs {
        for b in &vecs {
            if (0..r).any(|i| a[i] != 0 && b[i] != 0) {
                continue;
            }
            let ta = mat_vec(matrix, a);
            let tb = mat_vec(matrix, b);
            for q in &qs {
                let lhs: Vector = (0..s).map(|j| q[j] + ta[j] - tb[j]).collect();
                let rhs: Vector = (0..s).map(|j| q[j] - tb[j]).collect();
                if in_target(&lhs) && !in_target(&rhs) {
                    return false;
                }
            }
        }
    }
    true
}

/// Seeded random instances for the property suites.
pub mod random {
    use super::*;
    use crate::error::MonoidError;
    use crate::pushout::fs_pushout;
    use rand::Rng;

    fn random_submonoid<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> ToricMonoid {
        loop {
            let count = rng.gen_range(n..=n + 1);
            let gens: Matrix = (0..count)
                .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
                .collect();
            let m = ToricMonoid::new(n, gens).unwrap();
            if m.group_rank() == n && m.is_sharp() {
                return m;
            }
        }
    }

    fn random_element<R: Rng>(rng: &mut R, m: &ToricMonoid) -> Vector {
        let mut x = vec![0; m.rank()];
        for g in m.generators() {
            let c = rng.gen_range(0..=1);
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += c * gi;
            }
        }
        x
    }

    /// `Q = N^k` with generators sent to random elements of random `P1`, `P2`.
    /// Returns `None` for torsion instances and for pushouts of rank above
    /// three or with generator coordinates outside `[-4, 4]`.
    pub fn pushout_instance<R: Rng>(rng: &mut R) -> Option<(MonoidHom, MonoidHom)> {
        let n1 = rng.gen_range(1..=2);
        let n2 = rng.gen_range(1..=2);
        let k = rng.gen_range(0..=2);
        let p1 = random_submonoid(rng, n1, -4, 4);
        let p2 = random_submonoid(rng, n2, -4, 4);
        let q = ToricMonoid::free(k);
        let cols1: Matrix = (0..k).map(|_| random_element(rng, &p1)).collect();
        let cols2: Matrix = (0..k).map(|_| random_element(rng, &p2)).collect();
        let m1: Matrix = (0..n1)
            .map(|i| cols1.iter().map(|c| c[i]).collect())
            .collect();
        let m2: Matrix = (0..n2)
            .map(|i| cols2.iter().map(|c| c[i]).collect())
            .collect();
        let h1 = MonoidHom::new(&q, &p1, m1).ok()?;
        let h2 = MonoidHom::new(&q, &p2, m2).ok()?;
        match fs_pushout(&h1, &h2) {
            Err(MonoidError::Torsion) => None,
            Ok(po) if po.monoid.rank() > 3 => None,
            Ok(po) if po.monoid.generators().iter().flatten().any(|x| x.abs() > 4) => None,
            Ok(_) => Some((h1, h2)),
            Err(_) => None,
        }
    }

    /// Rank-two saturated `Q` with an ideal containing a multiple of each
    /// ray generator plus a few random elements.
    pub fn length_instance<R: Rng>(rng: &mut R) -> MonoidIdeal {
        loop {
            let a: Vector = vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
            let b: Vector = vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
            if a[0] * b[1] - a[1] * b[0] == 0 {
                continue;
            }
            let q = crate::hilbert::saturate(&ToricMonoid::new(2, vec![a, b]).unwrap());
            let rays = q.cone().rays();
            let mut gens: Matrix = rays
                .iter()
                .map(|r| {
                    let c = rng.gen_range(1..=3);
                    r.iter().map(|x| x * c).collect()
                })
                .collect();
            for _ in 0..rng.gen_range(0..=2) {
                gens.push(random_element(rng, &q));
            }
            gens.retain(|g| g.iter().any(|&x| x != 0));
            return MonoidIdeal::new(&q, gens).unwrap();
        }
    }

    /// `(Q, ℓ_q, δ, θ(ℓ), μ)` with `a = 1`, in coordinates where `δ` and the
    /// second ray `w = ℓ_q - μδ` are random with positive determinant.
    pub fn stability_instance<R: Rng>(rng: &mut R) -> crate::length::StabilityInput {
        loop {
            let delta: Vector = vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
            let w: Vector = vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
            if delta[0] * w[1] - delta[1] * w[0] <= 0 {
                continue;
            }
            if crate::linalg::primitive(&delta) != delta || crate::linalg::primitive(&w) != w {
                continue;
            }
            let mu = rng.gen_range(0..=3);
            let b = rng.gen_range(-2..=2);
            if mu + b < 0 {
                continue;
            }
            let q = crate::hilbert::saturate(
                &ToricMonoid::new(2, vec![delta.clone(), w.clone()]).unwrap(),
            );
            let ell_q: Vector = (0..2).map(|i| w[i] + mu * delta[i]).collect();
            let theta_ell: Vector = (0..2).map(|i| ell_q[i] + b * delta[i]).collect();
            let lambda = 1 + b + mu + 1;
            return crate::length::StabilityInput {
                q,
                ell_q,
                delta,
                theta_ell,
                mu,
                lambda,
            };
        }
    }
}
