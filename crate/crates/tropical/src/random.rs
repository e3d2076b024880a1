//! Seeded generators of cone pairs and of four-pointed chain families.

use crate::analysis::{check_assumptions, classify_tails, TailClass};
use crate::family::{support, BaseData, FamilyData, TropFamily};
use crate::graph::{EdgeData, GraphData, LegData, LegLabel};
use crate::transverse::ConeMap;
use cone_complex::ConeComplex;
use lattice_monoid::linalg::{dot, is_zero, Matrix, Vector};
use lattice_monoid::{saturate, ToricMonoid};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

fn random_pointed_cone(rng: &mut impl Rng) -> (usize, Matrix) {
    loop {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=n + 1);
        let gens = if rng.gen_bool(0.3) {
            (0..n)
                .map(|j| (0..n).map(|i| i64::from(i == j)).collect())
                .collect()
        } else {
            random_matrix(rng, k, n, -1, 2)
        };
        let cone = lattice_monoid::Cone::new(n, &gens);
        if cone.dim() > 0 && cone.is_pointed() {
            return (n, gens);
        }
    }
}

/// Two maps into a common `Z^m`, sources of dimension at most 3.
pub fn random_cone_pair(rng: &mut impl Rng) -> (ConeMap, ConeMap) {
    let m = rng.gen_range(1..=3);
    let (n1, g1) = random_pointed_cone(rng);
    let (n2, g2) = random_pointed_cone(rng);
    let f1 = ConeMap::new(n1, &g1, random_matrix(rng, m, n1, 0, 2)).expect("small pointed cone");
    let f2 = ConeMap::new(n2, &g2, random_matrix(rng, m, n2, 0, 2)).expect("small pointed cone");
    (f1, f2)
}

fn cone_with_labels(complex: &ConeComplex, labels: &BTreeSet<usize>) -> Option<usize> {
    let want: Vec<usize> = labels.iter().copied().collect();
    let found: Vec<usize> = (0..complex.cones().len())
        .filter(|&k| complex.cone(k).labels == want)
        .collect();
    (found.len() == 1).then(|| found[0])
}

fn random_base(rng: &mut impl Rng) -> ToricMonoid {
    loop {
        let g = random_matrix(rng, 2, 2, -3, 3);
        if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0 {
            let m = ToricMonoid::new(2, g).expect("rank 2");
            if m.is_sharp() {
                return saturate(&m);
            }
        }
    }
}

fn random_element(rng: &mut impl Rng, q: &ToricMonoid) -> Vector {
    loop {
        let x: Vector = (0..2).map(|_| rng.gen_range(-3..=3)).collect();
        if !is_zero(&x) && q.contains(&x) {
            return x;
        }
    }
}

fn cone_coords(complex: &ConeComplex, cone: usize, global: &[i64]) -> Vector {
    complex
        .cone(cone)
        .labels
        .iter()
        .map(|&l| global[l])
        .collect()
}

/// A chain family `v_1 -> ... -> v_n` with `v_out = v_1` in the given
/// complex, or `None` when the random data leaves the complex.
pub fn random_chain_family(rng: &mut impl Rng, complex: &ConeComplex) -> Option<TropFamily> {
    let s = complex.divisors().len();
    let q = random_base(rng);
    let rays = q.cone().rays();
    let points = complex.enumerate_points(&vec![1; s], 2, None).ok()?;
    let r = points.choose(rng)?.clone();
    let rv = complex.pairings(&r);
    let delta: Vector = {
        let ray = rays.choose(rng)?;
        let k = rng.gen_range(1..=2);
        ray.iter().map(|x| k * x).collect()
    };
    let edges = rng.gen_range(1..=4);
    let free = rng.gen_range(0..edges);
    let mut nu: Vec<Matrix> = vec![rv
        .iter()
        .map(|&x| delta.iter().map(|d| d * x).collect())
        .collect()];
    let mut us: Vec<Vector> = Vec::new();
    let mut lengths: Vec<Vector> = Vec::new();
    for j in 0..edges {
        let l: Vector = if j != free && rng.gen_bool(0.9) {
            delta.iter().map(|d| d * rng.gen_range(1..=2)).collect()
        } else {
            random_element(rng, &q)
        };
        let prev = nu.last().expect("nonempty");
        let u: Vector = prev.iter().map(|row| step(rng, row, &l)).collect();
        let next: Matrix = prev
            .iter()
            .zip(&u)
            .map(|(row, &x)| row.iter().zip(&l).map(|(a, b)| a + x * b).collect())
            .collect();
        if next.iter().any(|row| !is_zero(row) && !q.contains(row)) {
            return None;
        }
        us.push(u);
        lengths.push(l);
        nu.push(next);
    }
    let supp = |m: &Matrix| -> BTreeSet<usize> { (0..s).filter(|&k| !is_zero(&m[k])).collect() };
    let vcones: Vec<usize> = nu
        .iter()
        .map(|m| cone_with_labels(complex, &supp(m)))
        .collect::<Option<_>>()?;
    let names: Vec<String> = (1..=edges + 1).map(|i| format!("v{i}")).collect();
    let mut data = FamilyData {
        name: None,
        geometry: None,
        graph: GraphData {
            vertices: names.clone(),
            edges: Vec::new(),
            legs: Vec::new(),
        },
        bsigma: BTreeMap::new(),
        u: BTreeMap::new(),
        base: BaseData {
            rank: 2,
            generators: q.generators().to_vec(),
        },
        nu: BTreeMap::new(),
        lengths: BTreeMap::new(),
        delta: Some(delta.clone()),
        r: Some(complex.format_point(&r)),
    };
    for (i, name) in names.iter().enumerate() {
        data.bsigma
            .insert(name.clone(), complex.cone(vcones[i]).id.clone());
        data.nu
            .insert(name.clone(), cone_coords_rows(complex, vcones[i], &nu[i]));
    }
    for i in 0..edges {
        let mut labels = supp(&nu[i]);
        labels.extend(supp(&nu[i + 1]));
        let ec = cone_with_labels(complex, &labels)?;
        let name = format!("E{}", i + 1);
        if !support(&us[i]).is_subset(&labels) {
            return None;
        }
        data.graph.edges.push(EdgeData {
            name: name.clone(),
            from: names[i].clone(),
            to: names[i + 1].clone(),
        });
        data.bsigma
            .insert(name.clone(), complex.cone(ec).id.clone());
        data.u
            .insert(name.clone(), cone_coords(complex, ec, &us[i]));
        data.lengths.insert(name, lengths[i].clone());
    }
    let (near, far) = if rng.gen_bool(0.5) {
        (LegLabel::X3, [LegLabel::X1, LegLabel::X2])
    } else {
        (LegLabel::X1, [LegLabel::X2, LegLabel::X3])
    };
    let add_leg = |label: LegLabel,
                   vertex: usize,
                   u: Vector,
                   bounded: bool,
                   data: &mut FamilyData|
     -> Option<()> {
        let mut labels = supp(&nu[vertex]);
        labels.extend(support(&u));
        let lc = cone_with_labels(complex, &labels)?;
        let name = label.as_str().to_string();
        data.graph.legs.push(LegData {
            name: name.clone(),
            vertex: names[vertex].clone(),
            label,
            bounded,
        });
        data.bsigma
            .insert(name.clone(), complex.cone(lc).id.clone());
        data.u.insert(name, cone_coords(complex, lc, &u));
        Some(())
    };
    let neg: Vector = rv.iter().map(|x| -x).collect();
    add_leg(LegLabel::Out, 0, neg, !is_zero(&rv), &mut data)?;
    let contact = |rng: &mut dyn rand::RngCore| points.choose(rng).map(|p| complex.pairings(p));
    add_leg(near, 0, contact(rng)?, false, &mut data)?;
    for label in far {
        add_leg(label, edges, contact(rng)?, false, &mut data)?;
    }
    let fam = TropFamily::from_data(&data, complex).ok()?;
    fam.validate().is_valid().then_some(fam)
}

/// A coordinate of `u` for one divisor: often one that empties the row when
/// it is a multiple of `l`, otherwise small.
fn step(rng: &mut impl Rng, row: &[i64], l: &[i64]) -> i64 {
    let multiple = (1..=4).find(|&c| row.iter().zip(l).all(|(a, b)| *a == c * b));
    match multiple {
        Some(c) if rng.gen_bool(0.6) => -c,
        _ if is_zero(row) && rng.gen_bool(0.5) => 0,
        _ => rng.gen_range(-2..=2),
    }
}

fn cone_coords_rows(complex: &ConeComplex, cone: usize, m: &Matrix) -> Matrix {
    complex
        .cone(cone)
        .labels
        .iter()
        .map(|&l| m[l].clone())
        .collect()
}

/// Families meeting the assumptions of the splitting analysis, without
/// terminal tail and with exactly one edge of splitting type. At most a
/// quarter of them have a chain of a single edge.
pub fn tail_free_families(
    rng: &mut impl Rng,
    complex: &ConeComplex,
    count: usize,
    max_tries: usize,
) -> Vec<TropFamily> {
    let mut out: Vec<TropFamily> = Vec::new();
    let mut short = 0;
    for _ in 0..max_tries {
        if out.len() == count {
            break;
        }
        let Some(fam) = random_chain_family(rng, complex) else {
            continue;
        };
        let ok = check_assumptions(&fam).map(|r| r.holds()).unwrap_or(false)
            && matches!(classify_tails(&fam), Ok(TailClass::TailFree));
        let one = fam.graph().edges().len() == 1;
        if ok && (!one || 4 * short < count) {
            short += usize::from(one);
            out.push(fam);
        }
    }
    out
}

/// `dot` over the rays of `omega`, exposed for tests of the generators.
pub fn values_on(rays: &Matrix, f: &[i64]) -> Vector {
    rays.iter().map(|m| dot(f, m)).collect()
}
