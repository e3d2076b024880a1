mod common;

use common::family;
use tropical::{FamilyData, TropFamily};

fn relabel(d: &FamilyData, f: impl Fn(&str) -> String) -> FamilyData {
    let mut out = d.clone();
    let map = |m: &std::collections::BTreeMap<String, Vec<i64>>| {
        m.iter().map(|(k, v)| (f(k), v.clone())).collect()
    };
    out.graph.vertices = d.graph.vertices.iter().map(|v| f(v)).collect();
    for e in &mut out.graph.edges {
        e.name = f(&e.name);
        e.from = f(&e.from);
        e.to = f(&e.to);
    }
    for l in &mut out.graph.legs {
        l.name = f(&l.name);
        l.vertex = f(&l.vertex);
    }
    out.bsigma = d.bsigma.iter().map(|(k, v)| (f(k), v.clone())).collect();
    out.u = map(&d.u);
    out.lengths = map(&d.lengths);
    out.nu = d.nu.iter().map(|(k, v)| (f(k), v.clone())).collect();
    out
}

/// Applies `x -> x g` to every base vector, with `g` unimodular.
fn change_base(d: &FamilyData, g: [[i64; 2]; 2]) -> FamilyData {
    let t = |x: &Vec<i64>| {
        vec![
            x[0] * g[0][0] + x[1] * g[1][0],
            x[0] * g[0][1] + x[1] * g[1][1],
        ]
    };
    let mut out = d.clone();
    out.base.generators = d.base.generators.iter().map(t).collect();
    out.lengths = d.lengths.iter().map(|(k, v)| (k.clone(), t(v))).collect();
    out.nu =
        d.nu.iter()
            .map(|(k, m)| (k.clone(), m.iter().map(t).collect()))
            .collect();
    out.delta = d.delta.as_ref().map(t);
    out
}

#[test]
fn universal_dimension_ignores_names() {
    for name in [
        "chain_first",
        "chain_second",
        "internal_tail",
        "terminal_tail",
    ] {
        let fam = family(name);
        let renamed = relabel(&fam.to_data(), |s| format!("z_{s}"));
        let other = TropFamily::from_data(&renamed, fam.complex()).unwrap();
        assert!(other.validate().is_valid());
        assert_eq!(
            other.universal_cone().dim,
            fam.universal_cone().dim,
            "{name}"
        );
        assert_eq!(
            other.graph().boundary_class().unwrap(),
            fam.graph().boundary_class().unwrap()
        );
    }
}

#[test]
fn results_ignore_unimodular_base_change() {
    // The base change acts on the row functionals; the dual rays move by the
    // inverse transpose, so every pairing is unchanged.
    for name in ["chain_first", "chain_second", "derived", "internal_tail"] {
        let fam = family(name);
        for g in [[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]]] {
            let moved =
                TropFamily::from_data(&change_base(&fam.to_data(), g), fam.complex()).unwrap();
            assert!(
                moved.validate().is_valid(),
                "{name} {g:?}: {:?}",
                moved.validate()
            );
            assert_eq!(moved.universal_cone().dim, fam.universal_cone().dim);
            assert_eq!(moved.is_miniversal(), fam.is_miniversal());
            assert_eq!(
                tropical::splitting_edges(&moved).unwrap(),
                tropical::splitting_edges(&fam).unwrap()
            );
        }
    }
}
