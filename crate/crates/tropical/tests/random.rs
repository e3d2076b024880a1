mod common;

use common::fixture;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropical::random::{random_cone_pair, tail_free_families};
use tropical::{
    find_splitting_edge, load_complex, projection_surjects_on_faces, splitting_edges,
    transverse_hypothesis,
};

#[test]
fn splitting_edge_is_unique_on_random_families() {
    let complex = load_complex(&fixture("blowup_p2.geometry.json")).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fams = tail_free_families(&mut rng, &complex, 200, 200_000);
    assert_eq!(fams.len(), 200);
    let later = fams
        .iter()
        .filter(|f| find_splitting_edge(f).is_ok_and(|s| s.index > 1))
        .count();
    assert!(
        later >= 20,
        "only {later} families split past the first edge"
    );
    let mut bad = Vec::new();
    for (k, fam) in fams.iter().enumerate() {
        assert!(fam.is_miniversal());
        match find_splitting_edge(fam) {
            Ok(s) if splitting_edges(fam).unwrap() == vec![s.index] => {}
            other => bad.push((k, format!("{other:?}"), fam.to_data())),
        }
    }
    assert!(
        bad.is_empty(),
        "{} counterexamples, first {:?}",
        bad.len(),
        bad.first()
    );
}

#[test]
fn hypothesis_implies_projection_on_faces() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut held = 0;
    for _ in 0..50 {
        let (f1, f2) = random_cone_pair(&mut rng);
        if transverse_hypothesis(&f1, &f2).unwrap() {
            held += 1;
            assert!(
                projection_surjects_on_faces(&f1, &f2).unwrap(),
                "{f1:?} {f2:?}"
            );
        }
    }
    assert!(held >= 10, "only {held} instances met the hypothesis");
}
