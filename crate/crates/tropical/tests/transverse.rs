use tropical::transverse::{fibre_report, lambda_threshold};
use tropical::{
    cone_fibre_product, projection_surjects_on_faces, psi_y, transverse_hypothesis, ConeMap,
};

fn test_map() -> ConeMap {
    // rays to the l* axis and to 2 l* + delta*
    ConeMap::orthant(vec![vec![1, 2], vec![0, 1]]).unwrap()
}

#[test]
fn identity_gives_the_first_cone() {
    let f1 = ConeMap::new(2, &[vec![1, 0], vec![1, 1]], vec![vec![1, 0], vec![0, 1]]).unwrap();
    let id = ConeMap::orthant(vec![vec![1, 0], vec![0, 1]]).unwrap();
    let fp = cone_fibre_product(&f1, &id).unwrap();
    let report = fibre_report(&fp);
    assert_eq!(report.dim, 2);
    let firsts: Vec<Vec<i64>> = report.rays.iter().map(|r| fp.first(r)).collect();
    assert!(firsts.contains(&vec![1, 0]) && firsts.contains(&vec![1, 1]));
    assert!(transverse_hypothesis(&f1, &id).unwrap());
}

#[test]
fn psi_flips_at_two() {
    let t = test_map();
    assert!(!transverse_hypothesis(&psi_y(1), &t).unwrap());
    for lambda in 2..6 {
        assert!(
            transverse_hypothesis(&psi_y(lambda), &t).unwrap(),
            "lambda {lambda}"
        );
        assert!(projection_surjects_on_faces(&psi_y(lambda), &t).unwrap());
    }
    assert_eq!(lambda_threshold(&t, 8).unwrap(), Some(2));
}

#[test]
fn dimension_limit() {
    let gens: Vec<Vec<i64>> = (0..5)
        .map(|i| (0..5).map(|j| i64::from(i == j)).collect())
        .collect();
    assert!(ConeMap::new(5, &gens, vec![vec![1; 5]]).is_err());
    assert!(ConeMap::new(2, &[vec![1, 0], vec![-1, 0]], vec![vec![1, 1]]).is_err());
}
