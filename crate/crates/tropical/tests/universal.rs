mod common;

use common::{family, fixture};
use tropical::{load_complex, nonneg_solutions, TropFamily};

#[test]
fn nonneg_solutions_of_a_plane() {
    // x + y = z in the orthant: rays (1,0,1), (0,1,1)
    let rays = nonneg_solutions(&[vec![1, 1, -1]], 3);
    assert_eq!(rays, vec![vec![0, 1, 1], vec![1, 0, 1]]);
    assert_eq!(nonneg_solutions(&[], 2).len(), 2);
    assert!(nonneg_solutions(&[vec![1, 1]], 2).is_empty());
}

#[test]
fn constant_type_has_one_direction_per_edge() {
    let complex = load_complex(&fixture("blowup_p2.geometry.json")).unwrap();
    for edges in 0..4 {
        let vertices: Vec<String> = (0..=edges).map(|i| format!("v{i}")).collect();
        let mut bsigma = serde_json::Map::new();
        let mut nu = serde_json::Map::new();
        let mut u = serde_json::Map::new();
        let mut lengths = serde_json::Map::new();
        let mut list = Vec::new();
        for v in &vertices {
            bsigma.insert(v.clone(), "rho1".into());
            nu.insert(v.clone(), serde_json::json!([[1]]));
        }
        for i in 0..edges {
            let name = format!("e{i}");
            list.push(
                serde_json::json!({"name": name, "from": vertices[i], "to": vertices[i + 1]}),
            );
            bsigma.insert(name.clone(), "rho1".into());
            u.insert(name.clone(), serde_json::json!([0]));
            lengths.insert(name, serde_json::json!([1]));
        }
        let json = serde_json::json!({
            "graph": {"vertices": vertices, "edges": list, "legs": []},
            "bsigma": bsigma, "u": u, "nu": nu, "lengths": lengths,
            "base": {"rank": 1, "generators": [[1]]}
        });
        let fam = TropFamily::from_json(&json.to_string(), &complex).unwrap();
        assert!(fam.validate().is_valid());
        assert_eq!(fam.universal_cone().dim, 1 + edges, "{edges} edges");
    }
}

#[test]
fn fixture_dimensions() {
    for (name, dim) in [
        ("chain_first", 2),
        ("chain_second", 2),
        ("derived", 2),
        ("internal_tail", 2),
        ("terminal_tail", 3),
    ] {
        let fam = family(name);
        let cone = fam.universal_cone();
        assert_eq!(cone.dim, dim, "{name}");
        assert!(fam.is_miniversal(), "{name}");
    }
}

#[test]
fn rays_solve_the_equations() {
    let cone = family("terminal_tail").universal_cone();
    for ray in &cone.rays {
        assert!(ray.iter().all(|&x| x >= 0));
        for eq in &cone.equations {
            assert_eq!(eq.iter().zip(ray).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
    }
}
