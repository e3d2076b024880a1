mod common;

use common::{family, fixture};
use tropical::{load_complex, FamilyData, TropFamily};

fn data(name: &str) -> FamilyData {
    family(name).to_data()
}

#[test]
fn constant_map_is_valid() {
    let complex = load_complex(&fixture("blowup_p2.geometry.json")).unwrap();
    let json = serde_json::json!({
        "graph": {
            "vertices": ["a", "b"],
            "edges": [{"name": "e", "from": "a", "to": "b"}],
            "legs": [{"name": "x1", "vertex": "a", "label": "x1"}, {"name": "x2", "vertex": "b", "label": "x2"}]
        },
        "bsigma": {"a": "0", "b": "0", "e": "0", "x1": "0", "x2": "0"},
        "u": {"e": [], "x1": [], "x2": []},
        "base": {"rank": 1, "generators": [[1]]},
        "nu": {"a": [], "b": []},
        "lengths": {"e": [1]}
    });
    let fam = TropFamily::from_json(&json.to_string(), &complex).unwrap();
    assert!(fam.validate().is_valid(), "{:?}", fam.validate());
    assert_eq!(fam.universal_cone().dim, 1);
}

#[test]
fn fixtures_are_valid() {
    for name in [
        "chain_first",
        "chain_second",
        "derived",
        "terminal_tail",
        "internal_tail",
    ] {
        let fam = family(name);
        assert!(fam.validate().is_valid(), "{name}: {:?}", fam.validate());
    }
}

#[test]
fn perturbed_contact_order_is_reported() {
    let fam = family("derived");
    let mut d = data("derived");
    d.u.get_mut("E1").unwrap()[1] = 2;
    let bad = TropFamily::from_data(&d, fam.complex()).unwrap();
    let report = bad.validate();
    assert!(!report.is_valid());
    assert!(
        report.violations.iter().any(|v| v.contains("edge E1")),
        "{report:?}"
    );
}

#[test]
fn wrong_delta_is_reported() {
    let fam = family("derived");
    let mut d = data("derived");
    d.delta = Some(vec![2, 0]);
    let bad = TropFamily::from_data(&d, fam.complex()).unwrap();
    assert!(bad
        .validate()
        .violations
        .iter()
        .any(|v| v.contains("delta r")));
}

#[test]
fn vertex_outside_its_cone_is_reported() {
    let fam = family("chain_first");
    let mut d = data("chain_first");
    d.nu.insert("w".into(), vec![vec![-1, 0]]);
    let bad = TropFamily::from_data(&d, fam.complex()).unwrap();
    let v = bad.validate().violations;
    assert!(v.iter().any(|s| s.contains("vertex w")), "{v:?}");
}

#[test]
fn structural_errors_are_input_errors() {
    let fam = family("derived");
    let mut d = data("derived");
    d.u.insert("E1".into(), vec![1]);
    assert!(TropFamily::from_data(&d, fam.complex()).is_err());
    let mut d = data("derived");
    d.bsigma.insert("v2".into(), "sigma99".into());
    assert!(TropFamily::from_data(&d, fam.complex()).is_err());
    let mut d = data("derived");
    d.base.rank = 4;
    assert!(TropFamily::from_data(&d, fam.complex()).is_err());
}

#[test]
fn data_round_trip() {
    let fam = family("terminal_tail");
    let again = TropFamily::from_data(&fam.to_data(), fam.complex()).unwrap();
    assert_eq!(again.to_data(), fam.to_data());
}
