mod common;

use common::fixture;
use tropical::{BoundaryClass, GraphData, TropError, TropGraph};

fn load(name: &str) -> TropGraph {
    TropGraph::from_json(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn star(legs: &[(&str, &str)], vertices: &[&str], edges: &[(&str, &str)]) -> TropGraph {
    let json = serde_json::json!({
        "vertices": vertices,
        "edges": edges.iter().enumerate().map(|(i, (a, b))| serde_json::json!({"name": format!("e{i}"), "from": a, "to": b})).collect::<Vec<_>>(),
        "legs": legs.iter().map(|(l, v)| serde_json::json!({"name": l, "vertex": v, "label": l})).collect::<Vec<_>>(),
    });
    TropGraph::from_json(&json.to_string()).unwrap()
}

#[test]
fn spine_ignores_free_branches() {
    let g = load("tropical/fourpointed.graph.json");
    let spine = g.spine();
    let names: Vec<&str> = spine
        .vertices
        .iter()
        .map(|&v| g.vertices()[v].as_str())
        .collect();
    assert_eq!(names, ["a", "b", "c", "d"]);
    assert_eq!(spine.edges.len(), 3);
    assert_eq!(g.boundary_class().unwrap(), BoundaryClass::X12);
    let chain = g.chain().unwrap();
    assert_eq!(g.vertices()[chain.v], "c");
    assert_eq!(g.vertices()[chain.w], "a");
    assert_eq!(chain.len(), 2);
    assert!(g.has_terminal_tail().unwrap());
}

#[test]
fn classes_of_small_trees() {
    let one = star(
        &[("x1", "a"), ("x2", "a"), ("x3", "a"), ("out", "a")],
        &["a"],
        &[],
    );
    assert_eq!(one.boundary_class().unwrap(), BoundaryClass::Interior);
    let x13 = star(
        &[("x1", "a"), ("x3", "a"), ("x2", "b"), ("out", "b")],
        &["a", "b"],
        &[("a", "b")],
    );
    assert_eq!(x13.boundary_class().unwrap(), BoundaryClass::X13);
    assert_eq!(x13.chain().unwrap().len(), 1);
    assert!(one.chain().is_err());
    let x123 = star(
        &[("x1", "a"), ("x2", "a"), ("x3", "a"), ("out", "b")],
        &["a", "b"],
        &[("a", "b")],
    );
    assert_eq!(x123.boundary_class().unwrap(), BoundaryClass::X123);
    let x23 = star(
        &[("x1", "a"), ("out", "a"), ("x2", "b"), ("x3", "b")],
        &["a", "b"],
        &[("b", "a")],
    );
    assert_eq!(x23.boundary_class().unwrap(), BoundaryClass::X23);
    assert_eq!(x23.chain().unwrap().edges, vec![(0, false)]);
    assert_eq!(BoundaryClass::X12.as_str(), "D(x1x2|x3,out)");
}

#[test]
fn rejects_bad_graphs() {
    let base = || -> GraphData {
        serde_json::from_value(serde_json::json!({
            "vertices": ["a", "b"],
            "edges": [{"name": "e", "from": "a", "to": "b"}],
            "legs": [{"name": "x1", "vertex": "a", "label": "x1"}]
        }))
        .unwrap()
    };
    assert!(TropGraph::from_data(&base()).is_ok());
    let mut cycle = base();
    cycle.edges.push(cycle.edges[0].clone());
    cycle.edges[1].name = "f".into();
    assert!(TropGraph::from_data(&cycle).is_err());
    let mut twice = base();
    twice.legs.push(twice.legs[0].clone());
    twice.legs[1].name = "y".into();
    assert!(TropGraph::from_data(&twice).is_err());
    let mut unknown = base();
    unknown.legs[0].vertex = "z".into();
    assert!(matches!(
        TropGraph::from_data(&unknown),
        Err(TropError::Input(_)) | Err(TropError::Invalid(_))
    ));
}

#[test]
fn json_round_trip() {
    let g = load("tropical/fourpointed.graph.json");
    let back = TropGraph::from_data(&g.to_data()).unwrap();
    assert_eq!(back.to_data(), g.to_data());
}
