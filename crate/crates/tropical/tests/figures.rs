mod common;

use common::family;
use tropical::{
    check_assumptions, classify_tails, find_splitting_edge, splitting_edges, BoundaryClass,
    TailClass, TropError,
};

#[test]
fn first_edge_splits() {
    let fam = family("chain_first");
    assert!(fam.validate().is_valid(), "{:?}", fam.validate());
    assert_eq!(fam.graph().boundary_class().unwrap(), BoundaryClass::X23);
    assert_eq!(fam.delta(), Some(vec![0, 1]));
    let report = check_assumptions(&fam).unwrap();
    assert!(report.holds(), "{report:?}");
    assert_eq!(fam.universal_cone().dim, 2);
    assert!(fam.is_miniversal());
    assert_eq!(classify_tails(&fam).unwrap(), TailClass::TailFree);
    let s = find_splitting_edge(&fam).unwrap();
    assert_eq!(s.index, 1);
    assert_eq!(s.edge, "E1");
    assert_eq!(s.s, vec![1, 0]);
}

#[test]
fn second_edge_splits() {
    let fam = family("chain_second");
    assert!(fam.validate().is_valid(), "{:?}", fam.validate());
    assert!(check_assumptions(&fam).unwrap().holds());
    assert_eq!(splitting_edges(&fam).unwrap(), vec![2]);
    let s = find_splitting_edge(&fam).unwrap();
    assert_eq!(s.index, 2);
    assert_eq!(s.edge, "E2");
    assert!(s.lengths_before_proportional);
}

#[test]
fn derived_chain() {
    let fam = family("derived");
    assert!(fam.validate().is_valid(), "{:?}", fam.validate());
    assert_eq!(fam.graph().boundary_class().unwrap(), BoundaryClass::X12);
    assert_eq!(fam.universal_cone().dim, 2);
    assert_eq!(find_splitting_edge(&fam).unwrap().index, 1);
}

#[test]
fn terminal_tail_is_detected() {
    let fam = family("terminal_tail");
    assert!(fam.validate().is_valid(), "{:?}", fam.validate());
    assert_eq!(fam.graph().boundary_class().unwrap(), BoundaryClass::X12);
    assert!(fam.has_terminal_tail().unwrap());
    assert_eq!(classify_tails(&fam).unwrap(), TailClass::Terminal);
    assert_eq!(fam.universal_cone().dim, 3);
    assert!(matches!(
        find_splitting_edge(&fam),
        Err(TropError::Assumption(_))
    ));
}

#[test]
fn equal_lengths_give_an_internal_tail() {
    let fam = family("internal_tail");
    assert!(fam.validate().is_valid(), "{:?}", fam.validate());
    assert_eq!(fam.universal_cone().dim, 2);
    assert_eq!(splitting_edges(&fam).unwrap(), vec![1, 2]);
    assert_eq!(classify_tails(&fam).unwrap(), TailClass::Internal);
    assert!(!fam.has_terminal_tail().unwrap());
}
