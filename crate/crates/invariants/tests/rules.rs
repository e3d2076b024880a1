use cone_complex::{ConeComplex, GeometryData, IntegralPoint, Relative, Skeleton};
use curve_data::{CurveClassData, CurveData};
use invariants::{InvariantError, InvariantTable, Policy, Rule, Rules, Source};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

struct Fixture {
    complex: ConeComplex,
    skeleton: Skeleton,
    classes: CurveClassData,
    relative: Option<Relative>,
    classes_list: Vec<Vec<i64>>,
}

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn fixture(name: &str) -> Fixture {
    let text = read(name);
    let g = GeometryData::from_json(&text).unwrap();
    let complex = g.complex().unwrap();
    let skeleton = g.skeleton(&complex).unwrap();
    let relative = g.relative(&complex).unwrap();
    let (classes, ring) = CurveData::from_json(&text).unwrap().build().unwrap();
    Fixture {
        complex,
        skeleton,
        classes,
        relative,
        classes_list: ring.classes().to_vec(),
    }
}

impl Fixture {
    fn rules(&self) -> Rules<'_> {
        Rules {
            complex: &self.complex,
            skeleton: &self.skeleton,
            classes: &self.classes,
            relative: self.relative.as_ref(),
        }
    }

    fn p(&self, s: &str) -> IntegralPoint {
        self.complex.parse_point(s).unwrap()
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn constant_terms() {
    let f = fixture("blowup_p2.geometry.json");
    let r = f.rules();
    assert_eq!(r.constant_term(&f.p("v1"), &f.p("v2"), &f.p("v1+v2")), q(1));
    assert_eq!(r.constant_term(&f.p("v1"), &f.p("v2"), &f.p("v1")), q(0));
    let g = fixture("line_conic.geometry.json");
    let r = g.rules();
    assert_eq!(
        r.constant_term(&g.p("v1"), &g.p("v2"), &g.p("sigma1:1,1")),
        q(1)
    );
    assert_eq!(
        r.constant_term(&g.p("v1"), &g.p("v2"), &g.p("sigma2:1,1")),
        q(1)
    );
}

#[test]
fn candidates() {
    let f = fixture("blowup_p2.geometry.json");
    let r = f.rules();
    let (v1, v2) = (f.p("v1"), f.p("v2"));
    assert_eq!(r.candidate_outputs(&v1, &v2, &[0, 0]), vec![f.p("v1+v2")]);
    assert_eq!(r.candidate_outputs(&v1, &v2, &[0, 1]), vec![v2.clone()]);
    // D2·(L−E) = 1 forces a negative pairing with D1
    assert!(r.candidate_outputs(&v1, &f.p("v3"), &[1, 1]).is_empty());
    let g = fixture("line_conic.geometry.json");
    let r = g.rules();
    assert_eq!(
        r.candidate_outputs(&g.p("v1"), &g.p("v2"), &[0]),
        vec![g.p("sigma1:1,1"), g.p("sigma2:1,1")]
    );
}

#[test]
fn cascade() {
    let f = fixture("blowup_p2.geometry.json");
    let r = f.rules();
    let table = InvariantTable::load(&read("blowup_p2.table.jsonl"), &r, Policy::Complete).unwrap();
    assert_eq!(table.len(), 4);
    let z = f.complex.zero_point();
    let v = f.p("v1+2v2");
    assert_eq!(
        r.get_n(&[0, 0], &z, &v, &v, &table).unwrap(),
        (q(1), Source::Unit)
    );
    assert_eq!(
        r.get_n(&[1, 0], &z, &v, &v, &table).unwrap(),
        (q(0), Source::Unit)
    );
    assert_eq!(
        r.get_n(&[0, 1], &f.p("v1"), &f.p("v2"), &f.p("v2"), &table)
            .unwrap(),
        (q(0), Source::Table)
    );
    assert_eq!(
        r.get_n(&[1, 0], &f.p("v2"), &f.p("v3"), &z, &table)
            .unwrap(),
        (q(1), Source::Table)
    );
    assert_eq!(
        r.get_n(&[1, 0], &f.p("v3"), &f.p("v2"), &z, &table)
            .unwrap(),
        (q(1), Source::Table)
    );
    assert_eq!(
        r.get_n(&[1, 0], &f.p("v2"), &f.p("v3"), &f.p("v1"), &table)
            .unwrap()
            .1,
        Source::Constraint
    );
    assert_eq!(
        r.get_n(&[1, 1], &f.p("v2"), &f.p("v2"), &f.p("v1"), &table)
            .unwrap()
            .1,
        Source::Constraint
    );

    let p1 = fixture("p1_three_points.geometry.json");
    let r = p1.rules();
    let empty = InvariantTable::new(Policy::Strict);
    let (a, b) = (p1.p("v1"), p1.p("v2"));
    assert_eq!(
        r.get_n(&[1], &a, &b, &p1.complex.zero_point(), &empty)
            .unwrap(),
        (q(0), Source::Vanishing)
    );
    assert_eq!(
        r.get_n(&[0], &a, &b, &p1.complex.zero_point(), &empty)
            .unwrap(),
        (q(0), Source::Constant)
    );
}

#[test]
fn strict_policy_names_the_missing_entry() {
    let g = fixture("line_conic.geometry.json");
    let r = g.rules();
    let table = InvariantTable::load(&read("line_conic.table.jsonl"), &r, Policy::Strict).unwrap();
    let (s1, s2) = (g.p("sigma1:1,1"), g.p("sigma2:1,1"));
    assert_eq!(
        r.get_n(&[1], &s1, &s2, &g.p("v1"), &table).unwrap(),
        (q(1), Source::Table)
    );
    let err = r.get_n(&[1], &s1, &s1, &g.p("v1"), &table);
    match err {
        Err(e @ InvariantError::Unknown { .. }) => {
            assert_eq!(
                e.to_string(),
                "unknown invariant N^[1]_{sigma1:1,1,sigma1:1,1,rho1:1}"
            )
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn load_time_rejections() {
    let f = fixture("blowup_p2.geometry.json");
    let r = f.rules();
    let line = |a: &str, p1: &str, p2: &str, out: &str| {
        format!(r#"{{"A":{a},"p1":{p1},"p2":{p2},"r":{out},"N":"1/2"}}"#)
    };
    let v1 = r#"{"cone":"rho1","coords":[1]}"#;
    let v2 = r#"{"cone":"rho2","coords":[1]}"#;
    let zero = r#"{"cone":"0","coords":[]}"#;
    let reject = |text: String| match InvariantTable::load(&text, &r, Policy::Strict) {
        Err(InvariantError::Rejected { rule, .. }) => rule,
        other => panic!("{other:?}"),
    };
    assert_eq!(reject(line("[0,0]", v1, v2, v1)), Rule::ConstantMaps);
    assert_eq!(reject(line("[0,1]", zero, v2, v2)), Rule::Unit);
    assert!(matches!(
        reject(line("[0,1]", v1, v2, v1)),
        Rule::Constraint { .. }
    ));
    let twice = format!(
        "{}\n{}",
        line("[0,1]", v1, v2, v2),
        line("[0,1]", v2, v1, v2).replace("1/2", "1")
    );
    assert_eq!(reject(twice), Rule::Conflict);

    let p1 = fixture("p1_three_points.geometry.json");
    let r1 = p1.rules();
    let text = r#"{"A":[1],"p1":{"cone":"rho1","coords":[1]},"p2":{"cone":"rho2","coords":[1]},"r":{"cone":"rho3","coords":[1]},"N":1}"#;
    assert!(matches!(
        InvariantTable::load(text, &r1, Policy::Strict),
        Err(InvariantError::Rejected {
            rule: Rule::FirstChern(-1),
            line: 1
        })
    ));
    assert!(matches!(
        InvariantTable::load("{\"A\":[1]}", &r1, Policy::Strict),
        Err(InvariantError::Parse { .. })
    ));
}

#[test]
fn degree_rule_in_relative_mode() {
    let t = fixture("relative_toy.geometry.json");
    let r = t.rules();
    let v1 = t.p("v1");
    let two = t.p("2v1");
    // pairing matrix is zero, so the constraint already forces r = p1 + p2
    assert!(r.validate(&[1], &v1, &v1, &two).is_ok());
    assert!(matches!(
        r.validate(&[1], &v1, &v1, &v1),
        Err(Rule::Constraint { .. })
    ));
}

#[test]
fn round_trip_jsonl() {
    let f = fixture("blowup_p2.geometry.json");
    let r = f.rules();
    let table = InvariantTable::load(&read("blowup_p2.table.jsonl"), &r, Policy::Complete).unwrap();
    let again = InvariantTable::load(&table.to_jsonl(&f.complex), &r, Policy::Complete).unwrap();
    assert_eq!(table, again);
}

/// Symmetry in the inputs, and nonzero values obey the constraints and the
/// degree rule.
#[test]
fn random_queries() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, table) in [
        (
            "blowup_p2.geometry.json",
            Some(("blowup_p2.table.jsonl", Policy::Complete)),
        ),
        (
            "line_conic.geometry.json",
            Some(("line_conic.table.jsonl", Policy::Complete)),
        ),
        ("p1_three_points.geometry.json", None),
        ("relative_toy.geometry.json", None),
    ] {
        let f = fixture(name);
        let r = f.rules();
        let table = match table {
            Some((t, pol)) => InvariantTable::load(&read(t), &r, pol).unwrap(),
            None => InvariantTable::new(Policy::Complete),
        };
        let phi = vec![1; f.complex.divisors().len()];
        let pts: Vec<IntegralPoint> = f
            .complex
            .enumerate_points(&phi, 3, None)
            .unwrap()
            .into_iter()
            .filter(|p| f.skeleton.contains(p))
            .collect();
        for _ in 0..300 {
            let p1 = &pts[rng.gen_range(0..pts.len())];
            let p2 = &pts[rng.gen_range(0..pts.len())];
            let a = &f.classes_list[rng.gen_range(0..f.classes_list.len())];
            let mut outs = r.candidate_outputs(p1, p2, a);
            outs.push(pts[rng.gen_range(0..pts.len())].clone());
            for out in &outs {
                let x = r.get_n(a, p1, p2, out, &table).unwrap().0;
                let y = r.get_n(a, p2, p1, out, &table).unwrap().0;
                assert_eq!(x, y);
                if !x.is_zero() {
                    assert_eq!(r.forced_pairings(p1, p2, a), f.complex.pairings(out));
                    if let Some(rel) = &f.relative {
                        assert_eq!(
                            rel.degree(&f.complex, out),
                            rel.degree(&f.complex, p1) + rel.degree(&f.complex, p2)
                        );
                    }
                }
            }
        }
    }
}
