use curve_data::{
    complement, ClassMonoid, CoArtinianIdeal, Coef, CoefficientRing, Curvature, CurveClassData,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring() -> CoefficientRing {
    let p = ClassMonoid::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]], vec![1, 1]).unwrap();
    let i = CoArtinianIdeal::generated(&p, vec![vec![4, 0], vec![0, 3], vec![2, 2]]).unwrap();
    CoefficientRing::new(p, i).unwrap()
}

fn random_coef(rng: &mut ChaCha8Rng, ring: &CoefficientRing) -> Coef {
    let mut c = Coef::zero();
    for k in 0..ring.dim() {
        if rng.gen_bool(0.5) {
            let q = BigRational::new(
                BigInt::from(rng.gen_range(-5..=5)),
                BigInt::from(rng.gen_range(1..=3)),
            );
            c.add_term(k, &q);
        }
    }
    c
}

#[test]
fn complement_is_closed_under_summands() {
    let r = ring();
    let p = r.monoid();
    let classes = complement(p, r.ideal()).unwrap();
    for a in &classes {
        for b in &classes {
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if !r.ideal().contains(p, &s) {
                assert!(classes.contains(&s));
            }
        }
    }
    // every summand decomposition of a complement element stays outside I
    for a in &classes {
        for g in p.monoid().generators() {
            let d: Vec<i64> = a.iter().zip(g).map(|(x, y)| x - y).collect();
            if p.contains(&d) {
                assert!(!r.ideal().contains(p, &d));
            }
        }
    }
}

#[test]
fn truncated_product_is_associative_and_commutative() {
    let r = ring();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let (x, y, z) = (
            random_coef(&mut rng, &r),
            random_coef(&mut rng, &r),
            random_coef(&mut rng, &r),
        );
        assert_eq!(r.mul(&x, &y).unwrap(), r.mul(&y, &x).unwrap());
        let left = r.mul(&r.mul(&x, &y).unwrap(), &z).unwrap();
        let right = r.mul(&x, &r.mul(&y, &z).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(r.mul(&r.one(), &x).unwrap(), x);
    }
}

#[test]
fn logcy_pairing_identity() {
    let a: Vec<BigRational> = [1, 0, 2]
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    let m = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
    // c = -Σ a_i row_i = -(1,0) - 2(1,1)
    let data = CurveClassData::new(2, m, vec![-3, -2], Curvature::LogCy, Some(a.clone())).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let cls = vec![rng.gen_range(-5..=5), rng.gen_range(-5..=5)];
        let expected: BigRational = -a
            .iter()
            .enumerate()
            .map(|(i, ai)| {
                ai * BigRational::from_integer(BigInt::from(data.divisor_pairing(i, &cls)))
            })
            .sum::<BigRational>();
        assert_eq!(
            BigRational::from_integer(BigInt::from(data.c1_pairing(&cls))),
            expected
        );
    }
}

#[test]
fn spec_product_examples() {
    let p = ClassMonoid::new(2, vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap();
    let i = CoArtinianIdeal::threshold(&p, vec![1, 1], 3).unwrap();
    let r = CoefficientRing::new(p, i).unwrap();
    let a = r.t(&[1, 0]).unwrap();
    let b = r.t(&[1, 1]).unwrap();
    assert_eq!(r.mul(&a, &a).unwrap(), r.t(&[2, 0]).unwrap());
    assert!(r.mul(&a, &b).unwrap().is_zero());
    assert_eq!(r.mul(&r.one(), &b).unwrap(), b);
}
