use proptest::prelude::*;
use qahh::ring::{lambda, BiDegree, RingElem, Spec, Unit};

fn elem() -> impl Strategy<Value = RingElem> {
    prop::collection::vec((0u8..2, 0u8..2, -3i64..4, -4i64..5), 0..5)
        .prop_map(|ts| RingElem::from_terms(ts.into_iter().map(|(x, y, z, c)| ((x, y, z), c))))
}

fn unit() -> impl Strategy<Value = Unit> {
    (any::<bool>(), any::<bool>(), any::<bool>(), -4i64..5).prop_map(|(neg, x, y, z)| Unit { neg, x, y, z })
}

fn bideg() -> impl Strategy<Value = BiDegree> {
    (-5i64..6, -5i64..6).prop_map(|(a, b)| BiDegree::new(a, b))
}

proptest! {
    #[test]
    fn ring_axioms(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &RingElem::zero(), a.clone());
        prop_assert_eq!(&a * &RingElem::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn specializations_are_ring_maps(a in elem(), b in elem()) {
        for s in Spec::all() {
            prop_assert_eq!(s.apply(&(&a * &b)), s.apply(&a) * s.apply(&b));
            prop_assert_eq!(s.apply(&(&a + &b)), s.apply(&a) + s.apply(&b));
        }
    }

    #[test]
    fn units_form_a_group(u in unit(), v in unit(), w in unit()) {
        prop_assert_eq!((u * v) * w, u * (v * w));
        prop_assert!((u * u.inv()).is_one());
        prop_assert_eq!((u * v).to_elem(), &u.to_elem() * &v.to_elem());
        prop_assert_eq!(u.to_elem().as_unit(), Some(u));
        for s in Spec::all() {
            prop_assert_eq!(u.specialize(s.x, s.y, s.z), s.apply(&u.to_elem()));
        }
    }

    #[test]
    fn lambda_is_bimultiplicative(a in bideg(), b in bideg(), c in bideg()) {
        prop_assert_eq!(lambda(a + b, c), lambda(a, c) * lambda(b, c));
        prop_assert_eq!(lambda(a, b + c), lambda(a, b) * lambda(a, c));
        // λ(a, b) λ(b, a) has no Z part.
        prop_assert_eq!((lambda(a, b) * lambda(b, a)).z, 0);
    }

    #[test]
    fn json_round_trip(a in elem()) {
        let s = serde_json::to_string(&a).unwrap();
        let b: RingElem = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn x_and_y_are_involutions() {
    assert!((&RingElem::x() * &RingElem::x()).is_one());
    assert!((&RingElem::y() * &RingElem::y()).is_one());
    assert!((&RingElem::z(3) * &RingElem::z(-3)).is_one());
}

#[test]
fn zero_divisors_exist() {
    // (1 - XY)(1 + XY) = 0, so R is not a domain.
    let xy = &RingElem::x() * &RingElem::y();
    let a = &RingElem::one() - &xy;
    let b = &RingElem::one() + &xy;
    assert!((&a * &b).is_zero());
    assert!(!a.is_zero() && !b.is_zero());
}

#[test]
fn lambda_examples() {
    let v = |a, b| BiDegree::new(a, b);
    assert_eq!(lambda(v(1, 0), v(1, 0)), Unit::X);
    assert_eq!(lambda(v(0, 1), v(0, 1)), Unit::Y);
    assert_eq!(lambda(v(1, 0), v(0, 1)), Unit::Z);
    assert_eq!(lambda(v(0, 1), v(1, 0)), Unit::Z.inv());
    assert!(lambda(v(2, 2), v(1, 1)).is_one());
}

#[test]
fn spec_names() {
    assert_eq!(Spec::parse("even"), Some(Spec::EVEN));
    assert_eq!(Spec::parse("odd"), Some(Spec::ODD));
    assert_eq!(Spec::parse("-1,1,-1"), Some(Spec { x: -1, y: 1, z: -1 }));
    assert_eq!(Spec::parse("2,1,1"), None);
    assert_eq!(Spec::all().len(), 8);
    for s in Spec::all() {
        assert_eq!(Spec::parse(&s.name()), Some(s));
    }
}
