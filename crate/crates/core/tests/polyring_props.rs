use std::sync::Arc;

use germlab_core::polyring::{rat, ExponentVector, MonomialOrder, PolyRing, Polynomial};
use proptest::prelude::*;

fn ring() -> Arc<PolyRing> {
    PolyRing::new(["x", "y", "z"], MonomialOrder::DegRevLex).unwrap()
}

fn poly() -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
    prop::collection::vec((-9i64..=9, [0u32..4, 0u32..4, 0u32..4]), 0..6)
}

fn build(r: &Arc<PolyRing>, terms: &[(i64, [u32; 3])]) -> Polynomial {
    Polynomial::from_terms(r, terms.iter().map(|(c, e)| (rat(*c), ExponentVector::from_slice(e))))
}

fn eval(p: &Polynomial, point: [i64; 3]) -> num_rational::BigRational {
    p.specialize(&[("x", rat(point[0])), ("y", rat(point[1])), ("z", rat(point[2]))]).unwrap().constant_coeff()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        let r = ring();
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &a), &Polynomial::zero(&r));
        prop_assert!((&a * &b).is_canonical());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), pt in [-3i64..=3, -3i64..=3, -3i64..=3]) {
        let r = ring();
        let (a, b) = (build(&r, &a), build(&r, &b));
        prop_assert_eq!(eval(&(&a * &b), pt), eval(&a, pt) * eval(&b, pt));
        prop_assert_eq!(eval(&(&a + &b), pt), eval(&a, pt) + eval(&b, pt));
    }

    #[test]
    fn composition_commutes_with_evaluation(a in poly(), s in [poly(), poly(), poly()], pt in [-2i64..=2, -2i64..=2, -2i64..=2]) {
        let r = ring();
        let a = build(&r, &a);
        let subs: Vec<Polynomial> = s.iter().map(|t| build(&r, t)).collect();
        let inner = [eval(&subs[0], pt), eval(&subs[1], pt), eval(&subs[2], pt)];
        let composed = a.compose(&subs).unwrap();
        let direct = a
            .specialize(&[("x", inner[0].clone()), ("y", inner[1].clone()), ("z", inner[2].clone())])
            .unwrap()
            .constant_coeff();
        prop_assert_eq!(eval(&composed, pt), direct);
    }

    #[test]
    fn derivative_obeys_leibniz(a in poly(), b in poly()) {
        let r = ring();
        let (a, b) = (build(&r, &a), build(&r, &b));
        let lhs = (&a * &b).derivative_at(0);
        let rhs = &(&a.derivative_at(0) * &b) + &(&a * &b.derivative_at(0));
        prop_assert_eq!(lhs, rhs);
    }
}
