use proptest::prelude::*;
use swalg_core::opalg::{rat, OpMonomial, Operator, ParamAssignment, ParamPoly};

const N: usize = 2;

fn coefficient() -> impl Strategy<Value = ParamPoly> {
    (-3i64..=3, 0usize..3).prop_map(|(k, which)| {
        let base = match which {
            0 => ParamPoly::one(N),
            1 => ParamPoly::a(N, 0),
            _ => ParamPoly::s(N),
        };
        base.scale_int(k)
    })
}

fn monomial() -> impl Strategy<Value = OpMonomial> {
    (
        proptest::collection::vec(-2i32..=2, N),
        proptest::collection::vec(0u32..=2, N),
    )
        .prop_map(|(x, d)| OpMonomial::new(x, d))
}

fn operator() -> impl Strategy<Value = Operator> {
    proptest::collection::vec((coefficient(), monomial()), 0..=3).prop_map(|terms| {
        terms.into_iter().fold(Operator::zero(N), |acc, (c, m)| {
            acc + Operator::monomial(c, m)
        })
    })
}

fn assignment() -> impl Strategy<Value = ParamAssignment> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4).prop_map(|(a1, d1, a2, s)| {
        ParamAssignment::from_values(&[rat(a1, d1), rat(a2, 1)], rat(s, 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&b + &c) * &a, &b * &a + &c * &a);
    }

    #[test]
    fn commutator_is_antisymmetric(a in operator(), b in operator()) {
        prop_assert_eq!(a.commutator(&b), -b.commutator(&a));
        prop_assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn jacobi_identity(a in operator(), b in operator(), c in operator()) {
        let j = a.commutator(&b.commutator(&c))
            + b.commutator(&c.commutator(&a))
            + c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn canonical_text_roundtrips(a in operator()) {
        let text = a.to_canonical_string();
        let back = Operator::parse(N, &text).unwrap();
        prop_assert_eq!(back.to_canonical_string(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn derivative_order_is_bounded(a in operator(), b in operator()) {
        let p = &a * &b;
        prop_assert!(p.deriv_order() <= a.deriv_order() + b.deriv_order());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in operator(), b in operator(), v in assignment()) {
        let sub = |o: &Operator| o.substitute_params(&v).unwrap();
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
    }

    #[test]
    fn polynomial_ring_laws(p in coefficient(), q in coefficient(), r in coefficient()) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.add(&ParamPoly::zero(N)), p.clone());
        prop_assert!(p.sub(&p).is_zero());
    }
}

#[test]
fn weyl_reordering_with_negative_exponent() {
    // ∂² x^{−2} = x^{−2}∂² − 4x^{−3}∂ + 6x^{−4}
    let lhs = Operator::d_pow(1, 0, 2) * Operator::x_pow(1, 0, -2);
    let rhs = Operator::x_pow(1, 0, -2) * Operator::d_pow(1, 0, 2)
        - (Operator::x_pow(1, 0, -3) * Operator::d(1, 0)).scale_int(4)
        + Operator::x_pow(1, 0, -4).scale_int(6);
    assert_eq!(lhs, rhs);
}
