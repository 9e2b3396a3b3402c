use hlsnake::algebra::*;
use proptest::prelude::*;

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (1u32..4).prop_map(Generator::X),
        (1u32..3).prop_map(Generator::XPrime),
        (1u32..3, -2i32..3).prop_map(|(i, r)| Generator::Y(i, r)),
    ]
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((generator(), -2i32..3), 0..4).prop_map(Monomial::from_pairs)
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial(), -3i64..4), 0..5)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(m, c)| (m, c.into()))))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn display_round_trip(a in poly()) {
        let s = a.to_string();
        let back: Poly = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn monomial_group_laws(a in monomial(), b in monomial()) {
        prop_assert_eq!(a.mul(&b).div(&b), a.clone());
        prop_assert_eq!(a.mul(&a.inv()), Monomial::one());
        prop_assert_eq!(a.positive_part().mul(&a.negative_part()), a.clone());
        prop_assert_eq!(parse_monomial(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn tropical_semifield(a in monomial(), b in monomial(), c in monomial()) {
        let (ta, tb, tc) = (
            TropicalElement::from_monomial(&a),
            TropicalElement::from_monomial(&b),
            TropicalElement::from_monomial(&c),
        );
        prop_assert_eq!(ta.oplus(&tb), tb.oplus(&ta));
        prop_assert_eq!(ta.oplus(&tb).oplus(&tc), ta.oplus(&tb.oplus(&tc)));
        prop_assert_eq!(ta.oplus(&ta), ta.clone());
        // multiplication distributes over the minimum
        prop_assert_eq!(ta.otimes(&tb.oplus(&tc)), ta.otimes(&tb).oplus(&ta.otimes(&tc)));
        prop_assert_eq!(ta.otimes(&ta.inv()), TropicalElement::one());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(), b in poly()) {
        let s = |g: Generator| match g {
            Generator::X(1) => Some(Poly::monomial(parse_monomial("x2*x'1").unwrap())),
            Generator::X(2) => Some(Poly::var(Generator::X(3))),
            _ => None,
        };
        let lhs = (&a * &b).substitute(s).unwrap();
        prop_assert_eq!(lhs, &a.substitute(s).unwrap() * &b.substitute(s).unwrap());
    }
}

#[test]
fn division_failures() {
    let a: Poly = "x1 + 1".parse().unwrap();
    let b: Poly = "x1 - 1".parse().unwrap();
    assert_eq!(a.div_exact(&b), Err(AlgebraError::NotDivisible));
    assert_eq!(a.div_exact(&Poly::zero()), Err(AlgebraError::DivisionByZero));
    assert_eq!(tropical_sum(&[]), Err(AlgebraError::EmptyTropicalSum));
}

#[test]
fn parse_errors_carry_position() {
    match "x1 + * x2".parse::<Poly>() {
        Err(AlgebraError::Parse { pos, .. }) => assert!(pos >= 4),
        other => panic!("{other:?}"),
    }
    assert!(parse_monomial("Y[1,-3").is_err());
    assert_eq!(parse_monomial("Y[1,-3]Y[3,-7]").unwrap().to_string(), "Y[1,-3]*Y[3,-7]");
}

#[test]
fn display_forms() {
    let p: Poly = "1 - 3*x1^2*x'3^-1".parse().unwrap();
    assert_eq!(p.to_string(), "-3*x1^2*x'3^-1 + 1");
    assert_eq!(Monomial::one().to_string(), "1");
}
