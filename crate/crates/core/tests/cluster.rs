use hlsnake::algebra::Poly;
use hlsnake::expansion::*;
use hlsnake::oracle::*;
use hlsnake::quiver::*;
use proptest::prelude::*;

fn height(max_n: usize) -> impl Strategy<Value = HeightFunction> {
    (2..=max_n)
        .prop_flat_map(|n| prop::collection::vec(any::<bool>(), n - 1))
        .prop_map(|steps| HeightFunction::from_steps(0, &steps).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every exchange divides exactly, so each variable stays a Laurent polynomial.
    #[test]
    fn laurent_phenomenon(h in height(6), seq in prop::collection::vec(1u32..7, 0..=20)) {
        let ks: Vec<Vertex> = seq.into_iter().map(|k| Vertex::Mutable(k.min(h.n() as u32))).collect();
        let s = Seed::initial(&h).mutate_sequence(&ks).unwrap();
        for v in s.quiver.vertices() {
            prop_assert!(!s.variable(v).is_zero());
            prop_assert!(s.variable(v).has_nonnegative_coefficients());
        }
        // mutating back undoes the sequence
        let mut back = ks.clone();
        back.reverse();
        let t = s.mutate_sequence(&back).unwrap();
        prop_assert_eq!(t.cluster, Seed::initial(&h).cluster);
    }
}

#[test]
fn denominators_are_positive_roots() {
    for n in 2..=6 {
        for h in HeightFunction::all_normalized(n) {
            for i in 1..=n {
                for j in i..=n {
                    let p = expand(&h, i, j).unwrap().polynomial();
                    let d = denominator_vector(&h, &p);
                    let want: Vec<i32> = (1..=n).map(|l| (i <= l && l <= j) as i32).collect();
                    assert_eq!(d, want, "{h} [{i},{j}]");
                    // the constant-term property belongs to the bipartite seed
                    if (1..=n).all(|k| h.is_source_or_sink(k)) {
                        assert!(has_constant_numerator_term(&p, i, j), "{h} [{i},{j}]");
                    }
                    assert!(p.has_nonnegative_coefficients());
                }
            }
        }
    }
}

#[test]
fn initial_variables_and_frozen_vertices() {
    let h = HeightFunction::new(vec![0, 1, 0]).unwrap();
    assert_eq!(cluster_variable(&h, Root::NegativeSimple(2)).unwrap(), Poly::var(hlsnake::algebra::Generator::X(2)));
    assert!(matches!(Seed::initial(&h).mutate(Vertex::Frozen(1)), Err(OracleError::Frozen(_))));
}

#[test]
fn recursion_rejects_bad_input() {
    let h = HeightFunction::new(vec![0, 1, 2, 3]).unwrap();
    // 2 is not a source or sink
    assert!(!h.is_source_or_sink(2));
    assert!(verify_recursion(&h, 1, 2).is_err());
    assert!(verify_recursion(&h, 1, 4).is_err());
}

#[test]
fn extremal_example_closed_form() {
    let h = HeightFunction::new(vec![-4, -5, -6, -5, -4, -3, -4, -5, -6]).unwrap();
    let x = extremal_matching(&h, 1, 7).unwrap();
    assert_eq!(extremal_closed_form(&h, 1, 7).unwrap(), x.value);
    assert_eq!(x.value.to_string(), "x1^-1*x3^-1*x6^-1*x8*x'1*x'3*x'6");
}

#[test]
fn constant_term_can_fail_off_the_bipartite_seed() {
    let h = HeightFunction::new(vec![0, -1, -2, -3]).unwrap();
    let p = expand(&h, 1, 2).unwrap().polynomial();
    assert!(!has_constant_numerator_term(&p, 1, 2));
}
