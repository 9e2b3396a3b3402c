use hlsnake::algebra::parse_monomial;
use hlsnake::hl::*;
use hlsnake::quiver::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn reconstruct_round_trip(
        steps in (1usize..12).prop_flat_map(|k| prop::collection::vec(any::<bool>(), k)),
        start in -8i64..8,
        a in 0usize..12,
        b in 0usize..12,
    ) {
        let h = HeightFunction::from_steps(start, &steps).unwrap();
        let n = h.n();
        let (i, j) = (1 + a.min(b) % n, 1 + a.max(b) % n);
        let (i, j) = (i.min(j), i.max(j));
        let m = dictionary(&h, i, j);
        prop_assert!(check_hl(&m, n).is_ok());
        let r = reconstruct(&m, n).unwrap();
        prop_assert_eq!(dictionary(&r.xi, r.i, r.j), m);
        prop_assert_eq!(r.i, i);
    }
}

#[test]
fn violations_name_the_condition() {
    let cases = [
        ("Y[1,0]Y[1,2]", HlViolation::Increasing(2)),
        ("Y[1,0]Y[2,3]Y[3,6]", HlViolation::Alternating(2)),
        ("Y[1,0]Y[2,6]", HlViolation::Gap(2)),
        ("Y[1,0]^-1", HlViolation::NotDominant),
    ];
    for (s, v) in cases {
        assert_eq!(check_hl(&parse_monomial(s).unwrap(), 4), Err(v), "{s}");
    }
    assert_eq!(check_hl(&parse_monomial("Y[6,0]").unwrap(), 4), Err(HlViolation::NodeOutOfRange(6, 4)));
}

#[test]
fn example_dictionary() {
    let h = HeightFunction::new(vec![-4, -5, -6, -5, -4, -3, -4, -5, -6]).unwrap();
    assert_eq!(dictionary(&h, 1, 7), parse_monomial("Y[1,-3]Y[3,-7]Y[6,-2]Y[8,-6]").unwrap());
    assert_eq!(iota_x(&h, 3), parse_monomial("Y[3,-5]").unwrap());
    assert_eq!(iota_xprime(&h, 1), parse_monomial("Y[1,-5]Y[1,-3]").unwrap());
    let r = reconstruct(&dictionary(&h, 1, 7), 9).unwrap();
    assert_eq!(dictionary(&r.xi, r.i, r.j), dictionary(&h, 1, 7));
}
