use filtdef::{Ideal, Monomial, Polynomial, Ring, RingRef, Q};
use proptest::prelude::*;

fn ring() -> RingRef {
    Ring::new(&["x", "y", "z"]).unwrap()
}

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, 3), -5i64..=5), 0..=max_terms)
        .prop_map(|ts| Polynomial::from_terms(&ring(), ts.into_iter().map(|(e, c)| (Monomial(e), Q::from_int(c)))))
}

fn at_origin(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_deg, max_terms).prop_map(|p| {
        let c = p.coeff(&Monomial(vec![0, 0, 0]));
        &p - &Polynomial::constant(p.ring(), c)
    })
}

fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    a.contains_ideal(b) && b.contains_ideal(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(3, 5), b in poly(3, 5), c in poly(3, 5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &ring().one(), a.clone());
    }

    #[test]
    fn min_form_is_multiplicative(a in poly(3, 4), b in poly(3, 4)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).min_form(), &a.min_form() * &b.min_form());
        prop_assert_eq!((&a * &b).order(), Some(a.order().unwrap() + b.order().unwrap()));
    }

    #[test]
    fn parse_display_round_trip(a in poly(4, 6)) {
        let back = Polynomial::parse(&ring(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_ignores_generator_order(
        g in prop::collection::vec(at_origin(2, 3), 1..=3),
        coeffs in prop::collection::vec(poly(1, 2), 3),
        other in poly(2, 3),
    ) {
        let r = ring();
        let member = g.iter().zip(&coeffs).fold(r.zero(), |acc, (gi, ci)| &acc + &(gi * ci));
        let fwd = Ideal::new(&r, g.clone()).unwrap();
        let mut rev = g.clone();
        rev.reverse();
        let bwd = Ideal::new(&r, rev).unwrap();
        prop_assert!(fwd.contains(&member));
        prop_assert!(bwd.contains(&member));
        prop_assert_eq!(fwd.contains(&other), bwd.contains(&other));
        prop_assert!(same_ideal(&fwd, &bwd));
    }

    #[test]
    fn ideal_min_of_principal_is_min_form(f in at_origin(3, 4)) {
        prop_assume!(!f.is_zero());
        let r = ring();
        let imin = Ideal::new(&r, vec![f.clone()]).unwrap().ideal_min().unwrap();
        prop_assert!(same_ideal(&imin, &Ideal::new(&r, vec![f.min_form()]).unwrap()));
    }
}
