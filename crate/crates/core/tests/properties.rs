//! Property-based checks of the algebraic laws on randomly generated sets
//! and descriptors. These complement, never replace, the exhaustive
//! bounded suites in the oracle module.

use proptest::prelude::*;

use pfin::aut::classify_phi;
use pfin::structure::decompose;
use pfin::{AutElem, Family, FinSet, Sign};

fn finset_strategy() -> impl Strategy<Value = FinSet> {
    prop::collection::btree_set(-60i64..=60, 1..8).prop_map(|s| FinSet::new(s).unwrap())
}

fn descriptor_strategy() -> impl Strategy<Value = AutElem> {
    (any::<bool>(), any::<bool>(), -6i64..=6).prop_map(|(minus, g, shift)| {
        AutElem::new(
            if minus { Sign::Minus } else { Sign::Plus },
            if g { Family::G } else { Family::F },
            shift,
        )
    })
}

proptest! {
    #[test]
    fn sumset_is_commutative(x in finset_strategy(), y in finset_strategy()) {
        prop_assert_eq!(x.sumset(&y).unwrap(), y.sumset(&x).unwrap());
    }

    #[test]
    fn sumset_is_associative(
        x in finset_strategy(),
        y in finset_strategy(),
        z in finset_strategy()
    ) {
        let left = x.sumset(&y).unwrap().sumset(&z).unwrap();
        let right = x.sumset(&y.sumset(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn zero_is_neutral(x in finset_strategy()) {
        prop_assert_eq!(x.sumset(&FinSet::zero()).unwrap(), x);
    }

    #[test]
    fn sumset_kernels_agree(x in finset_strategy(), y in finset_strategy()) {
        prop_assert_eq!(
            x.sumset_with_threshold(&y, 0).unwrap(),
            x.sumset_with_threshold(&y, i128::MAX).unwrap()
        );
    }

    #[test]
    fn extremes_are_additive(x in finset_strategy(), y in finset_strategy()) {
        let s = x.sumset(&y).unwrap();
        prop_assert_eq!(s.min(), x.min() + y.min());
        prop_assert_eq!(s.max(), x.max() + y.max());
        prop_assert!(s.len() <= x.len() * y.len());
    }

    #[test]
    fn reversal_and_reduction_laws(x in finset_strategy(), k in -40i64..=40) {
        prop_assert_eq!(x.rev().unwrap(), x.translate(k).unwrap().rev().unwrap());
        prop_assert_eq!(x.rev().unwrap().rev().unwrap(), x.reduce().unwrap());
        prop_assert!(x.reduce().unwrap().contains(0));
        prop_assert_eq!(
            x.reduce().unwrap(),
            x.translate(k).unwrap().reduce().unwrap()
        );
    }

    #[test]
    fn set_literal_round_trips(x in finset_strategy()) {
        let reparsed: FinSet = x.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, x);
    }

    #[test]
    fn descriptor_round_trips(e in descriptor_strategy()) {
        let reparsed: AutElem = e.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, e);
        let z = e.to_z2dih();
        prop_assert_eq!(z.to_aut(), e);
        let rendered: pfin::Z2DihElem = z.to_string().parse().unwrap();
        prop_assert_eq!(rendered, z);
    }

    #[test]
    fn descriptors_are_endomorphisms(
        e in descriptor_strategy(),
        x in finset_strategy(),
        y in finset_strategy()
    ) {
        let lhs = e.apply(&x.sumset(&y).unwrap()).unwrap();
        let rhs = e.apply(&x).unwrap().sumset(&e.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_agrees_with_pointwise(
        e1 in descriptor_strategy(),
        e2 in descriptor_strategy(),
        x in finset_strategy()
    ) {
        let closed = e1.compose(&e2).apply(&x).unwrap();
        let direct = e1.apply(&e2.apply(&x).unwrap()).unwrap();
        prop_assert_eq!(closed, direct);
    }

    #[test]
    fn inverse_round_trips_pointwise(e in descriptor_strategy(), x in finset_strategy()) {
        prop_assert_eq!(e.apply(&e.inverse().apply(&x).unwrap()).unwrap(), x);
        prop_assert_eq!(e.compose(&e.inverse()), AutElem::identity());
    }

    #[test]
    fn z2dih_map_is_multiplicative(e1 in descriptor_strategy(), e2 in descriptor_strategy()) {
        prop_assert_eq!(
            e1.compose(&e2).to_z2dih(),
            e1.to_z2dih() * e2.to_z2dih()
        );
    }

    #[test]
    fn classify_inverts_coefficients(e in descriptor_strategy()) {
        let (sign, phi) = e.to_phi();
        prop_assert_eq!(classify_phi(sign, phi.a, phi.b), Ok(e));
    }

    #[test]
    fn decompose_round_trips(e in descriptor_strategy(), x in finset_strategy()) {
        let mut bb = |probe: &FinSet| e.apply(probe).ok();
        let dec = decompose(&mut bb).unwrap();
        prop_assert_eq!(dec.eval(&x).unwrap(), e.apply(&x).unwrap());
    }
}
