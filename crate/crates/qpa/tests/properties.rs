//! Structural invariants under randomized states.

use proptest::prelude::*;

use qpa::{
    f_value, identity_residuals, qpa_step, success_probability, BellDiagonalState, BellIndex,
    RegionClass, State64,
};

/// Uniform-ish state strategy: four positive raws normalized by their sum.
fn valid_state() -> impl Strategy<Value = State64> {
    [1e-9..1.0f64, 1e-9..1.0f64, 1e-9..1.0f64, 1e-9..1.0f64].prop_map(|raw| {
        let sum: f64 = raw.iter().sum();
        BellDiagonalState::new(raw[0] / sum, raw[1] / sum, raw[2] / sum, raw[3] / sum)
            .expect("normalized draw is a valid state")
    })
}

proptest! {
    #[test]
    fn step_preserves_the_simplex(s in valid_state()) {
        let out = qpa_step(&s).output;
        let comps = out.components();
        prop_assert!(comps.iter().all(|x| *x >= 0.0));
        let sum: f64 = comps.iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn success_probability_is_bounded(s in valid_state()) {
        let p = success_probability(&s);
        prop_assert!((0.5 - 1e-15..=1.0 + 1e-15).contains(&p));
    }

    #[test]
    fn swap_is_involutive_and_commutes_with_the_step(s in valid_state()) {
        prop_assert_eq!(s.swap_symmetry().swap_symmetry(), s);
        let direct = qpa_step(&s);
        let swapped = qpa_step(&s.swap_symmetry());
        prop_assert_eq!(swapped.output, direct.output.swap_symmetry());
        prop_assert_eq!(swapped.p, direct.p);
    }

    #[test]
    fn at_most_one_component_exceeds_half(s in valid_state()) {
        let over = s.components().iter().filter(|x| **x > 0.5).count();
        prop_assert!(over <= 1);
    }

    #[test]
    fn fidelities_sum_to_one(s in valid_state()) {
        let total: f64 = BellIndex::ALL.iter().map(|ix| s.fidelity(*ix)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn classification_commutes_with_swap(s in valid_state()) {
        use RegionClass::*;
        let expected = match s.region() {
            InRegionR => CIsLarge,
            CIsLarge => InRegionR,
            BIsLarge => DIsLarge,
            DIsLarge => BIsLarge,
            other => other,
        };
        prop_assert_eq!(s.swap_symmetry().region(), expected);
    }

    #[test]
    fn identities_hold_to_float_noise(s in valid_state()) {
        let (ra, rb) = identity_residuals(&s);
        prop_assert!(ra.abs() <= 1e-13);
        prop_assert!(rb.abs() <= 1e-13);
    }

    #[test]
    fn f_stays_within_its_range(s in valid_state()) {
        let f = f_value(&s);
        prop_assert!((-1.0..=1.0).contains(&f));
    }

    #[test]
    fn literal_round_trip_reproduces_the_state(s in valid_state()) {
        // parsing renormalizes by the re-read sum, which can move each
        // component by an ulp when the stored sum is 1 only up to rounding
        let back: State64 = s.to_literal().parse().expect("emitted literal parses");
        prop_assert!(back.max_abs_diff(&s) <= 1e-15);
    }
}
