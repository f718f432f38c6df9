mod common;

use proptest::prelude::*;

use wavset::classify::classify;
use wavset::sets::RatPi;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn set_algebra_identities(a in arb_set(), b in arb_set(), num in -40i64..40, den in 1i64..9, p in -4i32..5) {
        set_algebra(&a, &b, &RatPi::new(num, den), p)?;
    }

    #[test]
    fn congruence_reassembles_base((w, cells) in arb_congruent()) {
        congruence_round_trip(&w, &cells)?;
    }

    #[test]
    fn representative_of_superset((w, _) in arb_congruent(), extra in arb_set()) {
        representative_tiles(&w, &extra)?;
    }

    #[test]
    fn in_l_is_nested(e in arb_set()) {
        nesting(&e)?;
    }

    #[test]
    fn classify_agrees_with_brute_force(e in arb_set()) {
        prop_assert_eq!(classify(&e), brute_class(&e));
    }

    #[test]
    fn dilation_covariance_both_branches(e in arb_set_off_origin()) {
        dilation_covariance(&e)?;
    }

    #[test]
    fn dilation_raises_class_without_odd_pi_overlap(e in arb_even_cell_set()) {
        dilation_shift_up(&e)?;
    }
}
