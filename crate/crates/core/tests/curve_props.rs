mod common;

use common::{nonzero_rational, rational, seeded};
use phkit::corpus::{ph_curves, random_line};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lines_are_ph(mut r in seeded(), n in 1usize..=4) {
        prop_assert!(random_line(&mut r, n).is_ph().is_some());
    }

    #[test]
    fn reparametrization_keeps_ph(mut r in seeded(), s in nonzero_rational(), a in rational(), n in 2usize..=3) {
        for (name, c) in ph_curves(&mut r, n, 1) {
            prop_assert!(c.reparametrize(&s, &a).is_ph().is_some(), "{}", name);
        }
    }

    #[test]
    fn zero_component_keeps_verdict(mut r in seeded(), n in 2usize..=3) {
        for (_, c) in ph_curves(&mut r, n, 1) {
            prop_assert_eq!(c.with_zero_component().is_ph().is_some(), c.is_ph().is_some());
        }
    }
}
