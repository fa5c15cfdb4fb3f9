mod common;

use common::{gaussian, rational};
use num_integer::Integer;
use num_traits::Signed;
use phkit::scalar::{gauss_inv, gauss_mul, rat_is_square};
use phkit::{Field, Rational};
use proptest::prelude::*;

fn canonical(x: &Rational) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()) == 1.into()
}

proptest! {
    #[test]
    fn arithmetic_stays_canonical(x in rational(), y in rational()) {
        prop_assert!(canonical(&(x.clone() + &y)));
        prop_assert!(canonical(&(x.clone() - &y)));
        prop_assert!(canonical(&(x.clone() * &y)));
        if !y.is_zero() {
            prop_assert!(canonical(&(x.clone() / &y)));
        }
    }

    #[test]
    fn square_root_of_square(x in rational()) {
        prop_assert_eq!(rat_is_square(&(x.clone() * &x)), Some(x.abs()));
    }

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(gauss_mul(&gauss_mul(&a, &b), &c), gauss_mul(&a, &gauss_mul(&b, &c)));
        prop_assert_eq!(gauss_mul(&a, &(b.clone() + &c)), gauss_mul(&a, &b) + &gauss_mul(&a, &c));
        prop_assert_eq!(gauss_mul(&a, &b), gauss_mul(&b, &a));
        if !a.is_zero() {
            prop_assert!(gauss_mul(&a, &gauss_inv(&a).unwrap()).is_one());
        } else {
            prop_assert!(gauss_inv(&a).is_err());
        }
    }
}
