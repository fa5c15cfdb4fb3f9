#![allow(dead_code)]

use phkit::{Field, GaussianRational, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

/// A seeded generator for the corpus helpers.
pub fn seeded() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

pub fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
    let part = (-3i64..=3, 1i64..=2).prop_map(|(n, d)| Rational::new(n, d).unwrap());
    (part.clone(), part).prop_map(|(re, im)| GaussianRational::new(re, im))
}
