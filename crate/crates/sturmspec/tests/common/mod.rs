#![allow(dead_code)]

use proptest::prelude::*;
use sturmspec::contfrac::ContFrac;

/// Digits `c_1..c_k` with `1 <= k <= max_len` and entries in `1..=max_digit`.
pub fn alpha_digits(max_len: usize, max_digit: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1..=max_digit, 1..=max_len)
}

/// A regular expansion `[0, 0, c_1, ..., c_k]`.
pub fn expansion(max_len: usize, max_digit: i64) -> impl Strategy<Value = ContFrac> {
    alpha_digits(max_len, max_digit).prop_map(|d| ContFrac::from_alpha(&d).unwrap())
}

/// Nonzero couplings of either sign.
pub fn coupling() -> impl Strategy<Value = f64> {
    prop_oneof![0.1f64..8.0, -8.0f64..-0.1]
}

pub fn positive_coupling() -> impl Strategy<Value = f64> {
    0.1f64..8.0
}

pub fn q_of(c: &ContFrac) -> usize {
    c.q().unwrap() as usize
}
