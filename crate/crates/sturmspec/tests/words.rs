mod common;

use common::alpha_digits;
use num_rational::Rational64;
use proptest::prelude::*;
use sturmspec::contfrac::{
    concatenation_holds, convergents, denominators, is_rotation, rational_digits, substitution_word, upper_word_of,
    word_of, word_period, ContFrac,
};

/// Oracle: `floor((n+1) p/q) - floor(n p/q)` for `n = 1..=q`.
fn floor_word(p: i64, q: i64) -> Vec<u8> {
    (1..=q).map(|n| ((n + 1) * p / q - n * p / q) as u8).collect()
}

proptest! {
    #[test]
    fn period_has_p_ones(d in alpha_digits(8, 4)) {
        let c = ContFrac::from_alpha(&d).unwrap();
        let w = word_period(&c).unwrap();
        let (p, q) = convergents(&d, d.len() as i64);
        prop_assert_eq!(w.len() as i64, q);
        prop_assert_eq!(w.ones() as i64, p);
        prop_assert_eq!(&w.bits, &floor_word(p, q));
    }

    #[test]
    fn denominators_recursion(d in alpha_digits(12, 5)) {
        let q = denominators(&d, d.len());
        // q[0] is q_{-1}.
        for k in 1..=d.len() {
            prop_assert_eq!(q[k + 1], d[k - 1] * q[k] + q[k - 1]);
        }
        for k in 2..=d.len() {
            prop_assert!(q[k + 1] > q[k]);
        }
    }

    #[test]
    fn concatenation_structure(d in alpha_digits(10, 4)) {
        for n in 2..=d.len() {
            prop_assert!(concatenation_holds(&d, n), "n = {}", n);
        }
    }

    #[test]
    fn upper_and_lower_words_are_rotations(d in alpha_digits(8, 4)) {
        let (p, q) = convergents(&d, d.len() as i64);
        let r = Rational64::new(p, q);
        prop_assert!(is_rotation(&upper_word_of(r).bits, &word_of(r).bits));
    }

    #[test]
    fn substitution_rotates_to_period(d in alpha_digits(8, 4)) {
        for n in 1..=d.len() {
            let (p, q) = convergents(&d, n as i64);
            let s = substitution_word(&d, n as i64);
            prop_assert!(is_rotation(&s, &word_of(Rational64::new(p, q)).bits), "level {}", n);
        }
    }

    #[test]
    fn duality_of_evaluation(d in alpha_digits(6, 4), m in 2i64..6) {
        let c = ContFrac::from_alpha(&d).unwrap();
        prop_assert_eq!(c.extend(m).unwrap().phi(), c.extend(m - 1).unwrap().extend(1).unwrap().phi());
    }

    #[test]
    fn rational_digits_round_trip(q in 1i64..500, p in 0i64..500) {
        let p = p % (q + 1);
        let d = rational_digits(p, q).unwrap();
        let c = ContFrac::from_alpha(&d).unwrap();
        let g = num_integer::gcd(p, q);
        prop_assert_eq!(c.phi().value(), Some(Rational64::new(p / g, q / g)));
    }
}
