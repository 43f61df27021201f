mod common;

use common::{alpha_digits, coupling, expansion, q_of};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sturmspec::bandscan::{spectrum_bands, spectrum_bands_exact, spectrum_bands_with, Method, Theta, TOUCH_TOL};
use sturmspec::contfrac::ContFrac;
use sturmspec::tracepoly::trace_eval;

fn covered(e: f64, bands: &[(f64, f64)], tol: f64) -> bool {
    bands.iter().any(|&(l, r)| l - tol <= e && e <= r + tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn q_disjoint_bands(c in expansion(6, 3), v in coupling()) {
        let set = spectrum_bands(&c, v).unwrap();
        prop_assert_eq!(set.len(), q_of(&c));
        prop_assert!(set.bands.iter().all(|b| b.left <= b.right));
        prop_assert!(set.is_disjoint(TOUCH_TOL));
    }

    #[test]
    fn edges_are_trace_roots(c in expansion(4, 3), v in coupling()) {
        // Oracle: t_c = 2 at theta = 0 edges and -2 at theta = pi edges.
        let set = spectrum_bands(&c, v).unwrap();
        for b in &set.bands {
            for (e, th) in [(b.left, b.theta_left), (b.right, b.theta_right)] {
                let want = match th { Theta::Zero => 2.0, Theta::Pi => -2.0 };
                let f = |x: f64| trace_eval(&c, x, v).unwrap() - want;
                let h = 1e-9 * (1.0 + e.abs());
                prop_assert!(f(e).abs() < 1e-9 || f(e - h) * f(e + h) <= 0.0, "{} at {}: {}", th, e, f(e));
            }
        }
    }

    #[test]
    fn methods_agree(c in expansion(5, 2), v in coupling()) {
        let a = spectrum_bands_with(&c, v, Method::Dense).unwrap();
        let b = spectrum_bands_with(&c, v, Method::Counting).unwrap();
        for (x, y) in a.intervals().iter().zip(b.intervals()) {
            prop_assert!((x.0 - y.0).abs() < 1e-10 && (x.1 - y.1).abs() < 1e-10, "{:?} {:?}", x, y);
        }
    }

    #[test]
    fn float_matches_exact(c in expansion(4, 2), vn in 1i64..40) {
        let v = vn as f64 / 4.0;
        let exact = spectrum_bands_exact(&c, &BigRational::new(BigInt::from(vn), BigInt::from(4))).unwrap();
        let float = spectrum_bands(&c, v).unwrap();
        prop_assert_eq!(exact.len(), float.len());
        for (x, y) in exact.bands.iter().zip(&float.bands) {
            prop_assert!((x.left - y.left).abs() < 1e-9 && (x.right - y.right).abs() < 1e-9);
            prop_assert_eq!((x.theta_left, x.theta_right), (y.theta_left, y.theta_right));
        }
    }

    #[test]
    fn nesting(d in alpha_digits(7, 3), v in 0.2f64..8.0) {
        let k = d.len();
        prop_assume!(k >= 2);
        let band = |j: usize| spectrum_bands(&ContFrac::approximant(&d, j).unwrap(), v).unwrap().intervals();
        let (below1, below2) = (band(k - 1), band(k - 2));
        let mut lower = below1.clone();
        lower.extend(below2);
        for (l, r) in band(k) {
            // Edges and the midpoint must lie in the union below.
            for e in [l, r, 0.5 * (l + r)] {
                prop_assert!(covered(e, &lower, 1e-8), "{} not covered", e);
            }
        }
    }

    #[test]
    fn negative_coupling_mirror(c in expansion(6, 3), v in 0.1f64..8.0) {
        let pos = spectrum_bands(&c, v).unwrap().intervals();
        let neg = spectrum_bands(&c, -v).unwrap().intervals();
        prop_assert_eq!(pos.len(), neg.len());
        for (p, n) in pos.iter().rev().zip(&neg) {
            prop_assert!((p.0 + n.1).abs() < 1e-10 && (p.1 + n.0).abs() < 1e-10, "{:?} {:?}", p, n);
        }
    }
}
