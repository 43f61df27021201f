mod common;

use common::{alpha_digits, expansion};
use proptest::prelude::*;
use sturmspec::bandscan::spectrum_bands;
use sturmspec::bandtype::{band_types, classify_report, BandType};
use sturmspec::contfrac::{denominators, ContFrac};
use sturmspec::spectree::{check_tree, SpectralTree};

const GRID: [f64; 6] = [0.5, 1.0, 2.0, 3.0, 4.5, 8.0];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dichotomy_across_grid(c in expansion(4, 3)) {
        for r in classify_report(&c, &GRID).unwrap() {
            prop_assert!(r.labels.iter().all(|l| l.is_some()), "band {} untyped", r.index);
            prop_assert!(r.is_consistent(), "band {} changes type", r.index);
        }
    }

    #[test]
    fn count_split(d in alpha_digits(6, 3), v in 0.2f64..8.0) {
        let q = denominators(&d, d.len());
        for k in 1..=d.len() {
            let types = band_types(&ContFrac::approximant(&d, k).unwrap(), v).unwrap();
            let a = types.iter().filter(|&&t| t == BandType::A).count() as i64;
            // q[k + 1] is q_k.
            prop_assert_eq!((a, types.len() as i64 - a), (q[k + 1] - q[k], q[k]), "level {}", k);
        }
    }

    #[test]
    fn duality_swaps_types(c in expansion(4, 3), m in 2i64..5, v in 0.2f64..8.0) {
        let a = c.extend(m).unwrap();
        let b = c.extend(m - 1).unwrap().extend(1).unwrap();
        let (sa, sb) = (spectrum_bands(&a, v).unwrap(), spectrum_bands(&b, v).unwrap());
        for (x, y) in sa.intervals().iter().zip(sb.intervals()) {
            prop_assert!((x.0 - y.0).abs() < 1e-10 && (x.1 - y.1).abs() < 1e-10);
        }
        let ta: Vec<BandType> = band_types(&a, v).unwrap().iter().map(|t| t.swap()).collect();
        prop_assert_eq!(ta, band_types(&b, v).unwrap());
    }

    #[test]
    fn tree_matches_typed_bands(d in alpha_digits(6, 2), v in 0.5f64..6.0) {
        let depth = d.len();
        let tree = SpectralTree::build(&d, depth).unwrap();
        let types: Vec<Vec<BandType>> = (0..=depth)
            .map(|k| band_types(&ContFrac::approximant(&d, k).unwrap(), v).unwrap())
            .collect();
        for (k, t) in types.iter().enumerate() {
            let a = t.iter().filter(|&&x| x == BandType::A).count();
            prop_assert_eq!(tree.level_counts(k as i64), (a, t.len() - a), "level {}", k);
        }
        let r = check_tree(&tree, v, &types).unwrap();
        prop_assert_eq!((r.edge_failures, r.label_failures), (0, 0), "{:?}", r);
    }
}
