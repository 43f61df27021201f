mod common;

use common::{expansion, positive_coupling};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use sturmspec::contfrac::{rational_digits, ContFrac};
use sturmspec::poly::RatPoly;
use sturmspec::tracepoly::{chebyshev_poly, fricke_vogt_residual, trace_eval, trace_poly};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Oracle: `S_{-1} = 0`, `S_0 = 1`, `S_n = x S_{n-1} - S_{n-2}` at a point.
fn s(n: i64, x: &BigRational) -> BigRational {
    let (mut a, mut b) = (rat(0, 1), rat(1, 1));
    if n == -1 {
        return a;
    }
    for _ in 0..n {
        let c = x * &b - &a;
        a = b;
        b = c;
    }
    b
}

/// `S_{n-2}` for `n = 1` is `S_{-1}`; one more step back gives `-1`.
fn s_ext(n: i64, x: &BigRational) -> BigRational {
    if n == -2 {
        rat(-1, 1)
    } else {
        s(n, x)
    }
}

#[test]
fn chebyshev_invariant() {
    let x = RatPoly::x();
    for n in 1..=30 {
        let lhs = chebyshev_poly(n, &x)
            .mul(&chebyshev_poly(n - 2, &x))
            .sub(&chebyshev_poly(n - 1, &x).mul(&chebyshev_poly(n - 1, &x)));
        assert_eq!(lhs, RatPoly::from_i64(-1), "n = {n}");
    }
}

proptest! {
    #[test]
    fn basic_trace_families(m in 1i64..=12, vn in -20i64..20, vd in 1i64..7, en in -30i64..30, ed in 1i64..7) {
        let (v, e) = (rat(vn, vd), rat(en, ed));
        let t = trace_poly(&ContFrac::new(&[0, 0, m]).unwrap(), &v);
        prop_assert_eq!(t.eval(&e), s(m, &e) - &v * s(m - 1, &e) - s_ext(m - 2, &e));
        let t = trace_poly(&ContFrac::new(&[0, 0, 1, m]).unwrap(), &v);
        let ev = &e - &v;
        prop_assert_eq!(t.eval(&e), &e * s(m, &ev) - rat(2, 1) * s(m - 1, &ev));
    }

    #[test]
    fn trace_depends_only_on_value(c in expansion(4, 2), last in -1i64..=0, vn in 1i64..30) {
        // [c, m, 0] and [c, m, -1] evaluate to rationals with a canonical expansion.
        let Ok(alt) = c.extend(last) else { return Ok(()) };
        let Some(r) = alt.phi().value() else { return Ok(()) };
        let canon = ContFrac::from_alpha(&rational_digits(*r.numer(), *r.denom()).unwrap()).unwrap();
        prop_assert_eq!(canon.phi(), alt.phi());
        let v = rat(vn, 7);
        prop_assert_eq!(&trace_poly(&alt, &v).poly, &trace_poly(&canon, &v).poly);
    }

    #[test]
    fn float_trace_matches_exact(c in expansion(4, 3), vn in 1i64..64, e in -10.0f64..10.0) {
        let v = vn as f64 / 8.0;
        let exact = trace_poly(&c, &rat(vn, 8));
        let want = exact.eval(&BigRational::from_float(e).unwrap()).to_f64().unwrap();
        let got = trace_eval(&c, e, v).unwrap();
        prop_assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "{} vs {}", got, want);
    }

    #[test]
    fn fricke_vogt_small(c in expansion(4, 3), n in 1i64..4, v in positive_coupling(), e in -4.0f64..4.0) {
        let r = fricke_vogt_residual(&c, n, e, v).unwrap();
        // Relative to the largest of the three traces involved.
        let t = [c.clone(), c.extend(n).unwrap(), c.extend(n + 1).unwrap()]
            .iter()
            .map(|x| trace_eval(x, e, v).unwrap().abs())
            .fold(1.0f64, f64::max);
        prop_assume!(t.powi(3).is_finite());
        prop_assert!(r.abs() <= 1e-12 * t.powi(3), "{}", r);
    }
}
