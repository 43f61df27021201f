//! Transfer matrices and their traces: exact trace polynomials in `E`,
//! float transfer products, the scalar trace map, Chebyshev polynomials and
//! the trace identities (Fricke-Vogt invariant, recursions, edge estimates).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use serde::Serialize;

use crate::contfrac::{ContFrac, Phi};
use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Exact trace `t_c(E, V)` as a polynomial in `E` for a fixed rational `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePoly {
    pub poly: RatPoly,
    pub fixed_v: BigRational,
}

impl TracePoly {
    pub fn degree(&self) -> i64 {
        self.poly.degree()
    }

    pub fn eval_f64(&self, e: f64) -> f64 {
        self.poly.eval_f64(e)
    }

    pub fn eval(&self, e: &BigRational) -> BigRational {
        self.poly.eval(e)
    }
}

/// Exact conversion of a finite float to a rational.
pub fn rational_from_f64(v: f64) -> BigRational {
    BigRational::from_f64(v).expect("finite coupling")
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

// ---------------------------------------------------------------------------
// Chebyshev polynomials

/// Integer coefficients of `S_n` for `n >= -1` (`S_{-1} = 0`, `S_0 = 1`).
pub fn chebyshev_s(n: i64) -> Vec<BigInt> {
    assert!(n >= -1);
    chebyshev_poly(n, &RatPoly::x()).coeffs().iter().map(|c| c.to_integer()).collect()
}

/// `S_n(t)` composed with a polynomial `t`, for `n >= -3`
/// (`S_{-2} = -1`, `S_{-3} = -t`).
pub fn chebyshev_poly(n: i64, t: &RatPoly) -> RatPoly {
    assert!(n >= -3);
    let mut a = RatPoly::from_i64(-1); // S_{-2}
    let mut b = RatPoly::zero(); // S_{-1}
    if n == -3 {
        return t.neg();
    }
    if n == -2 {
        return a;
    }
    for _ in -1..n {
        let c = t.mul(&b).sub(&a);
        a = b;
        b = c;
    }
    b
}

/// `S_n(x)` in floating point for `n >= -3`.
pub fn chebyshev_s_f64(n: i64, x: f64) -> f64 {
    assert!(n >= -3);
    match n {
        -3 => -x,
        -2 => -1.0,
        _ => {
            let (mut a, mut b) = (-1.0, 0.0);
            for _ in -1..n {
                let c = x * b - a;
                a = b;
                b = c;
            }
            b
        }
    }
}

// ---------------------------------------------------------------------------
// Float transfer products

pub type Mat2 = [f64; 4];

const LIMIT: f64 = 1e300;

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

fn checked(m: Mat2) -> Result<Mat2> {
    if m.iter().all(|x| x.is_finite() && x.abs() < LIMIT) {
        Ok(m)
    } else {
        Err(Error::Overflow)
    }
}

/// `m^p` for `p >= -1` (matrices of determinant one).
fn power(m: &Mat2, p: i64) -> Result<Mat2> {
    if p == -1 {
        return Ok([m[3], -m[1], -m[2], m[0]]);
    }
    let mut out = [1.0, 0.0, 0.0, 1.0];
    let mut base = *m;
    let mut e = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            out = checked(mul(&out, &base))?;
        }
        e >>= 1;
        if e > 0 {
            base = checked(mul(&base, &base))?;
        }
    }
    Ok(out)
}

/// `M_{[0]}` and `M_{[0,0]}`.
pub fn seed_matrices(e: f64, v: f64) -> (Mat2, Mat2) {
    ([1.0, -v, 0.0, 1.0], [e, -1.0, 1.0, 0.0])
}

/// Transfer matrix `M_c(E, V)` built by `M_j = M_{j-2} M_{j-1}^{c_j}`.
pub fn transfer_matrix(c: &ContFrac, e: f64, v: f64) -> Result<Mat2> {
    let (mut a, mut b) = seed_matrices(e, v);
    if c.level() == -1 {
        return Ok(a);
    }
    for &d in c.tail() {
        let next = checked(mul(&a, &power(&b, d)?))?;
        a = b;
        b = next;
    }
    Ok(b)
}

/// `t_c(E, V)` via the float transfer product.
pub fn trace_eval(c: &ContFrac, e: f64, v: f64) -> Result<f64> {
    let m = transfer_matrix(c, e, v)?;
    Ok(m[0] + m[3])
}

/// Traces `t_{-1}, t_0, ..., t_K` of the approximants of `alpha` via the
/// scalar trace map. Values may overflow to infinity far outside the spectrum.
pub fn trace_map_sequence(alpha_digits: &[i64], e: f64, v: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(alpha_digits.len() + 2);
    let (mut y, mut x, mut z) = (2.0, e, e - v);
    out.push(y);
    out.push(x);
    for &c in alpha_digits {
        let (mut a0, mut a1) = (y, z);
        for _ in 0..c {
            let a2 = x * a1 - a0;
            a0 = a1;
            a1 = a2;
        }
        // a0 = t_{[c, c_{k+1}]}, a1 = t_{[c, c_{k+1} + 1]}
        y = x;
        x = a0;
        z = a1;
        out.push(x);
    }
    out
}

// ---------------------------------------------------------------------------
// Exact trace polynomials

#[derive(Clone)]
struct PolyMat([RatPoly; 4]);

impl PolyMat {
    fn mul(&self, o: &PolyMat) -> PolyMat {
        let a = &self.0;
        let b = &o.0;
        PolyMat([
            a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
            a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
            a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
            a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
        ])
    }

    fn trace(&self) -> RatPoly {
        self.0[0].add(&self.0[3])
    }

    /// `M^m = S_{m-1}(t) M - S_{m-2}(t) I` for `m >= -1`.
    fn power(&self, m: i64) -> PolyMat {
        let t = self.trace();
        let s1 = chebyshev_poly(m - 1, &t);
        let s2 = chebyshev_poly(m - 2, &t);
        let a = &self.0;
        PolyMat([s1.mul(&a[0]).sub(&s2), s1.mul(&a[1]), s1.mul(&a[2]), s1.mul(&a[3]).sub(&s2)])
    }
}

fn trace_poly_uncached(c: &ContFrac, v: &BigRational) -> RatPoly {
    let one = RatPoly::from_i64(1);
    let mut a = PolyMat([one.clone(), RatPoly::constant(-v.clone()), RatPoly::zero(), one.clone()]);
    if c.level() == -1 {
        return a.trace();
    }
    let mut b = PolyMat([RatPoly::x(), RatPoly::from_i64(-1), one, RatPoly::zero()]);
    for &d in c.tail() {
        let next = a.mul(&b.power(d));
        a = b;
        b = next;
    }
    b.trace()
}

type CacheKey = (Vec<i64>, BigRational);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<TracePoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<TracePoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact `t_c(., V)`; results are memoized per `(c, V)`.
pub fn trace_poly(c: &ContFrac, v: &BigRational) -> Arc<TracePoly> {
    let key = (c.digits().to_vec(), v.clone());
    if let Some(hit) = cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let tp = Arc::new(TracePoly { poly: trace_poly_uncached(c, v), fixed_v: v.clone() });
    cache().write().unwrap().entry(key).or_insert(tp).clone()
}

// ---------------------------------------------------------------------------
// Identities

/// `t_{[c,n+1]}^2 + t_{[c,n]}^2 + t_c^2 - t_{[c,n+1]} t_{[c,n]} t_c - (V^2 + 4)`.
pub fn fricke_vogt_residual(c: &ContFrac, n: i64, e: f64, v: f64) -> Result<f64> {
    let x = trace_eval(&c.extend(n + 1)?, e, v)?;
    let y = trace_eval(&c.extend(n)?, e, v)?;
    let z = trace_eval(c, e, v)?;
    Ok(x * x + y * y + z * z - x * y * z - (v * v + 4.0))
}

/// The Fricke-Vogt residual as an exact polynomial in `E`.
pub fn fricke_vogt_poly(c: &ContFrac, n: i64, v: &BigRational) -> Result<RatPoly> {
    let x = trace_poly(&c.extend(n + 1)?, v).poly.clone();
    let y = trace_poly(&c.extend(n)?, v).poly.clone();
    let z = trace_poly(c, v).poly.clone();
    let vv = RatPoly::constant(v * v + BigRational::from_integer(4.into()));
    Ok(x.mul(&x).add(&y.mul(&y)).add(&z.mul(&z)).sub(&x.mul(&y).mul(&z)).sub(&vv))
}

/// Checks, as exact polynomial identities with `c' = [c, m]`:
/// `t_{[c',0]} = t_c`, `t_{[c',1]} = t_{[c,m+1]}`,
/// `t_{[c',n+1]} = t_{c'} t_{[c',n]} - t_{[c',n-1]}` and
/// `t_{[c',n]} = S_{n-1}(t_{c'}) t_{[c',1]} - S_{n-2}(t_{c'}) t_{[c',0]}` for `n <= n_max`.
pub fn trace_recursion_check(c: &ContFrac, m: i64, n_max: i64, v: &BigRational) -> Result<bool> {
    let t = |x: &ContFrac| trace_poly(x, v).poly.clone();
    let cm = c.extend(m)?;
    let tc = t(c);
    let tcm = t(&cm);
    let t0 = t(&cm.extend(0)?);
    let t1 = t(&cm.extend(1)?);
    let mut ok = t0 == tc && t1 == t(&c.extend(m + 1)?);
    for n in 1..=n_max {
        let prev = t(&cm.extend(n - 1)?);
        let cur = t(&cm.extend(n)?);
        let next = t(&cm.extend(n + 1)?);
        ok &= next == tcm.mul(&cur).sub(&prev);
        let cheb = chebyshev_poly(n - 1, &tcm).mul(&t1).sub(&chebyshev_poly(n - 2, &tcm).mul(&t0));
        ok &= cheb == cur;
    }
    Ok(ok)
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeEstimateReport {
    pub t_c: f64,
    pub t_cm: f64,
    pub t_cmn: f64,
    /// `|t_{[c,m]}| >= 2  =>  |t_{[c,m,n]}| >= 2`
    pub a: bool,
    /// `|t_{[c,m]}| > 2  =>  |t_{[c,m,n]}| > 2`
    pub b: bool,
    /// `phi(c) in (0,1)` and `|t_{[c,m]}| >= 2  =>  |t_{[c,m,n]}| > 2`
    pub c: bool,
}

impl EdgeEstimateReport {
    pub fn holds(&self) -> bool {
        self.a && self.b && self.c
    }
}

/// Evaluates the three trace implications at a band edge `E` of `sigma_c(V)`.
pub fn trace_edge_estimates(c: &ContFrac, m: i64, n: i64, e: f64, v: f64) -> Result<EdgeEstimateReport> {
    const TOL: f64 = 1e-9;
    let tc = trace_eval(c, e, v)?;
    let scale = 1.0 + tc.abs();
    if (tc.abs() - 2.0).abs() > 1e-6 * scale {
        return Err(Error::NotAnEdge(e));
    }
    let cm = c.extend(m)?;
    let tcm = trace_eval(&cm, e, v)?;
    let tcmn = trace_eval(&cm.extend(n)?, e, v)?;
    let (x, y) = (tcm.abs(), tcmn.abs());
    let inner = matches!(c.phi(), Phi::Value(r) if !r.is_zero() && r < num_rational::Ratio::from_integer(1));
    Ok(EdgeEstimateReport {
        t_c: tc,
        t_cm: tcm,
        t_cmn: tcmn,
        a: x < 2.0 - TOL || y >= 2.0 - TOL,
        b: x <= 2.0 + TOL || y > 2.0,
        c: !(inner && x >= 2.0 - TOL) || y > 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(d: &[i64]) -> ContFrac {
        ContFrac::new(d).unwrap()
    }

    fn one() -> BigRational {
        rational(1, 1)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(trace_poly(&cf(&[0, 0, 2]), &one()).poly, RatPoly::from_ints(&[-2, -1, 1]));
        assert_eq!(trace_poly(&cf(&[0, 0, 1, 2]), &one()).poly, RatPoly::from_ints(&[2, -2, -2, 1]));
        assert_eq!(trace_poly(&cf(&[0, 0, 1, -1]), &rational(7, 3)).poly, RatPoly::from_i64(2));
        assert_eq!(trace_poly(&cf(&[0]), &one()).poly, RatPoly::from_i64(2));
        assert_eq!(trace_poly(&cf(&[0, 0]), &one()).poly, RatPoly::x());
    }

    #[test]
    fn float_traces() {
        assert!((trace_eval(&cf(&[0, 0, 2]), 1.0, 1.0).unwrap() + 2.0).abs() < 1e-14);
        assert!((trace_eval(&cf(&[0, 0, 3]), 2.0, 1.0).unwrap() + 1.0).abs() < 1e-14);
        assert_eq!(trace_eval(&cf(&[0]), 0.7, 3.0).unwrap(), 2.0);
        assert_eq!(trace_eval(&cf(&[0, 0, 1000000000]), 50.0, 1.0), Err(Error::Overflow));
    }

    #[test]
    fn trace_map_matches_products() {
        let digits = [1, 2, 1, 3, 1, 1];
        let seq = trace_map_sequence(&digits, 0.37, 1.3);
        for k in 0..=digits.len() {
            let c = ContFrac::approximant(&digits, k).unwrap();
            let t = trace_eval(&c, 0.37, 1.3).unwrap();
            assert!((seq[k + 1] - t).abs() < 1e-9 * (1.0 + t.abs()), "level {k}");
        }
    }

    #[test]
    fn chebyshev() {
        for n in 1..=30 {
            let s = |k| RatPoly::new(chebyshev_s(k).into_iter().map(BigRational::from_integer).collect());
            let lhs = s(n).mul(&s(n - 2)).sub(&s(n - 1).mul(&s(n - 1)));
            assert_eq!(lhs, RatPoly::from_i64(-1));
        }
        for n in 0..10 {
            assert_eq!(chebyshev_s_f64(n, 2.0), (n + 1) as f64);
            assert_eq!(chebyshev_s_f64(n, -2.0), (-1f64).powi(n as i32) * (n + 1) as f64);
        }
    }

    #[test]
    fn fricke_vogt() {
        let r = fricke_vogt_residual(&cf(&[0, 0, 1]), 2, 0.3, 1.7).unwrap();
        assert!(r.abs() < 1e-9);
        assert!(fricke_vogt_residual(&cf(&[0]), 1, 0.3, 1.7).is_err());
        assert!(fricke_vogt_poly(&cf(&[0, 0]), 0, &rational(5, 2)).unwrap().is_zero());
    }

    #[test]
    fn recursions() {
        assert!(trace_recursion_check(&cf(&[0, 0]), 1, 3, &one()).unwrap());
        assert!(trace_recursion_check(&cf(&[0, 0, 1]), 1, 3, &rational(3, 2)).unwrap());
    }

    #[test]
    fn edge_estimate_examples() {
        let r = trace_edge_estimates(&cf(&[0, 0]), 2, 1, -2.0, 1.0).unwrap();
        assert!((r.t_cmn.abs() - 5.0).abs() < 1e-12);
        assert!(r.holds());
        let v = 0.8;
        let r = trace_edge_estimates(&cf(&[0, 0, 1]), 1, 1, 2.0 + v, v).unwrap();
        assert!((r.t_cmn.abs() - (3.0 * v + 2.0)).abs() < 1e-12);
        assert!(r.holds());
        assert!(matches!(trace_edge_estimates(&cf(&[0, 0]), 1, 1, 0.5, 1.0), Err(Error::NotAnEdge(_))));
    }
}
