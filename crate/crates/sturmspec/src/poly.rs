//! Exact univariate polynomials, Sturm chains and real root isolation over
//! dyadic rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with rational coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    c: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly { c }
    }

    pub fn zero() -> Self {
        RatPoly { c: Vec::new() }
    }

    pub fn constant(v: BigRational) -> Self {
        Self::new(vec![v])
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(BigRational::from_integer(v.into()))
    }

    /// The monomial `E`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        Self::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for a in self.c.iter().rev() {
            acc = acc * x + a.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn to_int_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let l = self.c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        IntPoly::new(self.c.iter().map(|x| (x * &l).to_integer()).collect()).primitive()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "E")?,
                _ => write!(f, "E^{i}")?,
            }
        }
        Ok(())
    }
}

/// A dyadic rational `num / 2^shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub shift: u32,
}

impl Dyadic {
    pub fn from_int(v: i64) -> Self {
        Dyadic { num: v.into(), shift: 0 }
    }

    pub fn mid(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let s = a.shift.max(b.shift);
        let an = &a.num << (s - a.shift);
        let bn = &b.num << (s - b.shift);
        Dyadic { num: an + bn, shift: s + 1 }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.shift > 0 && self.num.is_even() {
            self.num >>= 1;
            self.shift -= 1;
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.num.bits() as i64;
        if bits <= 60 {
            self.num.to_f64().unwrap() / 2f64.powi(self.shift as i32)
        } else {
            let drop = (bits - 60) as u32;
            let top: BigInt = &self.num >> drop;
            top.to_f64().unwrap() * 2f64.powi(drop as i32 - self.shift as i32)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.shift)
    }

    /// Dyadic approximation of `x` with `bits` fractional bits.
    pub fn from_f64(x: f64, bits: u32) -> Dyadic {
        let scaled = (x * 2f64.powi(bits as i32)).round();
        Dyadic { num: BigInt::from(scaled as i128), shift: bits }.normalized()
    }
}

/// Polynomial with integer coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn lead(&self) -> &BigInt {
        self.c.last().unwrap()
    }

    /// Divide by the (positive) content.
    pub fn primitive(&self) -> IntPoly {
        let g = self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
    }

    /// Remainder of `self` by `d` up to a positive factor.
    fn positive_prem(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.c.clone();
        let dd = d.c.len();
        let lc = d.lead().clone();
        let lc_abs = lc.abs();
        let sign = if lc.is_negative() { -BigInt::one() } else { BigInt::one() };
        while r.len() >= dd && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            if lr.is_zero() {
                r.pop();
                continue;
            }
            let off = r.len() - dd;
            // r <- |lc| r - sign(lc) lr x^off d
            for x in r.iter_mut() {
                *x *= &lc_abs;
            }
            let f = &lr * &sign;
            for (j, b) in d.c.iter().enumerate() {
                r[off + j] -= &f * b;
            }
            debug_assert!(r.last().unwrap().is_zero());
            r.pop();
        }
        IntPoly::new(r).primitive()
    }

    /// Sign of the value at `num / 2^shift`.
    pub fn sign_at(&self, x: &Dyadic) -> Ordering {
        if self.c.is_empty() {
            return Ordering::Equal;
        }
        let d = self.c.len() - 1;
        let mut acc = self.c[d].clone();
        for i in (0..d).rev() {
            acc = acc * &x.num + (&self.c[i] << (x.shift as usize * (d - i)));
        }
        acc.sign_ordering()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for a in self.c.iter().rev() {
            acc = acc * x + a.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Exact quotient over the rationals, made primitive.
    pub fn exact_div(&self, d: &IntPoly) -> IntPoly {
        let n = self.c.len();
        let m = d.c.len();
        if n < m {
            return IntPoly::new(Vec::new());
        }
        let mut r: Vec<BigRational> = self.c.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let lc = BigRational::from_integer(d.lead().clone());
        let mut q = vec![BigRational::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let f = &r[i + m - 1] / &lc;
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] -= &f * BigRational::from_integer(b.clone());
            }
            q[i] = f;
        }
        RatPoly::new(q).to_int_primitive()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Sturm chain of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut seq = vec![p.primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let r = seq[n - 2].positive_prem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(IntPoly::new(r.c.iter().map(|x| -x).collect()));
            }
        }
        SturmChain { seq }
    }

    /// Greatest common divisor of `p` and `p'` (up to a constant).
    pub fn gcd_with_derivative(&self) -> &IntPoly {
        self.seq.last().unwrap()
    }

    /// Square-free part of `p`.
    pub fn squarefree(&self) -> IntPoly {
        let g = self.gcd_with_derivative();
        if g.degree() <= 0 {
            self.seq[0].clone()
        } else {
            self.seq[0].exact_div(g)
        }
    }

    pub fn variations(&self, x: &Dyadic) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Isolating intervals `(lo, hi]` for the distinct real roots in `(lo, hi]`,
/// each refined until narrower than `2^-bits`.
pub fn real_roots(p: &IntPoly, lo: i64, hi: i64, bits: u32) -> Vec<(Dyadic, Dyadic)> {
    let chain = SturmChain::new(p);
    let sqf = chain.squarefree();
    let mut stack = vec![(Dyadic::from_int(lo), Dyadic::from_int(hi))];
    let mut isolated = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let n = chain.count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((a, b));
            continue;
        }
        let m = Dyadic::mid(&a, &b);
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    isolated.sort_by(|x, y| x.0.to_f64().partial_cmp(&y.0.to_f64()).unwrap());
    isolated.into_iter().map(|(a, b)| refine(&sqf, a, b, bits)).collect()
}

/// Bisection on the sign of a square-free polynomial with exactly one root in `(a, b]`.
pub fn refine(sqf: &IntPoly, mut a: Dyadic, mut b: Dyadic, bits: u32) -> (Dyadic, Dyadic) {
    let sb = sqf.sign_at(&b);
    if sb == Ordering::Equal {
        return (b.clone(), b);
    }
    loop {
        let w = (b.to_f64() - a.to_f64()).abs();
        let scale = a.to_f64().abs().max(b.to_f64().abs()).max(1.0);
        if w <= scale * 2f64.powi(-(bits as i32)) {
            return (a, b);
        }
        let m = Dyadic::mid(&a, &b);
        let sm = sqf.sign_at(&m);
        if sm == Ordering::Equal {
            return (m.clone(), m);
        }
        if sm == sb {
            b = m;
        } else {
            a = m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = RatPoly::from_ints(&[1, 1]);
        let q = p.mul(&p);
        assert_eq!(q, RatPoly::from_ints(&[1, 2, 1]));
        assert_eq!(q.sub(&q), RatPoly::zero());
        assert_eq!(q.degree(), 2);
        assert_eq!(format!("{}", RatPoly::from_ints(&[-2, -1, 1])), "E^2 - E - 2");
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x+2)(x-3)
        let p = ip(&[6, -5, -2, 1]);
        let ch = SturmChain::new(&p);
        assert_eq!(ch.count(&Dyadic::from_int(-10), &Dyadic::from_int(10)), 3);
        assert_eq!(ch.count(&Dyadic::from_int(0), &Dyadic::from_int(2)), 1);
        let roots = real_roots(&p, -10, 10, 50);
        let r: Vec<f64> = roots.iter().map(|(a, _)| a.to_f64()).collect();
        for (x, e) in r.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((x - e).abs() < 1e-12, "{x} vs {e}");
        }
    }

    #[test]
    fn repeated_roots() {
        // (x-1)^2 (x+1)
        let p = ip(&[1, -1, -1, 1]);
        let roots = real_roots(&p, -4, 4, 50);
        assert_eq!(roots.len(), 2);
        assert!((roots[1].0.to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn irrational_root() {
        let roots = real_roots(&ip(&[-2, 0, 1]), 0, 4, 52);
        let (a, b) = &roots[0];
        assert!(a.to_f64() <= 2f64.sqrt() + 1e-15 && b.to_f64() >= 2f64.sqrt() - 1e-15);
    }
}
