//! Finite continued fraction expansions `[0,0,c1,...,ck]`, the evaluation map,
//! convergents and the associated mechanical / substitution words.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Value of the evaluation map. Expansions that evaluate to the sentinel are
/// kept apart from genuine rationals so they never reach the band code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phi {
    Sentinel,
    Value(Rational),
}

impl Phi {
    pub fn value(self) -> Option<Rational> {
        match self {
            Phi::Sentinel => None,
            Phi::Value(r) => Some(r),
        }
    }

    pub fn is_sentinel(self) -> bool {
        matches!(self, Phi::Sentinel)
    }
}

/// Digit list `(c_{-1}, c_0, c_1, ..., c_k)` with `c_{-1} = c_0 = 0`.
/// `[0]` has level -1 and `[0,0]` level 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContFrac {
    digits: Vec<i64>,
}

impl ContFrac {
    pub fn new(digits: &[i64]) -> Result<Self> {
        let bad = |why: &str| Err(Error::MalformedDigits(format!("{digits:?}: {why}")));
        if digits.is_empty() {
            return bad("empty digit list");
        }
        if digits[0] != 0 {
            return bad("c_-1 must be 0");
        }
        if digits.len() >= 2 && digits[1] != 0 {
            return bad("c_0 must be 0");
        }
        let n = digits.len();
        if n >= 3 {
            if digits[2..n - 1].iter().any(|&c| c < 1) {
                return bad("interior digits must be >= 1");
            }
            if digits[n - 1] < -1 {
                return bad("last digit must be >= -1");
            }
        }
        Ok(ContFrac { digits: digits.to_vec() })
    }

    /// `[0,0,c_1,...,c_k]` from the digits of `alpha`.
    pub fn from_alpha(alpha_digits: &[i64]) -> Result<Self> {
        let mut d = vec![0, 0];
        d.extend_from_slice(alpha_digits);
        Self::new(&d)
    }

    /// `[0,0,c_1,...,c_k]` truncated at level `k` (k >= 0).
    pub fn approximant(alpha_digits: &[i64], k: usize) -> Result<Self> {
        if k > alpha_digits.len() {
            return Err(Error::Input(format!("level {k} needs more than {} digits", alpha_digits.len())));
        }
        Self::from_alpha(&alpha_digits[..k])
    }

    pub fn root() -> Self {
        ContFrac { digits: vec![0] }
    }

    pub fn base() -> Self {
        ContFrac { digits: vec![0, 0] }
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    /// The digits `c_1..c_k` after the two leading zeros.
    pub fn tail(&self) -> &[i64] {
        if self.digits.len() <= 2 {
            &[]
        } else {
            &self.digits[2..]
        }
    }

    /// The level `k` (number of digits after `c_0`).
    pub fn level(&self) -> i64 {
        self.digits.len() as i64 - 2
    }

    pub fn last(&self) -> i64 {
        *self.digits.last().unwrap()
    }

    /// Whether `[self, m]` may be formed.
    pub fn is_extendable(&self) -> bool {
        self.digits.len() == 2 || (self.digits.len() >= 3 && self.last() >= 1)
    }

    /// `[self, m]`.
    pub fn extend(&self, m: i64) -> Result<Self> {
        if self.digits.len() == 1 {
            if m == 0 {
                return Ok(Self::base());
            }
            return Err(Error::MalformedDigits(format!("[0,{m}] is not an expansion")));
        }
        if !self.is_extendable() {
            return Err(Error::MalformedDigits(format!("{self} ends in {} and cannot be extended", self.last())));
        }
        let mut d = self.digits.clone();
        d.push(m);
        Self::new(&d)
    }

    /// `[self, a, b, ...]`.
    pub fn extend_many(&self, ms: &[i64]) -> Result<Self> {
        let mut c = self.clone();
        for &m in ms {
            c = c.extend(m)?;
        }
        Ok(c)
    }

    /// The expansion with the last digit removed (one level below).
    pub fn parent(&self) -> Option<Self> {
        if self.digits.len() <= 1 {
            None
        } else {
            Some(ContFrac { digits: self.digits[..self.digits.len() - 1].to_vec() })
        }
    }

    /// The evaluation map.
    pub fn phi(&self) -> Phi {
        evaluate(self)
    }

    /// Denominator `q` of the evaluation, if not the sentinel.
    pub fn q(&self) -> Option<i64> {
        self.phi().value().map(|r| *r.denom())
    }
}

impl fmt::Display for ContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

pub fn make_contfrac(digits: &[i64]) -> Result<ContFrac> {
    ContFrac::new(digits)
}

/// Evaluation map with the three-case recursion on the last digit.
pub fn evaluate(c: &ContFrac) -> Phi {
    phi_digits(c.digits())
}

fn phi_digits(d: &[i64]) -> Phi {
    let n = d.len();
    if n == 1 {
        return Phi::Sentinel;
    }
    if n == 2 {
        return Phi::Value(Rational::from_integer(0));
    }
    match d[n - 1] {
        -1 => {
            if n == 3 {
                return Phi::Sentinel;
            }
            let mut e = d[..n - 1].to_vec();
            e[n - 2] -= 1;
            phi_digits(&e)
        }
        0 => phi_digits(&d[..n - 2]),
        _ => {
            let (p, q) = convergents(&d[2..], (n - 2) as i64);
            Phi::Value(Rational::new(p, q))
        }
    }
}

/// `(p_k, q_k)` of `[0,0,c_1..c_k]` with `p_{-1}=1, q_{-1}=0, p_0=0, q_0=1`.
pub fn convergents(alpha_digits: &[i64], k: i64) -> (i64, i64) {
    assert!(k >= -1, "level must be >= -1");
    assert!(k as usize <= alpha_digits.len() || k < 0, "not enough digits for level {k}");
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, 0i64, 1i64);
    if k == -1 {
        return (p0, q0);
    }
    for &c in &alpha_digits[..k as usize] {
        let p2 = c.checked_mul(p1).and_then(|x| x.checked_add(p0)).expect("p_k overflow");
        let q2 = c.checked_mul(q1).and_then(|x| x.checked_add(q0)).expect("q_k overflow");
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    (p1, q1)
}

/// All denominators `q_{-1}, q_0, ..., q_k`.
pub fn denominators(alpha_digits: &[i64], k: usize) -> Vec<i64> {
    (-1..=k as i64).map(|j| convergents(alpha_digits, j).1).collect()
}

/// `omega_alpha(n) = 1` iff `(n alpha mod 1)` lies in `[1 - alpha, 1)`.
pub fn mechanical_word(alpha: Rational, n: u64) -> u8 {
    let p = *alpha.numer() as i128;
    let q = *alpha.denom() as i128;
    assert!(0 <= p && p <= q, "alpha must lie in [0,1]");
    let r = (n as i128 * p).mod_floor(&q);
    u8::from(r >= q - p)
}

/// One period `omega(1..q)` of the mechanical word of `p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordPeriod {
    pub bits: Vec<u8>,
}

impl WordPeriod {
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

pub fn word_of(alpha: Rational) -> WordPeriod {
    let q = *alpha.denom() as u64;
    WordPeriod { bits: (1..=q).map(|n| mechanical_word(alpha, n)).collect() }
}

pub fn word_period(c: &ContFrac) -> Result<WordPeriod> {
    match c.phi() {
        Phi::Sentinel => Err(Error::DegenerateExpansion),
        Phi::Value(r) => Ok(word_of(r)),
    }
}

/// Seed convention for the substitution words `s_{-1}, s_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedOrder {
    /// `s_{-1} = 0`, `s_0 = 1`.
    Literal,
    /// `s_{-1} = 1`, `s_0 = 0`.
    Swapped,
}

impl SeedOrder {
    fn seeds(self) -> (u8, u8) {
        match self {
            SeedOrder::Literal => (0, 1),
            SeedOrder::Swapped => (1, 0),
        }
    }
}

/// `s_n` with `s_1 = 0^{c_1 - 1} 1` and `s_{n+1} = s_n^{c_{n+1}} s_{n-1}`.
pub fn substitution_word_with(alpha_digits: &[i64], n: i64, seed: SeedOrder) -> Vec<u8> {
    assert!(n >= -1);
    assert!(n <= alpha_digits.len() as i64, "not enough digits for level {n}");
    let (sm1, s0) = seed.seeds();
    if n == -1 {
        return vec![sm1];
    }
    if n == 0 {
        return vec![s0];
    }
    let mut prev = vec![s0];
    let mut cur = vec![0u8; (alpha_digits[0] - 1) as usize];
    cur.push(1);
    for &d in &alpha_digits[1..n as usize] {
        let mut next = Vec::with_capacity(cur.len() * d as usize + prev.len());
        for _ in 0..d {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Whether `a` is a cyclic rotation of `b`.
pub fn is_rotation(a: &[u8], b: &[u8]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|s| a.iter().enumerate().all(|(i, &x)| x == b[(i + s) % b.len()]))
}

fn seed_matches(seed: SeedOrder) -> bool {
    [1i64, 2].iter().all(|&d| {
        let digits = vec![d; 10];
        (1..=10).all(|k| {
            let s = substitution_word_with(&digits, k, seed);
            let (p, q) = convergents(&digits, k);
            is_rotation(&s, &word_of(Rational::new(p, q)).bits)
        })
    })
}

/// The seed order whose words rotation-match the mechanical periods,
/// decided once on golden and silver digits up to level 10.
pub fn seed_order() -> SeedOrder {
    static ORDER: OnceLock<SeedOrder> = OnceLock::new();
    *ORDER.get_or_init(|| {
        if seed_matches(SeedOrder::Literal) {
            SeedOrder::Literal
        } else if seed_matches(SeedOrder::Swapped) {
            SeedOrder::Swapped
        } else {
            panic!("neither seed order reproduces the mechanical words")
        }
    })
}

pub fn substitution_word(alpha_digits: &[i64], n: i64) -> Vec<u8> {
    substitution_word_with(alpha_digits, n, seed_order())
}

/// One period of the upper mechanical word `ceil((n+1) alpha) - ceil(n alpha)`,
/// read from `n = 0`. It is a rotation of [`word_of`].
pub fn upper_word_of(alpha: Rational) -> WordPeriod {
    let p = *alpha.numer() as i128;
    let q = *alpha.denom() as i128;
    let ceil = |m: i128| (m * p + q - 1).div_euclid(q);
    WordPeriod { bits: (0..q).map(|n| (ceil(n + 1) - ceil(n)) as u8).collect() }
}

fn upper_word(alpha_digits: &[i64], k: usize) -> Vec<u8> {
    let (p, q) = convergents(alpha_digits, k as i64);
    upper_word_of(Rational::new(p, q)).bits
}

/// Upper period at level `n` built from `c_n` copies of level `n-1` and one
/// copy of level `n-2`: appended for even `n`, prepended for odd `n`.
pub fn concatenated_period(alpha_digits: &[i64], n: usize) -> Vec<u8> {
    assert!(n >= 2);
    let w1 = upper_word(alpha_digits, n - 1);
    let w2 = upper_word(alpha_digits, n - 2);
    let mut out = Vec::new();
    if n % 2 == 1 {
        out.extend_from_slice(&w2);
    }
    for _ in 0..alpha_digits[n - 1] {
        out.extend_from_slice(&w1);
    }
    if n.is_multiple_of(2) {
        out.extend_from_slice(&w2);
    }
    out
}

/// The concatenation equals the upper period exactly, and that period is a
/// rotation of the lower one used by the operator.
pub fn concatenation_holds(alpha_digits: &[i64], n: usize) -> bool {
    let (p, q) = convergents(alpha_digits, n as i64);
    let alpha = Rational::new(p, q);
    let upper = upper_word_of(alpha).bits;
    concatenated_period(alpha_digits, n) == upper && is_rotation(&upper, &word_of(alpha).bits)
}

/// Digits `c_1..c_k` of a rational in `[0, 1]`, ending in a digit >= 2
/// unless the value is 1.
pub fn rational_digits(p: i64, q: i64) -> Result<Vec<i64>> {
    if q <= 0 || p < 0 || p > q {
        return Err(Error::Input(format!("{p}/{q} is not in [0,1]")));
    }
    let mut out = Vec::new();
    let (mut a, mut b) = (q, p);
    while b != 0 {
        out.push(a / b);
        let r = a % b;
        a = b;
        b = r;
    }
    Ok(out)
}

/// Default number of digits used for the irrational presets.
pub const PRESET_DIGITS: usize = 40;

/// Parses `cf:1,2,3`, `rat:p/q`, `golden` or `silver` into the digits `c_1..`.
pub fn parse_alpha(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s == "golden" {
        return Ok(vec![1; PRESET_DIGITS]);
    }
    if s == "silver" {
        return Ok(vec![2; PRESET_DIGITS]);
    }
    if let Some(rest) = s.strip_prefix("cf:") {
        return parse_digit_list(rest);
    }
    if let Some(rest) = s.strip_prefix("rat:") {
        let (p, q) = rest.split_once('/').ok_or_else(|| Error::Input(format!("expected p/q, got {rest:?}")))?;
        let p: i64 = p.trim().parse().map_err(|_| Error::Input(format!("bad numerator {p:?}")))?;
        let q: i64 = q.trim().parse().map_err(|_| Error::Input(format!("bad denominator {q:?}")))?;
        let g = p.gcd(&q).max(1);
        return rational_digits(p / g, q / g);
    }
    Err(Error::Input(format!("unrecognised alpha {s:?}")))
}

pub fn parse_digit_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let digits = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Input(format!("bad digit {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if digits.iter().any(|&d| d < 1) {
        return Err(Error::MalformedDigits(format!("{digits:?}: alpha digits must be >= 1")));
    }
    Ok(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(d: &[i64]) -> ContFrac {
        ContFrac::new(d).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ContFrac::new(&[0, 0, 1, 2]).is_ok());
        assert!(ContFrac::new(&[0, 0, 1, -1]).is_ok());
        assert!(matches!(ContFrac::new(&[0, 0, 0, 2]), Err(Error::MalformedDigits(_))));
        assert!(matches!(ContFrac::new(&[0, 0, 2, -2]), Err(Error::MalformedDigits(_))));
        assert!(ContFrac::new(&[]).is_err());
        assert!(ContFrac::new(&[1]).is_err());
        assert!(cf(&[0, 0, 1, 0]).extend(3).is_err());
        assert!(cf(&[0, 0]).extend(0).is_ok());
    }

    #[test]
    fn sentinel_cases() {
        for d in [&[0][..], &[0, 0, 0], &[0, 0, -1], &[0, 0, 1, -1]] {
            assert_eq!(cf(d).phi(), Phi::Sentinel, "{d:?}");
        }
        assert_eq!(cf(&[0, 0]).phi(), Phi::Value(Rational::from_integer(0)));
        assert_eq!(cf(&[0, 0, 1, 1]).phi(), Phi::Value(Rational::new(1, 2)));
        assert_eq!(cf(&[0, 0, 2, 0]).phi(), Phi::Value(Rational::from_integer(0)));
        assert_eq!(cf(&[0, 0, 3, -1]).phi(), Phi::Value(Rational::new(1, 2)));
    }

    #[test]
    fn convergent_values() {
        let q: Vec<i64> = (0..=5).map(|k| convergents(&[1; 5], k).1).collect();
        assert_eq!(q, vec![1, 1, 2, 3, 5, 8]);
        assert_eq!(convergents(&[2], 1), (1, 2));
        assert_eq!(convergents(&[1, 2], 2), (2, 3));
        assert_eq!(convergents(&[], -1), (1, 0));
    }

    #[test]
    fn words() {
        let half = Rational::new(1, 2);
        assert_eq!((mechanical_word(half, 1), mechanical_word(half, 2)), (1, 0));
        let w: Vec<u8> = (1..=5).map(|n| mechanical_word(Rational::new(2, 5), n)).collect();
        assert_eq!(w, vec![0, 1, 0, 1, 0]);
        assert!((1..20).all(|n| mechanical_word(Rational::from_integer(0), n) == 0));
        assert_eq!(word_period(&cf(&[0, 0, 2])).unwrap().bits, vec![1, 0]);
        assert_eq!(word_period(&cf(&[0, 0, 1])).unwrap().bits, vec![1]);
        assert_eq!(word_period(&cf(&[0, 0, 1, -1])), Err(Error::DegenerateExpansion));
    }

    #[test]
    fn substitution() {
        let golden = [1i64; 12];
        assert_eq!(substitution_word(&golden, 1), vec![1]);
        assert_eq!(seed_order(), SeedOrder::Swapped);
        assert_eq!(substitution_word(&golden, -1), vec![1]);
        assert_eq!(substitution_word(&golden, 0), vec![0]);
        assert_eq!(substitution_word_with(&golden, 4, SeedOrder::Literal), vec![1; 5]);
        let s4 = substitution_word(&golden, 4);
        assert_eq!(s4.len(), 5);
        let w = word_period(&cf(&[0, 0, 1, 1, 1, 1])).unwrap();
        assert!(is_rotation(&s4, &w.bits));
    }

    #[test]
    fn upper_period_concatenation() {
        // 2/5 from index 0: ceil steps 1, 0, 1, 0, 0.
        assert_eq!(upper_word_of(Rational::new(2, 5)).bits, vec![1, 0, 1, 0, 0]);
        assert_eq!(concatenated_period(&[2, 2], 2), vec![1, 0, 1, 0, 0]);
        for digits in [vec![1i64; 10], vec![2; 10], vec![3, 1, 4, 1, 5, 2, 6, 1, 1, 2]] {
            for n in 2..=10 {
                assert!(concatenation_holds(&digits, n), "{digits:?} n={n}");
            }
        }
    }

    #[test]
    fn rational_expansion() {
        assert_eq!(rational_digits(1, 2).unwrap(), vec![2]);
        assert_eq!(rational_digits(2, 3).unwrap(), vec![1, 2]);
        assert_eq!(rational_digits(1, 1).unwrap(), vec![1]);
        assert_eq!(rational_digits(0, 1).unwrap(), Vec::<i64>::new());
        assert_eq!(parse_alpha("rat:2/4").unwrap(), vec![2]);
        assert_eq!(parse_alpha("cf:1,1,1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_alpha("golden").unwrap().len(), PRESET_DIGITS);
        assert!(parse_alpha("pi").is_err());
    }
}
