//! Integrated density of states: brute-force eigenvalue counting, the
//! explicit path formula, gap detection and gap labels.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bandscan::{spectrum_bands, PeriodicCounter, Theta};
use crate::contfrac::{convergents, mechanical_word, ContFrac, Rational};
use crate::error::{Error, Result};
use crate::linalg::unit_tridiag_count_below;
use crate::spectree::{BoundaryPath, Label, TreeShape};

/// Largest level used when a rational stand-in for `alpha` is needed.
const MAX_ALPHA_LEVEL: usize = 60;
const MAX_Q: i64 = 1 << 40;

/// The deepest convergent `p_K / q_K` of the digits with `q_K` below `2^40`.
pub fn alpha_rational(alpha_digits: &[i64]) -> Rational {
    let (p, q) = convergents(alpha_digits, alpha_level(alpha_digits) as i64);
    Rational::new(p, q)
}

fn alpha_level(alpha_digits: &[i64]) -> usize {
    let mut k = 0;
    let (mut q0, mut q1) = (0i64, 1i64);
    for (i, &c) in alpha_digits.iter().enumerate().take(MAX_ALPHA_LEVEL) {
        let q2 = match c.checked_mul(q1).and_then(|x| x.checked_add(q0)) {
            Some(q) if q < MAX_Q => q,
            _ => break,
        };
        q0 = q1;
        q1 = q2;
        k = i + 1;
    }
    k
}

fn check_coupling(v: f64) -> Result<()> {
    if v == 0.0 {
        Err(Error::ZeroCoupling)
    } else {
        Ok(())
    }
}

/// `V * omega_alpha(j)` for `j = 1..=n`.
pub fn chain_potential(alpha: Rational, v: f64, n: usize) -> Vec<f64> {
    (1..=n as u64).map(|j| v * f64::from(mechanical_word(alpha, j))).collect()
}

/// Fraction of eigenvalues of the open chain `H|[1, n]` below `e`.
pub fn ids_bruteforce(alpha: Rational, v: f64, e: f64, n: usize) -> f64 {
    assert!(n >= 1, "chain length must be positive");
    let diag = chain_potential(alpha, v, n);
    unit_tridiag_count_below(&diag, e) as f64 / n as f64
}

/// The same count with the periodic closure (corner entries `1`).
pub fn ids_bruteforce_periodic(alpha: Rational, v: f64, e: f64, n: usize) -> f64 {
    let pc = PeriodicCounter::new(chain_potential(alpha, v, n));
    pc.count_below(e, Theta::Zero) as f64 / n as f64
}

/// Value of the explicit path formula and a bound on the truncation error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PathIds {
    pub value: f64,
    pub bound: f64,
}

/// `N_alpha` of the boundary point through `path`, with truncation bound.
///
/// Each vertex `u_j` contributes `(-1)^l (relA + deltaA) (q_l alpha - p_l)`,
/// `l` its level. Terms from the last vertex on are unknown; since levels
/// increase along a path they are bounded by
/// `sum_{l >= L} (c_{l+1} + 1) |q_l alpha - p_l|`.
pub fn ids_path_bounded(alpha_digits: &[i64], path: &BoundaryPath) -> Result<PathIds> {
    let shape = TreeShape::new(alpha_digits)?;
    let walk = shape.walk(path)?;
    let kk = alpha_level(alpha_digits);
    let (pa, qa) = convergents(alpha_digits, kk as i64);
    // q_l alpha - p_l, exact for alpha = p_K/q_K
    let dist = |l: i64| -> f64 {
        let (p, q) = convergents(alpha_digits, l.min(kk as i64));
        (q as i128 * pa as i128 - p as i128 * qa as i128) as f64 / qa as f64
    };
    let mut value = -(pa as f64 / qa as f64);
    for (j, &i) in path.0.iter().enumerate() {
        let (label, level) = walk[j];
        let rel = if label == Label::Root { i } else { i / 2 };
        let delta = usize::from(label == Label::A);
        let sign = if level.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        value += sign * (rel + delta) as f64 * dist(level);
    }
    let (_, last) = *walk.last().unwrap();
    let mut bound = 0.0;
    for l in last.max(-1)..kk as i64 {
        let c = if l + 1 >= 1 { alpha_digits[l as usize] } else { 1 };
        bound += (c + 1) as f64 * dist(l).abs();
    }
    bound += 8.0 / qa as f64;
    Ok(PathIds { value, bound })
}

/// `N_alpha(gamma)`, failing when the truncation bound exceeds `tol`.
pub fn ids_path(alpha_digits: &[i64], path: &BoundaryPath, tol: f64) -> Result<f64> {
    let r = ids_path_bounded(alpha_digits, path)?;
    if r.bound > tol {
        return Err(Error::InsufficientDepth { value: r.value, bound: r.bound });
    }
    Ok(r.value)
}

/// One gap of `sigma_k ∪ sigma_{k+1}` with its label.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub left: f64,
    pub right: f64,
    pub ids: f64,
    pub l: Option<i64>,
    pub residual: f64,
}

/// Nearest `l alpha mod 1` (`|l| <= l_max`) to `x`, ties to smaller `|l|`.
/// `l = 0` stands for both `0` and `1`.
pub fn nearest_label(x: f64, alpha: f64, l_max: i64) -> (i64, f64) {
    let mut best = (0, x.min(1.0 - x).abs());
    for a in 1..=l_max {
        for l in [a, -a] {
            let f = (l as f64 * alpha).rem_euclid(1.0);
            let d = (x - f).abs();
            if d < best.1 {
                best = (l, d);
            }
        }
    }
    best
}

fn merged_bands(alpha_digits: &[i64], k: usize, v: f64) -> Result<Vec<(f64, f64)>> {
    let mut iv = Vec::new();
    for level in [k, k + 1] {
        let c = ContFrac::approximant(alpha_digits, level)?;
        iv.extend(spectrum_bands(&c, v)?.intervals());
    }
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (l, r) in iv {
        match out.last_mut() {
            Some(last) if l <= last.1 => last.1 = last.1.max(r),
            _ => out.push((l, r)),
        }
    }
    Ok(out)
}

/// Gaps of `sigma_k ∪ sigma_{k+1}` labelled by the IDS of the `(k+1)`-th
/// approximant at `n = q_{k+1}`, evaluated at gap midpoints.
///
/// The count uses the periodic closure: a midpoint outside `sigma_{k+1}`
/// then gives the exact value `j / q_{k+1}`. The open chain may be off by
/// one eigenvalue, which is coarser than the spacing of the labels.
pub fn gaps(alpha_digits: &[i64], k: usize, v: f64) -> Result<Vec<GapReport>> {
    check_coupling(v)?;
    if k < 1 || k + 1 > alpha_digits.len() {
        return Err(Error::Input(format!("level {k} needs 1 <= k < {}", alpha_digits.len())));
    }
    let union = merged_bands(alpha_digits, k, v)?;
    let (p1, q1) = convergents(alpha_digits, k as i64 + 1);
    let (_, qk) = convergents(alpha_digits, k as i64);
    let approx = Rational::new(p1, q1);
    let alpha = *alpha_rational(alpha_digits).numer() as f64 / *alpha_rational(alpha_digits).denom() as f64;
    let tol = 1.0 / qk as f64;
    Ok(union
        .par_windows(2)
        .map(|w| {
            let (left, right) = (w[0].1, w[1].0);
            let ids = ids_bruteforce_periodic(approx, v, 0.5 * (left + right), q1 as usize);
            let (l, residual) = nearest_label(ids, alpha, qk);
            GapReport { left, right, ids, l: (residual <= tol).then_some(l), residual }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DryTmpReport {
    pub k: usize,
    pub v: f64,
    pub l_max: i64,
    pub gaps: Vec<GapReport>,
    /// Labels `0 < |l| <= l_max` carried by some gap.
    pub realized: BTreeSet<i64>,
    /// Labels `0 < |l| <= l_max` without a gap at this depth.
    pub missing: BTreeSet<i64>,
}

impl DryTmpReport {
    pub fn all_labelled(&self) -> bool {
        self.gaps.iter().all(|g| g.l.is_some())
    }

    pub fn all_realized(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.all_labelled() && self.all_realized()
    }
}

/// Every gap carries a label within `1/q_k`, and every `|l| <= l_max` is
/// realised. Missing labels mean the depth is insufficient.
pub fn dry_tmp_verify(alpha_digits: &[i64], k: usize, v: f64, l_max: i64) -> Result<DryTmpReport> {
    let gaps = gaps(alpha_digits, k, v)?;
    let realized: BTreeSet<i64> = gaps.iter().filter_map(|g| g.l).filter(|l| *l != 0 && l.abs() <= l_max).collect();
    let missing = (-l_max..=l_max).filter(|l| *l != 0 && !realized.contains(l)).collect();
    Ok(DryTmpReport { k, v, l_max, gaps, realized, missing })
}

#[derive(Clone, Debug, Serialize)]
pub struct MirrorReport {
    /// Largest edge mismatch between `sigma(-V)` and `-sigma(V)`.
    pub band_error: f64,
    /// Largest `|N_{-V}(-E(gamma; V)) - (1 - N(gamma))|` over the paths.
    pub ids_error: f64,
}

/// Band mirror for levels `0..=k`, and the IDS complement identity at the
/// boundary points of `paths` with `n`-site chains.
pub fn negative_v_report(
    alpha_digits: &[i64],
    k: usize,
    v: f64,
    paths: &[BoundaryPath],
    n: usize,
) -> Result<MirrorReport> {
    check_coupling(v)?;
    let mut band_error: f64 = 0.0;
    for level in 0..=k {
        let c = ContFrac::approximant(alpha_digits, level)?;
        let pos = spectrum_bands(&c, v)?.intervals();
        let neg = spectrum_bands(&c, -v)?.intervals();
        for (a, b) in pos.iter().rev().zip(&neg) {
            band_error = band_error.max((a.1 + b.0).abs()).max((a.0 + b.1).abs());
        }
        if pos.len() != neg.len() {
            band_error = f64::INFINITY;
        }
    }
    let shape = TreeShape::new(alpha_digits)?;
    let alpha = alpha_rational(alpha_digits);
    let mut ids_error: f64 = 0.0;
    for p in paths {
        let e = crate::spectree::boundary_band(&shape, p, v, 0.0)?.mid();
        let n_path = ids_path_bounded(alpha_digits, p)?.value;
        let n_neg = ids_bruteforce(alpha, -v, -e, n);
        ids_error = ids_error.max((n_neg - (1.0 - n_path)).abs());
    }
    Ok(MirrorReport { band_error, ids_error })
}

/// Band mirror within `1e-10` and IDS complement within `2/q_k`.
pub fn negative_v_check(alpha_digits: &[i64], k: usize, v: f64, paths: &[BoundaryPath], n: usize) -> Result<bool> {
    let r = negative_v_report(alpha_digits, k, v, paths, n)?;
    let qk = convergents(alpha_digits, k as i64).1 as f64;
    Ok(r.band_error < 1e-10 && r.ids_error <= 2.0 / qk)
}
