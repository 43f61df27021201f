//! A/B types of spectral bands: backward types, the forward properties,
//! associated bands, index identities and the trace ladder.

use rayon::prelude::*;
use serde::Serialize;

use crate::bandscan::{
    contained, left_of, spectrum, spectrum_bands, strictly_contained, zentrum, Band, BandSet, Spectrum,
};
use crate::contfrac::ContFrac;
use crate::error::{Error, Result};
use crate::tracepoly::trace_eval;

/// Coupling at which associated bands are identified.
pub const V_REF: f64 = 8.0;

/// Margin for strict and weak containment on the float path.
pub const CONTAIN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BandType {
    A,
    B,
}

impl BandType {
    pub fn swap(self) -> BandType {
        match self {
            BandType::A => BandType::B,
            BandType::B => BandType::A,
        }
    }
}

impl std::fmt::Display for BandType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BandType::A => "A",
            BandType::B => "B",
        })
    }
}

fn strictly_in(i: (f64, f64), s: &Spectrum) -> bool {
    match s {
        Spectrum::FullLine => true,
        Spectrum::Bands(b) => b.bands.iter().any(|j| strictly_contained(i, j.interval(), CONTAIN_TOL)),
    }
}

fn weakly_in(i: (f64, f64), s: &Spectrum) -> bool {
    match s {
        Spectrum::FullLine => true,
        Spectrum::Bands(b) => b.bands.iter().any(|j| contained(i, j.interval(), CONTAIN_TOL)),
    }
}

fn regular(c: &ContFrac) -> Result<()> {
    if c.level() >= 0 && c.is_extendable() {
        Ok(())
    } else {
        Err(Error::Input(format!("{c} must be [0,0] or end in a positive digit")))
    }
}

/// Backward type flags of one band at one coupling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BackwardFlags {
    pub a: bool,
    pub b: bool,
    pub weak_a: bool,
    pub weak_b: bool,
}

/// Backward types of `band` (a band of `sigma_c(V)`) against `sigma_{[c,0]}`
/// and `sigma_{[c,-1]}`.
pub fn backward_type(band: &Band, v: f64) -> Result<BackwardFlags> {
    let c = &band.parent;
    if c.phi().is_sentinel() {
        return Err(Error::DegenerateExpansion);
    }
    regular(c)?;
    let s0 = spectrum(&c.extend(0)?, v)?;
    let s1 = spectrum(&c.extend(-1)?, v)?;
    let i = band.interval();
    Ok(BackwardFlags {
        a: strictly_in(i, &s0),
        weak_a: weakly_in(i, &s0),
        b: strictly_in(i, &s1),
        weak_b: weakly_in(i, &s1),
    })
}

/// The spectra one and two levels below `c`.
fn lower_spectra(c: &ContFrac, v: f64) -> Result<(Spectrum, Spectrum)> {
    let p1 = c.parent().expect("level >= 0");
    let s1 = spectrum(&p1, v)?;
    let s2 = match p1.parent() {
        Some(p2) => spectrum(&p2, v)?,
        None => Spectrum::FullLine,
    };
    Ok((s1, s2))
}

/// Type of one interval against the spectra one and two levels below.
pub fn type_against(i: (f64, f64), below1: &Spectrum, below2: &Spectrum) -> Option<BandType> {
    let a = strictly_in(i, below1);
    let b = !weakly_in(i, below1) && strictly_in(i, below2);
    match (a, b) {
        (true, false) => Some(BandType::A),
        (false, true) => Some(BandType::B),
        _ => None,
    }
}

/// Labels of all bands of `sigma_c(V)` by the one/two-levels-below characterization.
pub fn classify_at(c: &ContFrac, v: f64) -> Result<(BandSet, Vec<Option<BandType>>)> {
    regular(c)?;
    let set = spectrum_bands(c, v)?;
    let (s1, s2) = lower_spectra(c, v)?;
    let labels = set.bands.iter().map(|b| type_against(b.interval(), &s1, &s2)).collect();
    Ok((set, labels))
}

/// Per-band classification over a grid of couplings.
#[derive(Clone, Debug, Serialize)]
pub struct TypeReport {
    pub index: usize,
    pub labels: Vec<Option<BandType>>,
    pub backward: Vec<BackwardFlags>,
    pub final_type: Option<BandType>,
}

impl TypeReport {
    pub fn is_consistent(&self) -> bool {
        self.final_type.is_some()
    }
}

/// Classification reports for every band, without failing on inconsistency.
pub fn classify_report(c: &ContFrac, v_grid: &[f64]) -> Result<Vec<TypeReport>> {
    regular(c)?;
    let per_v: Vec<(Vec<Option<BandType>>, Vec<BackwardFlags>)> = v_grid
        .par_iter()
        .map(|&v| {
            let (set, labels) = classify_at(c, v)?;
            let flags = set.bands.iter().map(|b| backward_type(b, v)).collect::<Result<Vec<_>>>()?;
            Ok((labels, flags))
        })
        .collect::<Result<_>>()?;
    let q = c.q().unwrap_or(0) as usize;
    Ok((0..q)
        .map(|i| {
            let labels: Vec<_> = per_v.iter().map(|(l, _)| l[i]).collect();
            let backward = per_v.iter().map(|(_, f)| f[i]).collect();
            let first = labels.first().copied().flatten();
            let final_type = if !labels.is_empty() && labels.iter().all(|l| *l == first) { first } else { None };
            TypeReport { index: i, labels, backward, final_type }
        })
        .collect())
}

/// Types of all bands, failing when a band is untyped or changes type on the grid.
pub fn classify(c: &ContFrac, v_grid: &[f64]) -> Result<Vec<TypeReport>> {
    let reports = classify_report(c, v_grid)?;
    if let Some(r) = reports.iter().find(|r| !r.is_consistent()) {
        return Err(Error::Inconsistent { index: r.index });
    }
    Ok(reports)
}

/// Band types at a single coupling, failing on an untyped band.
pub fn band_types(c: &ContFrac, v: f64) -> Result<Vec<BandType>> {
    let (_, labels) = classify_at(c, v)?;
    labels.iter().enumerate().map(|(i, l)| l.ok_or(Error::Inconsistent { index: i })).collect()
}

// ---------------------------------------------------------------------------
// Associated bands

/// Bands associated with `I_c` for a digit `m`, identified by index at [`V_REF`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Associated {
    pub c: Vec<i64>,
    pub index: usize,
    pub m: i64,
    pub kind: BandType,
    /// `M = m - 1` for type A, `m` for type B.
    pub big_m: usize,
    /// Indices in `sigma_{[c,m]}` of the `M` bands strictly inside `I_c`.
    pub children: Vec<usize>,
    /// `towers[n-1]`: indices in `sigma_{[c,m,n]}` of the `M+1` tower bands.
    pub towers: Vec<Vec<usize>>,
    /// Right-most band of `sigma_{[c,m]}` to the left of `I_c`.
    pub j: Option<usize>,
    /// Left-most band of `sigma_{[c,m]}` to the right of `I_c`.
    pub k: Option<usize>,
}

fn tower_candidates(i: (f64, f64), cmn: &BandSet, cm: &Spectrum) -> Vec<usize> {
    cmn.bands
        .iter()
        .filter(|b| strictly_contained(b.interval(), i, CONTAIN_TOL) && !weakly_in(b.interval(), cm))
        .map(|b| b.index)
        .collect()
}

pub fn associated_bands(c: &ContFrac, index: usize, m: i64, n_max: i64, v_ref: f64) -> Result<Associated> {
    regular(c)?;
    if m < 1 {
        return Err(Error::Input(format!("m = {m} must be positive")));
    }
    let (set, labels) = classify_at(c, v_ref)?;
    let band = set.bands.get(index).ok_or_else(|| Error::Input(format!("no band {index} in {c}")))?;
    let kind = labels[index].ok_or(Error::Inconsistent { index })?;
    let big_m = match kind {
        BandType::A => (m - 1) as usize,
        BandType::B => m as usize,
    };
    let cm = c.extend(m)?;
    let scm = spectrum_bands(&cm, v_ref)?;
    let i = band.interval();
    let children: Vec<usize> =
        scm.bands.iter().filter(|b| strictly_contained(b.interval(), i, CONTAIN_TOL)).map(|b| b.index).collect();
    if children.len() != big_m {
        return Err(Error::PreconditionFail(format!(
            "{} bands of {cm} inside band {index} of {c}, expected {big_m}",
            children.len()
        )));
    }
    let cm_spec = Spectrum::Bands(scm.clone());
    let mut towers = Vec::new();
    for n in 1..=n_max {
        let cmn = cm.extend(n)?;
        let t = tower_candidates(i, &spectrum_bands(&cmn, v_ref)?, &cm_spec);
        if t.len() != big_m + 1 {
            return Err(Error::PreconditionFail(format!(
                "{} tower bands of {cmn} inside band {index} of {c}, expected {}",
                t.len(),
                big_m + 1
            )));
        }
        towers.push(t);
    }
    let j = scm.bands.iter().rev().find(|b| left_of(b.interval(), i)).map(|b| b.index);
    let k = scm.bands.iter().find(|b| left_of(i, b.interval())).map(|b| b.index);
    Ok(Associated { c: c.digits().to_vec(), index, m, kind, big_m, children, towers, j, k })
}

/// Outcome of the forward properties for one `m` at one coupling.
#[derive(Clone, Debug, Serialize)]
pub struct ForwardReport {
    pub m: i64,
    pub v: f64,
    pub a1: bool,
    pub a2: bool,
    /// Per `n = 1..n_max`.
    pub b1: Vec<bool>,
    pub b2: Vec<bool>,
    pub interlace: Vec<bool>,
    /// Whether exactly `M+1` bands satisfy the tower conditions (reported only).
    pub unique_b: Vec<bool>,
}

impl ForwardReport {
    /// All asserted properties; uniqueness is not part of it.
    pub fn holds(&self) -> bool {
        self.a1
            && self.a2
            && self.b1.iter().all(|&x| x)
            && self.b2.iter().all(|&x| x)
            && self.interlace.iter().all(|&x| x)
    }
}

pub fn forward_check(c: &ContFrac, index: usize, m: i64, v: f64, n_max: i64) -> Result<ForwardReport> {
    let assoc = associated_bands(c, index, m, n_max, V_REF)?;
    forward_check_with(c, &assoc, v)
}

/// Forward properties at `v` for associated bands resolved beforehand.
pub fn forward_check_with(c: &ContFrac, assoc: &Associated, v: f64) -> Result<ForwardReport> {
    let m = assoc.m;
    let ic = spectrum_bands(c, v)?.bands[assoc.index].interval();
    let cm = c.extend(m)?;
    let scm = spectrum_bands(&cm, v)?;
    let cm_spec = Spectrum::Bands(scm.clone());
    let cm_minus = spectrum(&cm.extend(-1)?, v)?;
    let children: Vec<(f64, f64)> = assoc.children.iter().map(|&i| scm.bands[i].interval()).collect();
    let a1 = children.iter().all(|&ch| strictly_contained(ch, ic, CONTAIN_TOL));
    let a2 = children.iter().all(|&ch| !weakly_in(ch, &cm_minus));
    let mut prev: Vec<(f64, f64)> = vec![ic; assoc.big_m + 1];
    let (mut b1, mut b2, mut interlace, mut unique_b) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (n_idx, tower) in assoc.towers.iter().enumerate() {
        let smn = spectrum_bands(&cm.extend(n_idx as i64 + 1)?, v)?;
        let cur: Vec<(f64, f64)> = tower.iter().map(|&i| smn.bands[i].interval()).collect();
        b1.push(cur.iter().zip(&prev).all(|(&x, &p)| strictly_contained(x, p, CONTAIN_TOL)));
        b2.push(cur.iter().all(|&x| !weakly_in(x, &cm_spec)));
        let mut chain = Vec::new();
        for (j, &t) in cur.iter().enumerate() {
            chain.push(t);
            if let Some(&ch) = children.get(j) {
                chain.push(ch);
            }
        }
        interlace.push(chain.windows(2).all(|w| left_of(w[0], w[1])));
        unique_b.push(tower_candidates(ic, &smn, &cm_spec).len() == assoc.big_m + 1);
        prev = cur;
    }
    Ok(ForwardReport { m, v, a1, a2, b1, b2, interlace, unique_b })
}

/// The integer index identities linking `I_c`, its children, towers and neighbours.
pub fn index_relation_check(c: &ContFrac, index: usize, m: i64, n: i64, v_ref: f64) -> Result<bool> {
    let a = associated_bands(c, index, m, n, v_ref)?;
    let tower = &a.towers[(n - 1) as usize];
    let ind = index as i64;
    let mut ok = true;
    if a.big_m >= 1 {
        for i in 0..a.big_m {
            let ch = a.children[i] as i64;
            ok &= tower[i] as i64 == n * ch + ind;
            ok &= tower[i + 1] as i64 == n * (ch + 1) + ind;
        }
    } else {
        if let Some(k) = a.k {
            ok &= tower[0] as i64 == n * k as i64 + ind;
        }
        if let Some(j) = a.j {
            ok &= tower[0] as i64 == n * (j as i64 + 1) + ind;
        }
    }
    if a.kind == BandType::B && c.level() >= 1 {
        // ind(I^1_{[c,1]}) = ind(I_c) + ind(J_{[c,0]}) + 1 = ind(I_c) + ind(K_{[c,0]})
        let a1 = associated_bands(c, index, 1, 0, v_ref)?;
        let c0 = c.extend(0)?;
        let s0 = spectrum_bands(&c0, v_ref)?;
        let i = spectrum_bands(c, v_ref)?.bands[index].interval();
        let j0 = s0.bands.iter().rev().find(|b| left_of(b.interval(), i)).map(|b| b.index as i64);
        let k0 = s0.bands.iter().find(|b| left_of(i, b.interval())).map(|b| b.index as i64);
        let child = a1.children[0] as i64;
        if let Some(j0) = j0 {
            ok &= child == ind + j0 + 1;
        }
        if let Some(k0) = k0 {
            ok &= child == ind + k0;
        }
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------
// Trace ladder

/// Which neighbour anchors the ladder energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LadderSide {
    /// `E = R(J_{[c,m]})` inside the first tower band.
    J,
    /// `E = L(K_{[c,m]})` inside the last tower band.
    K,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub side: LadderSide,
    pub energy: f64,
    /// `|t_{[c,m,n]}(E)| - |t_c(E)| - nV` for `n = 1..n_max`.
    pub ladder_residuals: Vec<f64>,
    pub monotone: bool,
    /// `sign(t_{[c,m]} t_{[c,m,n-1]} t_{[c,m,n]})(E)` for `n = 1..n_max`.
    pub sign_products: Vec<i8>,
    /// Energy on the expected side of the Zentrum with matching sign of `t_c`.
    pub zentrum_side: bool,
}

impl LadderReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.ladder_residuals.iter().all(|r| r.abs() <= tol)
            && self.monotone
            && self.sign_products.iter().all(|&s| s == 1)
            && self.zentrum_side
    }
}

fn sgn(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Whether the neighbour edge (`R(J)` or `L(K)`) stays on its side of the
/// Zentrum of `I_c`. No type precondition is imposed.
pub fn zentrum_side_check(c: &ContFrac, index: usize, m: i64, v: f64, side: LadderSide) -> Result<bool> {
    let a = associated_bands(c, index, m, 0, V_REF)?;
    zentrum_side_with(c, &a, v, side).map(|(ok, _)| ok)
}

fn zentrum_side_with(c: &ContFrac, a: &Associated, v: f64, side: LadderSide) -> Result<(bool, f64)> {
    let ic = &spectrum_bands(c, v)?.bands[a.index];
    let scm = spectrum_bands(&c.extend(a.m)?, v)?;
    let z = zentrum(ic, v)?;
    let t = |e: f64| trace_eval(c, e, v);
    match side {
        LadderSide::J => {
            let e = scm.bands[a.j.ok_or(Error::MissingNeighbor("J"))?].right;
            Ok((e < z && sgn(t(e)?) == sgn(t(ic.left)?), e))
        }
        LadderSide::K => {
            let e = scm.bands[a.k.ok_or(Error::MissingNeighbor("K"))?].left;
            Ok((e > z && sgn(t(e)?) == sgn(t(ic.right)?), e))
        }
    }
}

/// Checks `|t_{[c,m,n]}(E)| - |t_c(E)| = nV` and the sign and monotonicity
/// statements at `E = R(J_{[c,m]})` (or the mirrored `L(K_{[c,m]})`) for a type-B band.
pub fn trace_ladder_check(
    c: &ContFrac,
    index: usize,
    m: i64,
    n_max: i64,
    v: f64,
    side: LadderSide,
) -> Result<LadderReport> {
    let a = associated_bands(c, index, m, n_max.max(1), V_REF)?;
    if a.kind != BandType::B {
        return Err(Error::PreconditionFail(format!("band {index} of {c} is not of type B")));
    }
    let (zentrum_side, e) = zentrum_side_with(c, &a, v, side)?;
    let cm = c.extend(m)?;
    let first = spectrum_bands(&cm.extend(1)?, v)?;
    let anchor = match side {
        LadderSide::J => &first.bands[a.towers[0][0]],
        LadderSide::K => &first.bands[*a.towers[0].last().unwrap()],
    };
    if !anchor.contains(e) {
        return Err(Error::PreconditionFail(format!("E = {e} lies outside the first tower band")));
    }
    let tc = trace_eval(c, e, v)?;
    let tcm = trace_eval(&cm, e, v)?;
    let mut prev = tc;
    let mut prev_abs = None::<f64>;
    let mut monotone = true;
    let (mut residuals, mut signs) = (Vec::new(), Vec::new());
    for n in 1..=n_max {
        let t = trace_eval(&cm.extend(n)?, e, v)?;
        residuals.push(t.abs() - tc.abs() - n as f64 * v);
        signs.push(sgn(tcm) * sgn(prev) * sgn(t));
        if let Some(p) = prev_abs {
            monotone &= t.abs() > p;
        }
        prev_abs = Some(t.abs());
        prev = t;
    }
    Ok(LadderReport { side, energy: e, ladder_residuals: residuals, monotone, sign_products: signs, zentrum_side })
}
