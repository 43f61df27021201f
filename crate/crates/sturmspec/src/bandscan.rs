//! Spectral bands of the periodic approximants `sigma_c(V)`: Floquet
//! matrices, eigenvalue counting, band edges, order relations, the Zentrum,
//! edge phases and admissibility.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::contfrac::{word_of, ContFrac, Phi};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, unit_tridiag_count_below, SymMatrix};
use crate::poly::real_roots;
use crate::tracepoly::{trace_eval, trace_poly};

/// Largest period handled by the dense solver inside [`spectrum_bands`];
/// longer periods use bisection on eigenvalue counts.
pub const DENSE_THRESHOLD: usize = 160;

/// Largest period accepted by the exact path.
pub const EXACT_CAP: usize = 64;

/// Bands closer than this are not considered separated on the float path.
pub const TOUCH_TOL: f64 = 1e-9;

/// Boundary phase of a Floquet matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Theta {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "pi")]
    Pi,
}

impl Theta {
    pub fn cos(self) -> f64 {
        match self {
            Theta::Zero => 1.0,
            Theta::Pi => -1.0,
        }
    }

    /// `0` for `theta = 0`, `1` for `theta = pi`.
    pub fn parity(self) -> i64 {
        match self {
            Theta::Zero => 0,
            Theta::Pi => 1,
        }
    }

    pub fn from_parity(p: i64) -> Theta {
        if p.rem_euclid(2) == 0 {
            Theta::Zero
        } else {
            Theta::Pi
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theta::Zero => "0",
            Theta::Pi => "pi",
        })
    }
}

/// Left or right edge of a band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn bit(self) -> i64 {
        match self {
            Side::L => 0,
            Side::R => 1,
        }
    }
}

/// One closed band of `sigma_c(V)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Band {
    pub left: f64,
    pub right: f64,
    pub index: usize,
    #[serde(skip)]
    pub parent: ContFrac,
    pub q: usize,
    pub theta_left: Theta,
    pub theta_right: Theta,
}

impl Band {
    pub fn interval(&self) -> (f64, f64) {
        (self.left, self.right)
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.left + self.right)
    }

    pub fn contains(&self, e: f64) -> bool {
        self.left <= e && e <= self.right
    }
}

/// The bands of `sigma_c(V)` in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct BandSet {
    pub c: ContFrac,
    pub v: f64,
    pub bands: Vec<Band>,
}

impl BandSet {
    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn intervals(&self) -> Vec<(f64, f64)> {
        self.bands.iter().map(Band::interval).collect()
    }

    /// Whether consecutive bands are separated by more than `tol`.
    pub fn is_disjoint(&self, tol: f64) -> bool {
        self.bands.iter().all(|b| b.left < b.right) && self.bands.windows(2).all(|w| w[1].left - w[0].right > tol)
    }

    pub fn contains(&self, e: f64) -> bool {
        self.bands.iter().any(|b| b.contains(e))
    }
}

/// `sigma_c(V)`: a union of bands, or the whole line for `t_c = 2`.
#[derive(Clone, Debug, PartialEq)]
pub enum Spectrum {
    FullLine,
    Bands(BandSet),
}

impl Spectrum {
    pub fn bands(&self) -> &[Band] {
        match self {
            Spectrum::FullLine => &[],
            Spectrum::Bands(b) => &b.bands,
        }
    }

    pub fn is_full_line(&self) -> bool {
        matches!(self, Spectrum::FullLine)
    }
}

// ---------------------------------------------------------------------------
// Floquet matrices

#[derive(Clone, Debug)]
pub struct FloquetMatrix {
    pub c: ContFrac,
    pub v: f64,
    pub theta: Theta,
    pub copies: usize,
    pub matrix: SymMatrix,
}

/// The potential `V omega(1..q)` of a non-degenerate expansion.
pub fn potential(c: &ContFrac, v: f64) -> Result<Vec<f64>> {
    let r = c.phi().value().ok_or(Error::DegenerateExpansion)?;
    Ok(word_of(r).bits.into_iter().map(|b| v * b as f64).collect())
}

/// Periodic matrix with diagonal `diag`, unit off-diagonals and corner
/// coupling `cos(theta)`.
pub fn periodic_matrix(diag: &[f64], theta: Theta) -> SymMatrix {
    let n = diag.len();
    let mut m = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            diag[i]
        } else if j == i + 1 {
            1.0
        } else {
            0.0
        }
    });
    if n == 1 {
        m.add_to(0, 0, 2.0 * theta.cos());
    } else {
        m.add_to(0, n - 1, theta.cos());
    }
    m
}

pub fn build_floquet(c: &ContFrac, v: f64, theta: Theta, copies: usize) -> Result<FloquetMatrix> {
    assert!(copies >= 1);
    let w = potential(c, v)?;
    let diag: Vec<f64> = w.iter().copied().cycle().take(w.len() * copies).collect();
    Ok(FloquetMatrix { c: c.clone(), v, theta, copies, matrix: periodic_matrix(&diag, theta) })
}

/// Number of eigenvalues `< lambda`.
pub fn counting(lambda: f64, m: &FloquetMatrix) -> Result<usize> {
    Ok(counting_values(lambda, &eigenvalues(&m.matrix)?, 0.0))
}

/// Number of sorted `values` below `lambda - tol`.
pub fn counting_values(lambda: f64, values: &[f64], tol: f64) -> usize {
    values.partition_point(|&x| x < lambda - tol)
}

// ---------------------------------------------------------------------------
// Counting without the dense solver

/// Bisection on `[lo, hi]` to the last representable midpoint; `passed(x)`
/// says whether the root lies below `x`.
fn bisect(mut lo: f64, mut hi: f64, mut passed: impl FnMut(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if passed(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

const RESCALE_LOW: f64 = 1e-150;
const RESCALE_HIGH: f64 = 1e150;

/// Eigenvalue counts of `H_{c,V}(theta)` by a Schur complement against the
/// Dirichlet block, in `O(q)` per energy.
#[derive(Clone, Debug)]
pub struct PeriodicCounter {
    diag: Vec<f64>,
}

impl PeriodicCounter {
    pub fn new(diag: Vec<f64>) -> Self {
        assert!(!diag.is_empty());
        PeriodicCounter { diag }
    }

    pub fn for_expansion(c: &ContFrac, v: f64) -> Result<Self> {
        Ok(Self::new(potential(c, v)?))
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues of the periodic matrix below `e`.
    pub fn count_below(&self, e: f64, theta: Theta) -> usize {
        let (n, p) = self.pivot(e, theta);
        n + usize::from(p < 0.0)
    }

    /// Inertia split against site 0: the number of negative pivots of the
    /// Dirichlet block on sites `1..q`, and the Schur complement at site 0.
    /// The complement is continuous in `e` away from the Dirichlet spectrum.
    fn pivot(&self, e: f64, theta: Theta) -> (usize, f64) {
        let q = self.diag.len();
        let cs = theta.cos();
        let a = self.diag[0] - e;
        if q == 1 {
            return (0, a + 2.0 * cs);
        }
        let inner = &self.diag[1..];
        let n = inner.len();
        if n == 1 {
            let d = inner[0] - e;
            let d = if d == 0.0 { -f64::EPSILON * (inner[0].abs() + e.abs() + 1.0) } else { d };
            return (usize::from(d < 0.0), a - (1.0 + cs) * (1.0 + cs) / d);
        }
        // Leading minors of the Dirichlet block (u) and of its lower part
        // without the first row (w), each scaled by 2^-(exponent).
        let (mut u0, mut u1) = (1.0f64, inner[0] - e);
        let (mut w0, mut w1) = (0.0f64, 1.0f64);
        let (mut ue, mut we) = (0i32, 0i32);
        let mut negatives = 0;
        let mut prev_negative = false;
        for (i, &d) in inner.iter().enumerate() {
            if i > 0 {
                let m = d - e;
                (u0, u1) = (u1, m * u1 - u0);
                (w0, w1) = (w1, m * w1 - w0);
            }
            if u1 == 0.0 {
                u1 = -f64::EPSILON * (d.abs() + e.abs() + 1.0) * u0;
            }
            let neg = u1 < 0.0;
            negatives += usize::from(neg != prev_negative);
            prev_negative = neg;
            if !(RESCALE_LOW..=RESCALE_HIGH).contains(&u1.abs()) {
                let k = u1.abs().log2().floor() as i32;
                let f = (-k as f64).exp2();
                (u0, u1) = (u0 * f, u1 * f);
                ue += k;
            }
            if !(RESCALE_LOW..=RESCALE_HIGH).contains(&w1.abs()) && w1 != 0.0 {
                let k = w1.abs().log2().floor() as i32;
                let f = (-k as f64).exp2();
                (w0, w1) = (w0 * f, w1 * f);
                we += k;
            }
        }
        let g_last = u0 / u1;
        let g_first = w1 / u1 * ((we - ue) as f64).exp2();
        // 2 cs G[0][n-1], where G[0][n-1] = (-1)^(n-1) / det
        let sign = if n.is_multiple_of(2) { -cs } else { cs };
        let corner = sign * 2.0 / u1 * (-ue as f64).exp2();
        (negatives, a - g_first - g_last - corner)
    }

    /// All eigenvalues of `H(theta)`, ascending: isolated by counts, then
    /// refined on the Schur complement.
    pub fn eigenvalues(&self, theta: Theta) -> Vec<f64> {
        let q = self.diag.len();
        let r = self.diag.iter().fold(0.0f64, |m, x| m.max(x.abs())) + 3.0;
        let mut out = vec![f64::NAN; q];
        let mut stack = vec![(-r, r, 0usize, q)];
        while let Some((lo, hi, nlo, nhi)) = stack.pop() {
            if nhi == nlo {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            if nhi - nlo == 1 {
                out[nlo] = self.refine(lo, hi, nlo, theta);
                continue;
            }
            if mid <= lo || mid >= hi {
                out[nlo..nhi].fill(mid);
                continue;
            }
            let nm = self.count_below(mid, theta).clamp(nlo, nhi);
            stack.push((mid, hi, nm, nhi));
            stack.push((lo, mid, nlo, nm));
        }
        out
    }

    /// The only eigenvalue in `[lo, hi)`, which has `j` eigenvalues below it.
    fn refine(&self, mut lo: f64, mut hi: f64, j: usize, theta: Theta) -> f64 {
        let (mut dlo, mut plo) = self.pivot(lo, theta);
        let (mut dhi, mut phi) = self.pivot(hi, theta);
        let mut last_moved_hi = None;
        let mut slow = false;
        for _ in 0..400 {
            let width = hi - lo;
            if width <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) {
                break;
            }
            // Illinois steps while no Dirichlet pole separates the ends.
            let smooth = dlo == dhi && plo.is_finite() && phi.is_finite() && plo != phi;
            let mid = match (smooth, slow, last_moved_hi) {
                (true, false, _) => lo + plo / (plo - phi) * width,
                // Step just past the estimated root to close the far end.
                (true, true, Some(moved_hi)) => {
                    let slope = (phi - plo) / width;
                    let near = if moved_hi { phi } else { plo };
                    let step = (2.0 * (near / slope).abs()).max(f64::EPSILON * hi.abs().max(1.0));
                    if moved_hi {
                        hi - step
                    } else {
                        lo + step
                    }
                }
                _ => 0.5 * (lo + hi),
            };
            let mid = if mid > lo && mid < hi { mid } else { 0.5 * (lo + hi) };
            if mid <= lo || mid >= hi {
                break;
            }
            let (dm, pm) = self.pivot(mid, theta);
            let moved_hi = dm + usize::from(pm < 0.0) > j;
            if moved_hi {
                hi = mid;
                (dhi, phi) = (dm, pm);
                if last_moved_hi == Some(true) {
                    plo *= 0.5;
                }
            } else {
                lo = mid;
                (dlo, plo) = (dm, pm);
                if last_moved_hi == Some(false) {
                    phi *= 0.5;
                }
            }
            last_moved_hi = Some(moved_hi);
            slow = hi - lo > 0.5 * width;
        }
        0.5 * (lo + hi)
    }

    /// Dirichlet count used for the open-chain density of states.
    pub fn dirichlet_count_below(&self, e: f64) -> usize {
        unit_tridiag_count_below(&self.diag, e)
    }

    /// The `j`-th eigenvalue (0-based, ascending) of `H(theta)` by bisection.
    pub fn eigenvalue(&self, j: usize, theta: Theta) -> f64 {
        let r = self.diag.iter().fold(0.0f64, |m, x| m.max(x.abs())) + 3.0;
        bisect(-r, r, |mid| self.count_below(mid, theta) > j)
    }
}

// ---------------------------------------------------------------------------
// Band edges

/// Phase of the requested edge of band `index` among `q` bands.
pub fn edge_theta_of(index: usize, q: usize, side: Side) -> Theta {
    Theta::from_parity(index as i64 - q as i64 + side.bit())
}

pub fn edge_theta(band: &Band, side: Side) -> Theta {
    match side {
        Side::L => band.theta_left,
        Side::R => band.theta_right,
    }
}

/// Which algorithm computes the band edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Dense eigenvalues of `H(0)` and `H(pi)` up to [`DENSE_THRESHOLD`], counting beyond.
    Auto,
    Dense,
    Counting,
    Exact,
}

fn check_coupling(v: f64) -> Result<()> {
    if v == 0.0 {
        Err(Error::ZeroCoupling)
    } else if !v.is_finite() {
        Err(Error::Input(format!("coupling {v} is not finite")))
    } else {
        Ok(())
    }
}

fn bands_from_edges(c: &ContFrac, v: f64, q: usize, edge: impl Fn(usize, Theta) -> f64) -> BandSet {
    let bands = (0..q)
        .map(|i| {
            let tl = edge_theta_of(i, q, Side::L);
            let tr = edge_theta_of(i, q, Side::R);
            Band {
                left: edge(i, tl),
                right: edge(i, tr),
                index: i,
                parent: c.clone(),
                q,
                theta_left: tl,
                theta_right: tr,
            }
        })
        .collect();
    BandSet { c: c.clone(), v, bands }
}

/// The `q` bands of `sigma_c(V)`.
pub fn spectrum_bands(c: &ContFrac, v: f64) -> Result<BandSet> {
    spectrum_bands_with(c, v, Method::Auto)
}

pub fn spectrum_bands_with(c: &ContFrac, v: f64, method: Method) -> Result<BandSet> {
    check_coupling(v)?;
    let r = match c.phi() {
        Phi::Sentinel => return Err(Error::DegenerateExpansion),
        Phi::Value(r) => r,
    };
    let q = *r.denom() as usize;
    match method {
        Method::Exact => spectrum_bands_exact(c, &crate::tracepoly::rational_from_f64(v)),
        Method::Counting => {
            let pc = PeriodicCounter::for_expansion(c, v)?;
            let (f0, fp) = (pc.eigenvalues(Theta::Zero), pc.eigenvalues(Theta::Pi));
            Ok(bands_from_edges(c, v, q, |j, th| match th {
                Theta::Zero => f0[j],
                Theta::Pi => fp[j],
            }))
        }
        Method::Dense | Method::Auto if q <= DENSE_THRESHOLD || method == Method::Dense => {
            let f0 = eigenvalues(&build_floquet(c, v, Theta::Zero, 1)?.matrix)?;
            let fp = eigenvalues(&build_floquet(c, v, Theta::Pi, 1)?.matrix)?;
            let set = bands_from_edges(c, v, q, |j, th| match th {
                Theta::Zero => f0[j],
                Theta::Pi => fp[j],
            });
            if set.is_disjoint(0.0) || method == Method::Dense {
                Ok(set)
            } else if q <= EXACT_CAP {
                spectrum_bands_with(c, v, Method::Exact)
            } else {
                spectrum_bands_with(c, v, Method::Counting)
            }
        }
        _ => spectrum_bands_with(c, v, Method::Counting),
    }
}

/// Band edges as roots of `t_c = 2` and `t_c = -2`, isolated by Sturm chains.
/// Periods above [`EXACT_CAP`] are refused.
pub fn spectrum_bands_exact(c: &ContFrac, v: &BigRational) -> Result<BandSet> {
    let vf = v.to_f64().unwrap_or(f64::NAN);
    if v.is_zero() {
        return Err(Error::ZeroCoupling);
    }
    let q = c.q().ok_or(Error::DegenerateExpansion)? as usize;
    if q > EXACT_CAP {
        return Err(Error::SizeCap { size: q, cap: EXACT_CAP });
    }
    let t = trace_poly(c, v);
    let bound = v.abs().ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4) + 3;
    let two = BigRational::from_integer(2.into());
    let mut edges: Vec<(f64, Theta)> = Vec::with_capacity(2 * q);
    for (shift, theta) in [(&two, Theta::Zero), (&-two.clone(), Theta::Pi)] {
        let p = t.poly.sub(&crate::poly::RatPoly::constant(shift.clone())).to_int_primitive();
        for (a, b) in real_roots(&p, -bound, bound, 60) {
            edges.push((0.5 * (a.to_f64() + b.to_f64()), theta));
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0));
    if edges.len() != 2 * q {
        return Err(Error::PreconditionFail(format!("found {} distinct band edges for q = {q}", edges.len())));
    }
    let bands = edges
        .chunks(2)
        .enumerate()
        .map(|(i, e)| Band {
            left: e[0].0,
            right: e[1].0,
            index: i,
            parent: c.clone(),
            q,
            theta_left: e[0].1,
            theta_right: e[1].1,
        })
        .collect();
    Ok(BandSet { c: c.clone(), v: vf, bands })
}

/// A single band of `sigma_c(V)` by counting, for any period length.
pub fn single_band(c: &ContFrac, v: f64, index: usize) -> Result<Band> {
    check_coupling(v)?;
    let q = c.q().ok_or(Error::DegenerateExpansion)? as usize;
    if index >= q {
        return Err(Error::Input(format!("band index {index} out of range for q = {q}")));
    }
    let pc = PeriodicCounter::for_expansion(c, v)?;
    let tl = edge_theta_of(index, q, Side::L);
    let tr = edge_theta_of(index, q, Side::R);
    Ok(Band {
        left: pc.eigenvalue(index, tl),
        right: pc.eigenvalue(index, tr),
        index,
        parent: c.clone(),
        q,
        theta_left: tl,
        theta_right: tr,
    })
}

/// `sigma_c(V)` including the degenerate expansions: the whole line when
/// `t_c = 2` identically, and `[-2-V, 2-V]` for `[0,0,-1]`.
pub fn spectrum(c: &ContFrac, v: f64) -> Result<Spectrum> {
    check_coupling(v)?;
    if c.phi().is_sentinel() {
        if c.digits() == [0, 0, -1] {
            let band = Band {
                left: -2.0 - v,
                right: 2.0 - v,
                index: 0,
                parent: c.clone(),
                q: 1,
                theta_left: Theta::Pi,
                theta_right: Theta::Zero,
            };
            return Ok(Spectrum::Bands(BandSet { c: c.clone(), v, bands: vec![band] }));
        }
        return Ok(Spectrum::FullLine);
    }
    spectrum_bands(c, v).map(Spectrum::Bands)
}

// ---------------------------------------------------------------------------
// Relations

/// `I` strictly inside `J`: `L(J) < L(I) < R(I) < R(J)`, margins above `tol`.
pub fn strictly_contained(i: (f64, f64), j: (f64, f64), tol: f64) -> bool {
    j.0 < i.0 - tol && i.0 < i.1 && i.1 < j.1 - tol
}

/// `I` inside `J` allowing shared endpoints within `tol`.
pub fn contained(i: (f64, f64), j: (f64, f64), tol: f64) -> bool {
    j.0 <= i.0 + tol && i.1 <= j.1 + tol
}

/// `L(I) < L(J)` and `R(I) < R(J)`.
pub fn left_of(i: (f64, f64), j: (f64, f64)) -> bool {
    i.0 < j.0 && i.1 < j.1
}

/// `R(I) < L(J)`.
pub fn strictly_left_of(i: (f64, f64), j: (f64, f64)) -> bool {
    i.1 < j.0
}

/// The strongest relation of `I` to `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BandRelation {
    StrictSubset,
    Subset,
    StrictlyLeftOf,
    LeftOf,
    Other,
}

pub fn band_relation(i: (f64, f64), j: (f64, f64)) -> BandRelation {
    if strictly_contained(i, j, 0.0) {
        BandRelation::StrictSubset
    } else if contained(i, j, 0.0) {
        BandRelation::Subset
    } else if strictly_left_of(i, j) {
        BandRelation::StrictlyLeftOf
    } else if left_of(i, j) {
        BandRelation::LeftOf
    } else {
        BandRelation::Other
    }
}

// ---------------------------------------------------------------------------
// Zentrum, admissibility, Hausdorff distance

/// The zero of `t_c` inside a band, by bisection.
pub fn zentrum(band: &Band, v: f64) -> Result<f64> {
    let t = |e: f64| trace_eval(&band.parent, e, v);
    let (mut lo, mut hi) = (band.left, band.right);
    let tlo = t(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let tm = t(mid)?;
        if tm == 0.0 {
            return Ok(mid);
        }
        if (tm > 0.0) == (tlo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Parity criterion for admissible edge triples.
pub fn admissible(ind: (i64, i64, i64), side: (Side, Side, Side), n: i64) -> bool {
    let lhs = ind.0 + n * ind.1 + ind.2;
    let rhs = side.0.bit() + n * side.1.bit() + side.2.bit();
    (lhs - rhs).rem_euclid(2) == 0
}

/// `theta_c + theta_{[c,m]} + theta_{[c,m,n]} in {0, 2 pi}`.
pub fn theta_admissible(t: (Theta, Theta, Theta)) -> bool {
    (t.0.parity() + t.1.parity() + t.2.parity()) % 2 == 0
}

fn dist_to_set(x: f64, set: &[(f64, f64)]) -> f64 {
    set.iter()
        .map(|&(a, b)| {
            if x < a {
                a - x
            } else if x > b {
                x - b
            } else {
                0.0
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn directed_hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let mut cands: Vec<f64> = a.iter().flat_map(|&(l, r)| [l, r]).collect();
    for w in b.windows(2) {
        let m = 0.5 * (w[0].1 + w[1].0);
        for &(l, r) in a {
            cands.push(m.clamp(l, r));
        }
    }
    cands.into_iter().map(|x| dist_to_set(x, b)).fold(0.0, f64::max)
}

/// Hausdorff distance of two finite unions of sorted closed intervals.
pub fn hausdorff_distance(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracepoly::rational;

    fn cf(d: &[i64]) -> ContFrac {
        ContFrac::new(d).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn base_bands() {
        let s = spectrum_bands(&cf(&[0, 0]), 1.3).unwrap();
        assert_eq!(s.intervals(), vec![(-2.0, 2.0)]);
        assert_eq!((s.bands[0].theta_left, s.bands[0].theta_right), (Theta::Pi, Theta::Zero));
        let s = spectrum_bands(&cf(&[0, 0, 1]), 1.0).unwrap();
        assert!(close(s.bands[0].left, -1.0, 1e-14) && close(s.bands[0].right, 3.0, 1e-14));
    }

    #[test]
    fn two_bands() {
        let s = spectrum_bands(&cf(&[0, 0, 2]), 1.0).unwrap();
        let r = 4.25f64.sqrt();
        let want = [(0.5 - r, 0.0), (1.0, 0.5 + r)];
        for (b, w) in s.bands.iter().zip(want) {
            assert!(close(b.left, w.0, 1e-12) && close(b.right, w.1, 1e-12), "{b:?}");
        }
    }

    #[test]
    fn three_bands() {
        let s = spectrum_bands(&cf(&[0, 0, 3]), 1.0).unwrap();
        let mut got: Vec<f64> = s.bands.iter().flat_map(|b| [b.left, b.right]).collect();
        got.sort_by(f64::total_cmp);
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        let want = [-s3, -1.0, 1.0 - s2, 1.0, s3, 1.0 + s2];
        for (g, w) in got.iter().zip(want) {
            assert!(close(*g, w, 1e-12), "{got:?}");
        }
    }

    #[test]
    fn methods_agree() {
        let c = ContFrac::from_alpha(&[1, 2, 1, 1]).unwrap();
        let d = spectrum_bands_with(&c, 0.7, Method::Dense).unwrap();
        let n = spectrum_bands_with(&c, 0.7, Method::Counting).unwrap();
        let x = spectrum_bands_exact(&c, &rational(7, 10)).unwrap();
        for ((a, b), e) in d.bands.iter().zip(&n.bands).zip(&x.bands) {
            assert!(close(a.left, b.left, 1e-10) && close(a.right, b.right, 1e-10));
            assert!(close(a.left, e.left, 1e-10) && close(a.right, e.right, 1e-10));
            assert_eq!((a.theta_left, a.theta_right), (e.theta_left, e.theta_right));
        }
    }

    #[test]
    fn errors_and_degenerate() {
        assert_eq!(spectrum_bands(&cf(&[0, 0, 1]), 0.0), Err(Error::ZeroCoupling));
        assert_eq!(spectrum_bands(&cf(&[0, 0, 1, -1]), 1.0), Err(Error::DegenerateExpansion));
        assert!(spectrum(&cf(&[0]), 1.0).unwrap().is_full_line());
        let s = spectrum(&cf(&[0, 0, -1]), 1.5).unwrap();
        assert_eq!(s.bands()[0].interval(), (-3.5, 0.5));
    }

    #[test]
    fn floquet_examples() {
        let m = build_floquet(&cf(&[0, 0]), 1.0, Theta::Zero, 1).unwrap();
        assert_eq!(m.matrix.rows(), vec![vec![2.0]]);
        let m = build_floquet(&cf(&[0, 0, 2]), 1.0, Theta::Pi, 1).unwrap();
        assert_eq!(m.matrix.rows(), vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        assert_eq!(counting(2.0, &build_floquet(&cf(&[0, 0]), 1.0, Theta::Zero, 1).unwrap()).unwrap(), 0);
    }

    #[test]
    fn relations() {
        let s3 = 3f64.sqrt();
        assert_eq!(band_relation((1.0 - s3, 2f64.sqrt()), (-1.0, 3.0)), BandRelation::StrictSubset);
        assert_eq!(band_relation((-2.0, 2.0), (-1.0, 3.0)), BandRelation::LeftOf);
        assert_eq!(band_relation((0.0, 1.0), (2.0, 3.0)), BandRelation::StrictlyLeftOf);
    }

    #[test]
    fn zentrum_values() {
        let s = spectrum_bands(&cf(&[0, 0]), 1.0).unwrap();
        assert!(zentrum(&s.bands[0], 1.0).unwrap().abs() < 1e-14);
        let s = spectrum_bands(&cf(&[0, 0, 2]), 1.0).unwrap();
        assert!(close(zentrum(&s.bands[0], 1.0).unwrap(), -1.0, 1e-12));
        assert!(close(zentrum(&s.bands[1], 1.0).unwrap(), 2.0, 1e-12));
    }

    #[test]
    fn admissibility() {
        assert!(admissible((0, 0, 1), (Side::L, Side::R, Side::L), 1));
        assert!(!admissible((0, 0, 0), (Side::L, Side::L, Side::R), 2));
        assert!(theta_admissible((Theta::Zero, Theta::Pi, Theta::Pi)));
        assert!(!theta_admissible((Theta::Zero, Theta::Zero, Theta::Pi)));
    }

    #[test]
    fn hausdorff() {
        assert_eq!(hausdorff_distance(&[(-1.0, 3.0)], &[(0.0, 4.0)]), 1.0);
        assert_eq!(hausdorff_distance(&[(0.0, 1.0), (2.0, 3.0)], &[(0.0, 1.0), (2.0, 3.0)]), 0.0);
        assert_eq!(hausdorff_distance(&[(0.0, 3.0)], &[(0.0, 1.0), (2.0, 3.0)]), 0.5);
    }
}
