//! Acceptance suites: each checks one family of identities at desk scale and
//! reports PASS/FAIL with a few detail lines.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bandscan::{spectrum_bands, Theta, TOUCH_TOL};
use crate::bandtype::{band_types, classify_report, trace_ladder_check, BandType, LadderSide};
use crate::contfrac::{concatenation_holds, denominators, is_rotation, substitution_word, word_period, ContFrac, Phi};
use crate::error::{Error, Result};
use crate::export::g12;
use crate::ids::{alpha_rational, dry_tmp_verify, ids_bruteforce, ids_path_bounded, negative_v_report};
use crate::interlace::{interlacing_check, rank2_decomposition};
use crate::poly::RatPoly;
use crate::spectree::{boundary_band, check_tree, BoundaryPath, SpectralTree, TreeShape};
use crate::tracepoly::{fricke_vogt_poly, fricke_vogt_residual, rational, trace_eval, trace_poly};

pub const GOLDEN: [i64; 40] = [1; 40];
pub const SILVER: [i64; 40] = [2; 40];

/// Fixed seed for the sampled suites.
pub const DEFAULT_SEED: u64 = 0x5717_5bec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Traces,
    Edges,
    Fricke,
    Bands,
    Types,
    Duality,
    Tree,
    Interlace,
    Ids,
    DryTmp,
    Mirror,
    Ladder,
    Words,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Traces,
        Suite::Edges,
        Suite::Fricke,
        Suite::Bands,
        Suite::Types,
        Suite::Duality,
        Suite::Tree,
        Suite::Interlace,
        Suite::Ids,
        Suite::DryTmp,
        Suite::Mirror,
        Suite::Ladder,
        Suite::Words,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Traces => "traces",
            Suite::Edges => "edges",
            Suite::Fricke => "fricke",
            Suite::Bands => "bands",
            Suite::Types => "types",
            Suite::Duality => "duality",
            Suite::Tree => "tree",
            Suite::Interlace => "interlace",
            Suite::Ids => "ids",
            Suite::DryTmp => "dry-tmp",
            Suite::Mirror => "mirror",
            Suite::Ladder => "ladder",
            Suite::Words => "words",
        }
    }

    /// Position in the acceptance list, starting at 1.
    pub fn number(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).unwrap() + 1
    }

    pub fn title(self) -> &'static str {
        match self {
            Suite::Traces => "closed-form trace polynomials",
            Suite::Edges => "closed-form band edges",
            Suite::Fricke => "Fricke-Vogt invariant",
            Suite::Bands => "band count and disjointness",
            Suite::Types => "A/B dichotomy and stability",
            Suite::Duality => "duality [c,m] ~ [c,m-1,1]",
            Suite::Tree => "spectral tree bijection",
            Suite::Interlace => "rank-2 interlacing",
            Suite::Ids => "IDS path formula",
            Suite::DryTmp => "gap labels (dry Ten Martini)",
            Suite::Mirror => "negative coupling mirror",
            Suite::Ladder => "trace ladder",
            Suite::Words => "mechanical and substitution words",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| Error::Input(format!("unknown suite '{s}'")))
    }
}

/// Overrides for the suite defaults. `None` keeps the default.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    /// Replaces the coupling grid by a single value.
    pub v: Option<f64>,
    /// Approximant level.
    pub k: Option<usize>,
    /// Largest gap label.
    pub l: Option<i64>,
    /// Tree depth or path depth.
    pub depth: Option<usize>,
    /// Replaces the suite tolerance.
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params { v: None, k: None, l: None, depth: None, tol: None, seed: DEFAULT_SEED }
    }
}

impl Params {
    fn vs(&self, default: &[f64]) -> Result<Vec<f64>> {
        match self.v {
            Some(0.0) => Err(Error::ZeroCoupling),
            Some(v) if !v.is_finite() => Err(Error::Input(format!("coupling {v} is not finite"))),
            Some(v) => Ok(vec![v]),
            None => Ok(default.to_vec()),
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub details: Vec<String>,
}

impl SuiteReport {
    /// One line: `[n] name PASS|FAIL`.
    pub fn headline(&self) -> String {
        format!(
            "[{:>2}] {:<10} {}  {}",
            self.suite.number(),
            self.suite.name(),
            if self.passed { "PASS" } else { "FAIL" },
            self.suite.title()
        )
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headline())?;
        for d in &self.details {
            writeln!(f, "     {d}")?;
        }
        Ok(())
    }
}

/// Collects checks and detail lines for one suite.
struct Log {
    passed: bool,
    details: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log { passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.details.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, line: String) {
        self.details.push(format!("     {line}"));
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport { suite, passed: self.passed, details: self.details }
    }
}

pub fn run(suite: Suite, p: &Params) -> Result<SuiteReport> {
    let log = match suite {
        Suite::Traces => traces(p),
        Suite::Edges => edges(p),
        Suite::Fricke => fricke(p),
        Suite::Bands => bands(p),
        Suite::Types => types(p),
        Suite::Duality => duality(p),
        Suite::Tree => tree(p),
        Suite::Interlace => interlace(p),
        Suite::Ids => ids(p),
        Suite::DryTmp => dry_tmp(p),
        Suite::Mirror => mirror(p),
        Suite::Ladder => ladder(p),
        Suite::Words => words(p),
    }?;
    Ok(log.finish(suite))
}

pub fn run_all(p: &Params) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run(s, p)).collect()
}

fn cf(d: &[i64]) -> ContFrac {
    ContFrac::new(d).expect("valid digits")
}

fn q_of(c: &ContFrac) -> usize {
    c.q().unwrap_or(0) as usize
}

/// `c = [0, 0, d_1, ..., d_k]` with `k <= k_max` and digits in `1..=d_max`.
fn random_expansion(rng: &mut ChaCha8Rng, k_max: usize, d_max: i64) -> ContFrac {
    let k = rng.gen_range(0..=k_max);
    let mut d = vec![0, 0];
    d.extend((0..k).map(|_| rng.gen_range(1..=d_max)));
    cf(&d)
}

// ---------------------------------------------------------------------------

fn poly(coeffs: Vec<BigRational>) -> RatPoly {
    RatPoly::new(coeffs)
}

fn traces(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let int = |n: i64| rational(n, 1);
    type Closed = fn(&BigRational) -> Vec<BigRational>;
    let cases: [(&[i64], Closed); 9] = [
        (&[0, 0, 1, -1], |_| vec![rational(2, 1)]),
        (&[0], |_| vec![rational(2, 1)]),
        (&[0, 0, 0], |_| vec![rational(2, 1)]),
        (&[0, 0], |_| vec![rational(0, 1), rational(1, 1)]),
        (&[0, 0, -1], |v| vec![v.clone(), rational(1, 1)]),
        (&[0, 0, 1], |v| vec![-v.clone(), rational(1, 1)]),
        (&[0, 0, 2], |v| vec![rational(-2, 1), -v.clone(), rational(1, 1)]),
        (&[0, 0, 1, 2], |v| vec![v * rational(2, 1), v * v - rational(3, 1), v * rational(-2, 1), rational(1, 1)]),
        (&[0, 0, 3], |v| vec![v.clone(), rational(-3, 1), -v.clone(), rational(1, 1)]),
    ];
    let vs: Vec<i64> = match p.v {
        Some(v) if v.fract() == 0.0 && v != 0.0 => vec![v as i64],
        Some(_) => return Err(Error::Input("the traces suite takes an integer --V".into())),
        None => vec![1, 3],
    };
    for (digits, closed) in cases {
        let c = cf(digits);
        let ok = vs.iter().all(|&v| trace_poly(&c, &int(v)).poly == poly(closed(&int(v))));
        let shown: Vec<String> = vs.iter().map(|&v| trace_poly(&c, &int(v)).poly.to_string()).collect();
        log.check(ok, format!("t_{c} at V = {vs:?}: {}", shown.join(" | ")));
    }
    Ok(log)
}

fn edges(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let tol = p.tol(1e-10);
    for v in p.vs(&[0.5, 1.0, 2.0, 5.0])? {
        let r1 = (v * v / 4.0 + 4.0).sqrt();
        let rp = (v * v + 2.0 * v + 9.0).sqrt();
        let rm = (v * v - 2.0 * v + 9.0).sqrt();
        let want2 = [(v / 2.0 - r1, 0.0), (v, v / 2.0 + r1)];
        let want21 = [
            ((v - 1.0) / 2.0 - rp / 2.0, -1.0),
            ((v + 1.0) / 2.0 - rm / 2.0, 1.0),
            ((v - 1.0) / 2.0 + rp / 2.0, (v + 1.0) / 2.0 + rm / 2.0),
        ];
        for (digits, want) in [(&[0i64, 0, 2][..], &want2[..]), (&[0, 0, 2, 1][..], &want21[..])] {
            let set = spectrum_bands(&cf(digits), v)?;
            let got = set.intervals();
            let err = if got.len() == want.len() {
                got.iter().zip(want).map(|(g, w)| (g.0 - w.0).abs().max((g.1 - w.1).abs())).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            log.check(
                err < tol,
                format!("{} at V = {}: {} bands, max edge error {}", cf(digits), g12(v), got.len(), g12(err)),
            );
        }
    }
    Ok(log)
}

fn fricke(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let tol = p.tol(1e-8);
    let mut rng = p.rng();
    let k_max = p.k.unwrap_or(8);
    let (mut worst_rel, mut worst_abs_small) = (0.0f64, 0.0f64);
    let (mut failures, mut overflows, mut n_done) = (0, 0, 0);
    while n_done < 1000 {
        let c = random_expansion(&mut rng, k_max, 3);
        let n = rng.gen_range(1..=3);
        let v = match p.v {
            Some(v) => v,
            None => rng.gen_range(0.0..8.0f64).max(1e-3),
        };
        let e = rng.gen_range(-2.0 - v.abs()..2.0 + v.abs());
        let traces = [trace_eval(&c.extend(n + 1)?, e, v), trace_eval(&c.extend(n)?, e, v), trace_eval(&c, e, v)];
        if traces.iter().any(|t| t.is_err()) {
            overflows += 1;
            continue;
        }
        n_done += 1;
        let r = fricke_vogt_residual(&c, n, e, v)?;
        // Scale of the largest term in the invariant.
        let scale = traces.iter().map(|t| *t.as_ref().unwrap()).fold(1.0f64, |m, t| m.max(t * t).max(t.abs().powi(3)));
        let rel = r.abs() / scale;
        worst_rel = worst_rel.max(rel);
        if scale <= 1e3 {
            worst_abs_small = worst_abs_small.max(r.abs());
        }
        failures += usize::from(rel >= tol);
    }
    log.check(
        failures == 0,
        format!(
            "float path, 1000 samples ({overflows} redrawn after overflow): max |residual| / term scale {}, max |residual| where terms <= 1e3: {}",
            g12(worst_rel),
            g12(worst_abs_small)
        ),
    );
    let mut exact_fail = 0;
    for _ in 0..50 {
        let c = random_expansion(&mut rng, k_max.min(4), 3);
        let n = rng.gen_range(1..=2);
        let v = rational(rng.gen_range(1..=40), rng.gen_range(1..=7));
        exact_fail += usize::from(!fricke_vogt_poly(&c, n, &v)?.is_zero());
    }
    log.check(exact_fail == 0, format!("exact path, 50 samples: {exact_fail} nonzero residual polynomials"));
    Ok(log)
}

fn bands(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let k_max = p.k.unwrap_or(10);
    let tol = p.tol(TOUCH_TOL);
    for (name, alpha) in [("golden", &GOLDEN), ("silver", &SILVER)] {
        for v in p.vs(&[0.3, 1.0, 4.5])? {
            let mut bad = Vec::new();
            let mut min_gap = f64::INFINITY;
            for k in 0..=k_max {
                let c = ContFrac::approximant(alpha, k)?;
                let set = spectrum_bands(&c, v)?;
                let gap = set.bands.windows(2).map(|w| w[1].left - w[0].right).fold(f64::INFINITY, f64::min);
                min_gap = min_gap.min(gap);
                if set.bands.len() != q_of(&c) || !set.is_disjoint(tol) {
                    bad.push(k);
                }
            }
            let q = denominators(alpha, k_max)[k_max + 1];
            log.check(
                bad.is_empty(),
                format!(
                    "{name} k <= {k_max} (q_k up to {q}) at V = {}: smallest gap {}, failing levels {bad:?}",
                    g12(v),
                    g12(min_gap)
                ),
            );
        }
    }
    Ok(log)
}

fn types(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let k_max = p.k.unwrap_or(8);
    let grid = p.vs(&[0.5, 1.0, 2.0, 3.0, 4.5, 8.0])?;
    let q = denominators(&GOLDEN, k_max);
    for k in 0..=k_max {
        let c = ContFrac::approximant(&GOLDEN, k)?;
        let reports = classify_report(&c, &grid)?;
        let untyped = reports.iter().filter(|r| !r.is_consistent()).count();
        let a = reports.iter().filter(|r| r.final_type == Some(BandType::A)).count();
        let b = reports.iter().filter(|r| r.final_type == Some(BandType::B)).count();
        let want = ((q[k + 1] - q[k]) as usize, q[k] as usize);
        log.check(
            untyped == 0 && (a, b) == want,
            format!(
                "golden k = {k}: {} bands, {untyped} untyped or unstable, (A, B) = ({a}, {b}), expected {want:?}",
                reports.len()
            ),
        );
    }
    Ok(log)
}

fn duality(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let tol = p.tol(1e-10);
    let mut rng = p.rng();
    let (mut worst, mut type_fail, mut n) = (0.0f64, 0, 0);
    while n < 20 {
        let c = random_expansion(&mut rng, 4, 3);
        let m = rng.gen_range(2..=4);
        let v = match p.v {
            Some(v) => v,
            None => *[0.5, 1.0, 2.0, 5.0].choose(&mut rng).unwrap(),
        };
        let a = c.extend(m)?;
        let b = c.extend(m - 1)?.extend(1)?;
        if q_of(&a) > 120 {
            continue;
        }
        n += 1;
        let (sa, sb) = (spectrum_bands(&a, v)?, spectrum_bands(&b, v)?);
        let err = if sa.bands.len() == sb.bands.len() {
            sa.intervals()
                .iter()
                .zip(sb.intervals())
                .map(|(x, y)| (x.0 - y.0).abs().max((x.1 - y.1).abs()))
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        worst = worst.max(err);
        let ta = band_types(&a, v)?;
        let tb = band_types(&b, v)?;
        if ta.iter().map(|t| t.swap()).collect::<Vec<_>>() != tb {
            type_fail += 1;
            log.note(format!("types not swapped for {a} vs {b} at V = {}", g12(v)));
        }
    }
    log.check(worst < tol, format!("20 samples: max edge difference {}", g12(worst)));
    log.check(type_fail == 0, format!("20 samples: {type_fail} with types not swapped"));
    Ok(log)
}

fn tree(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let depth = p.depth.unwrap_or(8);
    let t = SpectralTree::build(&GOLDEN, depth)?;
    for v in p.vs(&[1.0, 5.0])? {
        let types =
            (0..=depth).map(|k| band_types(&ContFrac::approximant(&GOLDEN, k)?, v)).collect::<Result<Vec<_>>>()?;
        let r = check_tree(&t, v, &types)?;
        log.check(
            r.holds(),
            format!(
                "golden depth {depth}, V = {}: {} vertices, {} edges ({} failing), {} ordered pairs ({} failing), {} label mismatches",
                g12(v),
                t.vertices.len(),
                r.edges,
                r.edge_failures,
                r.ordered_pairs,
                r.order_failures,
                r.label_failures
            ),
        );
    }
    // Order is not preserved two levels apart: alpha = [1, 2, ...].
    let alpha = [1, 2, 1, 1];
    let t = SpectralTree::build(&alpha, 2)?;
    let (u, w) = (t.level(0)[0], t.level(2)[1]);
    let pu = t.psi(u, 1.0)?.interval();
    let pw = t.psi(w, 1.0)?.interval();
    let inside = pu.0 < pw.0 && pw.1 < pu.1;
    log.check(
        t.precedes(u, w) == Some(true) && inside,
        format!(
            "alpha = [1,2,1,1], V = 1: u = {} precedes w = {} but Psi(w) = [{}, {}] lies inside Psi(u) = [{}, {}]",
            t.path(u),
            t.path(w),
            g12(pw.0),
            g12(pw.1),
            g12(pu.0),
            g12(pu.1)
        ),
    );
    Ok(log)
}

const THETAS: [(Theta, Theta, Theta); 4] = [
    (Theta::Zero, Theta::Zero, Theta::Zero),
    (Theta::Pi, Theta::Pi, Theta::Zero),
    (Theta::Pi, Theta::Zero, Theta::Pi),
    (Theta::Zero, Theta::Pi, Theta::Pi),
];

fn interlace(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let tol = p.tol(1e-10);
    let mut rng = p.rng();
    let (mut worst_res, mut worst_trace, mut min_margin) = (0.0f64, 0.0f64, f64::INFINITY);
    let (mut failures, mut n, mut traced) = (0, 0, 0);
    while n < 200 {
        let c = random_expansion(&mut rng, 4, 3);
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        if q_of(&c.extend(m)?.extend(k)?) > 60 {
            continue;
        }
        n += 1;
        let v = match p.v {
            Some(v) => v,
            None => *[0.5, 1.0, 5.0].choose(&mut rng).unwrap(),
        };
        let th = *THETAS.choose(&mut rng).unwrap();
        let d = rank2_decomposition(&c, m, k, v, th)?;
        let r = interlacing_check(&c, m, k, v, th)?;
        worst_res = worst_res.max(d.residual());
        if d.d1 >= 2 && d.x.len() - d.d1 >= 2 {
            traced += 1;
            worst_trace = worst_trace.max(d.trace().abs());
        }
        min_margin = min_margin.min(r.min_strict_margin);
        if !r.holds() {
            failures += 1;
            log.note(format!("interlacing fails for {c}, m = {m}, n = {k}, V = {}, {th:?}", g12(v)));
        }
    }
    log.check(worst_res < tol, format!("200 samples: max decomposition residual {}", g12(worst_res)));
    log.check(
        worst_trace < tol,
        format!("trace of Y - Z over {traced} samples with both blocks of size >= 2: max {}", g12(worst_trace)),
    );
    log.check(
        failures == 0,
        format!("interlacing: {failures} failures, smallest margin at simple eigenvalues {}", g12(min_margin)),
    );
    Ok(log)
}

/// Random paths from the root down to `level`.
fn random_paths(shape: &TreeShape, rng: &mut ChaCha8Rng, count: usize, level: i64) -> Result<Vec<BoundaryPath>> {
    (0..count).map(|_| shape.extend_path(&BoundaryPath::default(), level, |n| rng.gen_range(0..n))).collect()
}

fn ids(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let depth = p.depth.unwrap_or(14).max(12) as i64;
    let mut rng = p.rng();
    let shape = TreeShape::new(&GOLDEN)?;
    let paths = random_paths(&shape, &mut rng, 10, depth)?;
    let q = denominators(&GOLDEN, depth as usize + 2);
    let tol = p.tol(2.0 / q[11] as f64);
    let n = 4 * q[depth as usize + 1] as usize;
    let alpha = alpha_rational(&GOLDEN);
    for v in p.vs(&[1.0, 5.0])? {
        let mut worst = 0.0f64;
        let mut worst_bound = 0.0f64;
        for path in &paths {
            let e = boundary_band(&shape, path, v, 0.0)?.mid();
            let f = ids_path_bounded(&GOLDEN, path)?;
            worst_bound = worst_bound.max(f.bound);
            worst = worst.max((f.value - ids_bruteforce(alpha, v, e, n)).abs());
        }
        log.check(
            worst <= tol,
            format!(
                "10 golden paths to level {depth}, V = {}, chain {n}: max |path - brute force| {} (tol {}), path truncation bound {}",
                g12(v),
                g12(worst),
                g12(tol),
                g12(worst_bound)
            ),
        );
    }
    Ok(log)
}

fn dry_tmp(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let k = p.k.unwrap_or(10);
    let l_max = p.l.unwrap_or(5);
    let mut sets: Vec<BTreeSet<i64>> = Vec::new();
    for v in p.vs(&[1.0, 5.0])? {
        let r = dry_tmp_verify(&GOLDEN, k, v, l_max)?;
        let worst = r.gaps.iter().map(|g| g.residual).fold(0.0, f64::max);
        let unlabelled = r.gaps.iter().filter(|g| g.l.is_none()).count();
        log.check(
            r.passes(),
            format!(
                "golden k = {k}, V = {}: {} gaps, {unlabelled} unlabelled, max label residual {}, realized {:?}, missing {:?}",
                g12(v),
                r.gaps.len(),
                g12(worst),
                r.realized,
                r.missing
            ),
        );
        sets.push(r.realized);
    }
    if sets.len() > 1 {
        let same = sets.windows(2).all(|w| w[0] == w[1]);
        log.check(same, format!("labels with |l| <= {l_max} agree across couplings"));
    }
    Ok(log)
}

fn mirror(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let k = p.k.unwrap_or(6);
    let mut rng = p.rng();
    let shape = TreeShape::new(&GOLDEN)?;
    let paths = random_paths(&shape, &mut rng, 10, 14)?;
    let q = denominators(&GOLDEN, 16);
    let n = 4 * q[15] as usize;
    for v in p.vs(&[1.0, 3.0])? {
        let v = v.abs();
        let r = negative_v_report(&GOLDEN, k, v, &paths, n)?;
        let qk = q[k + 1] as f64;
        log.check(
            r.band_error < p.tol(1e-10),
            format!("golden k <= {k}, V = {}: sigma(-V) vs -sigma(V) max edge error {}", g12(v), g12(r.band_error)),
        );
        log.check(
            r.ids_error <= 2.0 / qk,
            format!(
                "IDS complement N_(-V)(-E) = 1 - N_V(E) on 10 paths: max error {} (tol {})",
                g12(r.ids_error),
                g12(2.0 / qk)
            ),
        );
    }
    Ok(log)
}

fn ladder(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let k_max = p.k.unwrap_or(6);
    let tol = p.tol(1e-8);
    let vs = p.vs(&[0.5])?;
    let (mut checked, mut skipped, mut failed) = (0, 0, 0);
    let mut worst = 0.0f64;
    for &v in &vs {
        for k in 0..=k_max {
            let c = ContFrac::approximant(&GOLDEN, k)?;
            let t = band_types(&c, v)?;
            for (index, _) in t.iter().enumerate().filter(|(_, t)| **t == BandType::B) {
                for m in 1..=3 {
                    for side in [LadderSide::J, LadderSide::K] {
                        match trace_ladder_check(&c, index, m, 3, v, side) {
                            Ok(r) => {
                                checked += 1;
                                let res = r.ladder_residuals.iter().fold(0.0f64, |a, x| a.max(x.abs()));
                                worst = worst.max(res);
                                if res > tol || !r.monotone {
                                    failed += 1;
                                    log.note(format!(
                                        "{c} band {index}, m = {m}, {side:?}: residual {}, monotone {}",
                                        g12(res),
                                        r.monotone
                                    ));
                                }
                            }
                            Err(Error::PreconditionFail(_)) | Err(Error::MissingNeighbor(_)) => skipped += 1,
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
    }
    log.check(
        failed == 0 && checked > 0,
        format!(
            "golden k <= {k_max}, m, n <= 3, V = {:?}: {checked} instances, {skipped} without the precondition, {failed} failing, max ||t_[c,m,n]| - |t_c| - nV| = {}",
            vs.iter().map(|v| g12(*v)).collect::<Vec<_>>(),
            g12(worst)
        ),
    );
    Ok(log)
}

fn words(p: &Params) -> Result<Log> {
    let mut log = Log::new();
    let k_max = p.k.unwrap_or(10);
    for (name, alpha) in [("golden", &GOLDEN), ("silver", &SILVER)] {
        let mut ones_bad = Vec::new();
        let mut concat_bad = Vec::new();
        let mut subst_bad = Vec::new();
        for k in 0..=k_max {
            let c = ContFrac::approximant(alpha, k)?;
            let w = word_period(&c)?;
            let pnum = match c.phi() {
                Phi::Value(r) => *r.numer() as usize,
                Phi::Sentinel => return Err(Error::DegenerateExpansion),
            };
            if w.ones() != pnum {
                ones_bad.push(k);
            }
            if k >= 2 && !concatenation_holds(alpha, k) {
                concat_bad.push(k);
            }
            if !is_rotation(&substitution_word(alpha, k as i64), &w.bits) {
                subst_bad.push(k);
            }
        }
        log.check(ones_bad.is_empty(), format!("{name} k <= {k_max}: period has p ones (failing {ones_bad:?})"));
        log.check(
            concat_bad.is_empty(),
            format!("{name} k <= {k_max}: concatenation rule on the upper period (failing {concat_bad:?})"),
        );
        log.check(
            subst_bad.is_empty(),
            format!("{name} k <= {k_max}: substitution word is a rotation of the period (failing {subst_bad:?})"),
        );
    }
    Ok(log)
}
