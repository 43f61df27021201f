//! The spectral tree: an ordered, A/B-labelled rooted tree whose vertices
//! are in bijection with the bands of the periodic approximants, and whose
//! infinite paths address points of the limiting spectrum.
//!
//! Vertices are addressed by [`BoundaryPath`]s (child indices from the
//! root). A vertex at level `k` with label `A` has `M = c_{k+1} - 1`, with
//! label `B` it has `M = c_{k+1}`; its children are ordered
//! `w^1 < u^1 < w^2 < ... < u^M < w^{M+1}` where the `u^i` are `A` vertices at
//! level `k + 1` and the `w^i` are `B` vertices at level `k + 2`. The root
//! sits at level `-1` with children `u^0` (level 0) and `w^0` (level 1).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::Serialize;

use crate::bandscan::{left_of, single_band, spectrum_bands, Band, DENSE_THRESHOLD};
use crate::bandtype::BandType;
use crate::contfrac::ContFrac;
use crate::error::{Error, Result};

/// Default level cap for lazily grown paths.
pub const DEPTH_CAP: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    #[serde(rename = "root")]
    Root,
    A,
    B,
}

impl Label {
    pub fn band_type(self) -> Option<BandType> {
        match self {
            Label::Root => None,
            Label::A => Some(BandType::A),
            Label::B => Some(BandType::B),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Root => "root",
            Label::A => "A",
            Label::B => "B",
        })
    }
}

/// Child indices from the root, 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BoundaryPath(pub Vec<usize>);

impl BoundaryPath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, n: usize) -> BoundaryPath {
        BoundaryPath(self.0[..n].to_vec())
    }

    pub fn child(&self, i: usize) -> BoundaryPath {
        let mut p = self.0.clone();
        p.push(i);
        BoundaryPath(p)
    }
}

impl fmt::Display for BoundaryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for BoundaryPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(BoundaryPath(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad path entry {t:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(BoundaryPath)
    }
}

/// Label, level and same-level rank of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexInfo {
    pub label: Label,
    pub level: i64,
    pub rank: u64,
}

/// `(label, level, target level, wanted label)`.
type MemoKey = (Label, i64, i64, Option<Label>);

/// The branching rule of the tree for one `alpha`, with memoised
/// per-level vertex counts. Queries may run concurrently.
#[derive(Debug)]
pub struct TreeShape {
    alpha: Vec<i64>,
    memo: Mutex<HashMap<MemoKey, u64>>,
}

impl TreeShape {
    pub fn new(alpha_digits: &[i64]) -> Result<Self> {
        if let Some(d) = alpha_digits.iter().find(|&&d| d < 1) {
            return Err(Error::MalformedDigits(format!("digit {d} < 1")));
        }
        Ok(TreeShape { alpha: alpha_digits.to_vec(), memo: Mutex::new(HashMap::new()) })
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    /// Deepest level whose vertices all have known children.
    pub fn max_level(&self) -> usize {
        self.alpha.len()
    }

    /// Ordered children of a vertex with the given label and level.
    pub fn children(&self, label: Label, level: i64) -> Result<Vec<(Label, i64)>> {
        if label == Label::Root {
            return Ok(vec![(Label::A, 0), (Label::B, 1)]);
        }
        let c = *self
            .alpha
            .get(level as usize)
            .ok_or(Error::DepthExceeded { level: level as usize + 1, depth: self.alpha.len() })?;
        let m = if label == Label::A { c - 1 } else { c } as usize;
        Ok((0..=2 * m).map(|i| if i % 2 == 0 { (Label::B, level + 2) } else { (Label::A, level + 1) }).collect())
    }

    /// Number of level-`target` vertices in the subtree of a `(label, level)` vertex.
    pub fn subtree_count(&self, label: Label, level: i64, target: i64) -> Result<u64> {
        if level == target {
            return Ok(1);
        }
        if level > target {
            return Ok(0);
        }
        self.count_memo(label, level, target, None)
    }

    fn count_memo(&self, label: Label, level: i64, target: i64, want: Option<Label>) -> Result<u64> {
        if level == target {
            return Ok(u64::from(want.is_none_or(|w| w == label)));
        }
        if level > target {
            return Ok(0);
        }
        if let Some(&n) = self.memo.lock().unwrap().get(&(label, level, target, want)) {
            return Ok(n);
        }
        let mut n = 0u64;
        for (l, k) in self.children(label, level)? {
            n = n.saturating_add(self.count_memo(l, k, target, want)?);
        }
        self.memo.lock().unwrap().insert((label, level, target, want), n);
        Ok(n)
    }

    /// `(A, B)` vertex counts at a level.
    pub fn level_counts(&self, level: i64) -> Result<(u64, u64)> {
        if level < 0 {
            return Ok((0, 0));
        }
        let a = self.count_memo(Label::Root, -1, level, Some(Label::A))?;
        let b = self.count_memo(Label::Root, -1, level, Some(Label::B))?;
        Ok((a, b))
    }

    /// The `(label, level)` of every vertex along a path, root first.
    pub fn walk(&self, path: &BoundaryPath) -> Result<Vec<(Label, i64)>> {
        let mut out = vec![(Label::Root, -1)];
        for &i in &path.0 {
            let (l, k) = *out.last().unwrap();
            let ch = self.children(l, k)?;
            let next = *ch
                .get(i)
                .ok_or_else(|| Error::Input(format!("child index {i} out of range (vertex has {})", ch.len())))?;
            out.push(next);
        }
        Ok(out)
    }

    /// Label, level and rank of the vertex addressed by `path`.
    pub fn vertex(&self, path: &BoundaryPath) -> Result<VertexInfo> {
        let walk = self.walk(path)?;
        let (label, level) = *walk.last().unwrap();
        let mut rank = 0u64;
        for (s, &i) in path.0.iter().enumerate() {
            let (l, k) = walk[s];
            for (cl, ck) in self.children(l, k)?.into_iter().take(i) {
                rank += self.subtree_count(cl, ck, level)?;
            }
        }
        Ok(VertexInfo { label, level, rank })
    }

    /// Extends `path` by `choose(number_of_children)` until its last vertex
    /// reaches `level` (B children may overshoot by one).
    pub fn extend_path(
        &self,
        path: &BoundaryPath,
        level: i64,
        mut choose: impl FnMut(usize) -> usize,
    ) -> Result<BoundaryPath> {
        let mut p = path.clone();
        let (mut l, mut k) = *self.walk(path)?.last().unwrap();
        while k < level {
            let ch = self.children(l, k)?;
            let i = choose(ch.len()).min(ch.len() - 1);
            p.0.push(i);
            (l, k) = ch[i];
        }
        Ok(p)
    }

    pub fn leftmost_path(&self, level: i64) -> Result<BoundaryPath> {
        self.extend_path(&BoundaryPath::default(), level, |_| 0)
    }

    pub fn rightmost_path(&self, level: i64) -> Result<BoundaryPath> {
        self.extend_path(&BoundaryPath::default(), level, |n| n - 1)
    }
}

/// The image of a vertex under the band bijection.
#[derive(Clone, Debug, PartialEq)]
pub enum Image {
    Line,
    Band(Band),
}

impl Image {
    pub fn interval(&self) -> (f64, f64) {
        match self {
            Image::Line => (f64::NEG_INFINITY, f64::INFINITY),
            Image::Band(b) => b.interval(),
        }
    }

    pub fn band(&self) -> Option<&Band> {
        match self {
            Image::Line => None,
            Image::Band(b) => Some(b),
        }
    }
}

/// The band of `sigma` at `level` with the given rank.
pub fn level_band(alpha_digits: &[i64], level: i64, rank: u64, v: f64) -> Result<Band> {
    let c = ContFrac::approximant(alpha_digits, level as usize)
        .map_err(|_| Error::DepthExceeded { level: level as usize, depth: alpha_digits.len() })?;
    let q = c.q().ok_or(Error::DegenerateExpansion)? as usize;
    if q <= DENSE_THRESHOLD {
        spectrum_bands(&c, v)?
            .bands
            .into_iter()
            .nth(rank as usize)
            .ok_or(Error::Input(format!("rank {rank} out of range at level {level}")))
    } else {
        single_band(&c, v, rank as usize)
    }
}

/// `Psi` of the vertex addressed by `path`.
pub fn psi_path(shape: &TreeShape, path: &BoundaryPath, v: f64) -> Result<Image> {
    let info = shape.vertex(path)?;
    if info.label == Label::Root {
        return Ok(Image::Line);
    }
    level_band(&shape.alpha, info.level, info.rank, v).map(Image::Band)
}

/// Orders two paths by their first divergence; a prefix compares equal.
pub fn compare_paths(a: &BoundaryPath, b: &BoundaryPath) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Nested bands along `path` until the width drops below `tol`; the
/// midpoint is returned, or the last interval when the path runs out.
pub fn boundary_energy(shape: &TreeShape, path: &BoundaryPath, v: f64, tol: f64) -> Result<f64> {
    boundary_band(shape, path, v, tol).and_then(|b| {
        if b.width() < tol {
            Ok(b.mid())
        } else {
            Err(Error::DepthExhausted { left: b.left, right: b.right })
        }
    })
}

/// The first band along `path` narrower than `tol`, or the deepest one.
pub fn boundary_band(shape: &TreeShape, path: &BoundaryPath, v: f64, tol: f64) -> Result<Band> {
    if path.is_empty() {
        return Err(Error::Input("empty path addresses the root".into()));
    }
    let mut last = None;
    for n in 1..=path.len() {
        let info = shape.vertex(&path.prefix(n))?;
        let band = level_band(&shape.alpha, info.level, info.rank, v)?;
        if band.width() < tol {
            return Ok(band);
        }
        last = Some(band);
    }
    Ok(last.unwrap())
}

/// `|E(V1) - E(V2)| <= |V1 - V2| + 2 tol` along `path`.
pub fn lipschitz_check(shape: &TreeShape, path: &BoundaryPath, v1: f64, v2: f64, tol: f64) -> Result<bool> {
    let e1 = boundary_energy(shape, path, v1, tol)?;
    let e2 = boundary_energy(shape, path, v2, tol)?;
    Ok((e1 - e2).abs() <= (v1 - v2).abs() + 2.0 * tol)
}

/// One refinement step of the separation argument for two paths.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationStep {
    pub m: usize,
    /// Deepest band of the left system.
    pub left: (f64, f64),
    /// Deepest band of the right system.
    pub right: (f64, f64),
    pub intersect: bool,
    /// `sum_{j=1}^{m} c_{k+2j}` with `k` the level of the first right band.
    pub digit_sum: i64,
    /// `sum_{j=1}^{2m} c_{k+j}`.
    pub digit_sum_fine: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub v: f64,
    /// Level of the last common vertex, `None` for equal paths.
    pub divergence_level: Option<i64>,
    pub steps: Vec<SeparationStep>,
}

impl InjectivityReport {
    /// First `m` at which the two band systems are disjoint.
    pub fn separated_at(&self) -> Option<usize> {
        self.steps.iter().find(|s| !s.intersect).map(|s| s.m)
    }

    /// Every intersecting step satisfies `sum c_{k+2j} < 2 / V`.
    pub fn holds(&self) -> bool {
        let bound = 2.0 / self.v.abs();
        self.steps.iter().all(|s| !s.intersect || (s.digit_sum as f64) < bound)
    }

    /// The sharper form `sum_{j=1}^{2m} c_{k+j} < 2 / V`.
    pub fn holds_fine(&self) -> bool {
        let bound = 2.0 / self.v.abs();
        self.steps.iter().all(|s| !s.intersect || (s.digit_sum_fine as f64) < bound)
    }
}

/// Builds the neighbouring paths between `g1` and `g2` (rightmost children
/// below the left branch, leftmost below the right one) and records for
/// `m = 1..=m_max` whether their band systems still intersect.
pub fn injectivity_bound_check(
    shape: &TreeShape,
    g1: &BoundaryPath,
    g2: &BoundaryPath,
    v: f64,
    m_max: usize,
) -> Result<InjectivityReport> {
    let (a, b) = match compare_paths(g1, g2) {
        Ordering::Equal => return Ok(InjectivityReport { v, divergence_level: None, steps: Vec::new() }),
        Ordering::Less => (g1, g2),
        Ordering::Greater => (g2, g1),
    };
    let k0 = a.0.iter().zip(&b.0).take_while(|(x, y)| x == y).count();
    let common = a.prefix(k0);
    let (_, common_level) = *shape.walk(&common)?.last().unwrap();
    let mut left = common.child(a.0[k0]);
    let mut right = common.child(a.0[k0] + 1);
    // left system: u^L_{k0+1+j}; right system: w^R_{k0+1+j}
    let mut right_levels = Vec::new();
    let mut left_bands = Vec::new();
    let mut right_bands = Vec::new();
    for _ in 0..=m_max + 1 {
        let n = shape.children_of(&left)?;
        left = left.child(n - 1);
        right = right.child(0);
        left_bands.push(psi_path(shape, &left, v)?.interval());
        let info = shape.vertex(&right)?;
        right_levels.push(info.level);
        right_bands.push(level_band(&shape.alpha, info.level, info.rank, v)?.interval());
    }
    // right_bands[j - 1] = Psi(w^R_{k0+1+j}); I_1 is right_bands[0]
    let k = right_levels[0];
    let digit = |i: i64| shape.alpha.get(i as usize - 1).copied().unwrap_or(0);
    let mut steps = Vec::new();
    for m in 1..=m_max {
        let l = left_bands[m - 1];
        let r = right_bands[m];
        let digit_sum = (1..=m as i64).map(|j| digit(k + 2 * j)).sum();
        let digit_sum_fine = (1..=2 * m as i64).map(|j| digit(k + j)).sum();
        steps.push(SeparationStep {
            m,
            left: l,
            right: r,
            intersect: l.0 <= r.1 && r.0 <= l.1,
            digit_sum,
            digit_sum_fine,
        });
    }
    Ok(InjectivityReport { v, divergence_level: Some(common_level), steps })
}

impl TreeShape {
    fn children_of(&self, path: &BoundaryPath) -> Result<usize> {
        let (l, k) = *self.walk(path)?.last().unwrap();
        Ok(self.children(l, k)?.len())
    }
}

// ---------------------------------------------------------------------------
// Materialised trees

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub level: i64,
    pub label: Label,
    pub parent: Option<usize>,
    /// Index among the parent's children.
    pub order: usize,
    #[serde(skip)]
    pub children: Vec<usize>,
    /// Position among the vertices of the same level, left to right.
    #[serde(skip)]
    pub rank: u64,
}

/// The tree through a fixed level, vertices in depth-first pre-order.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralTree {
    pub alpha: Vec<i64>,
    pub depth: usize,
    pub vertices: Vec<Vertex>,
}

impl SpectralTree {
    pub fn build(alpha_digits: &[i64], depth: usize) -> Result<Self> {
        let shape = TreeShape::new(alpha_digits)?;
        if alpha_digits.len() < depth {
            return Err(Error::Input(format!("depth {depth} needs {depth} digits, got {}", alpha_digits.len())));
        }
        let mut vertices = vec![Vertex {
            id: 0,
            level: -1,
            label: Label::Root,
            parent: None,
            order: 0,
            children: Vec::new(),
            rank: 0,
        }];
        let mut seen_per_level: HashMap<i64, u64> = HashMap::new();
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let (label, level) = (vertices[id].label, vertices[id].level);
            if level >= depth as i64 {
                continue;
            }
            let mut kids = Vec::new();
            for (order, (l, k)) in shape.children(label, level)?.into_iter().enumerate() {
                if k > depth as i64 {
                    continue;
                }
                let cid = vertices.len();
                vertices.push(Vertex {
                    id: cid,
                    level: k,
                    label: l,
                    parent: Some(id),
                    order,
                    children: Vec::new(),
                    rank: 0,
                });
                kids.push(cid);
            }
            vertices[id].children = kids.clone();
            stack.extend(kids.into_iter().rev());
        }
        // renumber in pre-order so that ids follow the left-to-right order
        let mut order = Vec::with_capacity(vertices.len());
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            order.push(id);
            stack.extend(vertices[id].children.iter().rev());
        }
        let mut new_id = vec![0; vertices.len()];
        for (n, &old) in order.iter().enumerate() {
            new_id[old] = n;
        }
        let mut out: Vec<Vertex> = order
            .iter()
            .map(|&old| {
                let v = &vertices[old];
                Vertex {
                    id: new_id[old],
                    level: v.level,
                    label: v.label,
                    parent: v.parent.map(|p| new_id[p]),
                    order: v.order,
                    children: v.children.iter().map(|&c| new_id[c]).collect(),
                    rank: 0,
                }
            })
            .collect();
        for v in out.iter_mut().skip(1) {
            let r = seen_per_level.entry(v.level).or_insert(0);
            v.rank = *r;
            *r += 1;
        }
        Ok(SpectralTree { alpha: alpha_digits.to_vec(), depth, vertices: out })
    }

    pub fn root(&self) -> &Vertex {
        &self.vertices[0]
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    /// Ids at a level, left to right.
    pub fn level(&self, level: i64) -> Vec<usize> {
        self.vertices.iter().filter(|v| v.level == level).map(|v| v.id).collect()
    }

    pub fn level_counts(&self, level: i64) -> (usize, usize) {
        let ids = self.level(level);
        let a = ids.iter().filter(|&&i| self.vertices[i].label == Label::A).count();
        (a, ids.len() - a)
    }

    pub fn path(&self, id: usize) -> BoundaryPath {
        let mut p = Vec::new();
        let mut cur = id;
        while let Some(parent) = self.vertices[cur].parent {
            p.push(self.vertices[cur].order);
            cur = parent;
        }
        p.reverse();
        BoundaryPath(p)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices.iter().filter_map(|v| v.parent.map(|p| (p, v.id))).collect()
    }

    /// `u < w` in the tree order; `None` when one lies below the other.
    pub fn precedes(&self, u: usize, w: usize) -> Option<bool> {
        let (pu, pw) = (self.path(u), self.path(w));
        let k = pu.0.iter().zip(&pw.0).take_while(|(a, b)| a == b).count();
        if k == pu.len() || k == pw.len() {
            None
        } else {
            Some(pu.0[k] < pw.0[k])
        }
    }

    /// `Psi` of a vertex.
    pub fn psi(&self, id: usize, v: f64) -> Result<Image> {
        let vx = self.vertices.get(id).ok_or(Error::Input(format!("no vertex {id}")))?;
        if vx.level > self.depth as i64 {
            return Err(Error::DepthExceeded { level: vx.level as usize, depth: self.depth });
        }
        if vx.label == Label::Root {
            return Ok(Image::Line);
        }
        level_band(&self.alpha, vx.level, vx.rank, v).map(Image::Band)
    }

    /// `Psi` of every vertex, one spectrum per level.
    pub fn psi_all(&self, v: f64) -> Result<Vec<Image>> {
        let mut per_level = Vec::new();
        for k in 0..=self.depth {
            let c = ContFrac::approximant(&self.alpha, k)?;
            per_level.push(spectrum_bands(&c, v)?.bands);
        }
        Ok(self
            .vertices
            .iter()
            .map(|x| {
                if x.label == Label::Root {
                    Image::Line
                } else {
                    Image::Band(per_level[x.level as usize][x.rank as usize].clone())
                }
            })
            .collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serialises")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph spectral_tree {\n  rankdir=TB;\n");
        for v in &self.vertices {
            s.push_str(&format!("  v{} [label=\"{}\\nlevel {}\"];\n", v.id, v.label, v.level));
        }
        for (p, c) in self.edges() {
            s.push_str(&format!("  v{p} -> v{c};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Result of checking `Psi` against the tree structure at one coupling.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TreeCheck {
    pub edges: usize,
    pub edge_failures: usize,
    pub ordered_pairs: usize,
    pub order_failures: usize,
    pub label_failures: usize,
}

impl TreeCheck {
    pub fn holds(&self) -> bool {
        self.edge_failures == 0 && self.order_failures == 0 && self.label_failures == 0
    }
}

/// Edge inclusion, order preservation for levels at most one apart, and
/// agreement of vertex labels with band types.
pub fn check_tree(tree: &SpectralTree, v: f64, types: &[Vec<BandType>]) -> Result<TreeCheck> {
    let img = tree.psi_all(v)?;
    let mut r = TreeCheck::default();
    for (p, c) in tree.edges() {
        r.edges += 1;
        let (outer, inner) = (img[p].interval(), img[c].interval());
        if !(outer.0 < inner.0 && inner.1 < outer.1) {
            r.edge_failures += 1;
        }
    }
    let paths: Vec<BoundaryPath> = (0..tree.vertices.len()).map(|i| tree.path(i)).collect();
    for u in tree.vertices.iter().skip(1) {
        if let Some(t) = types.get(u.level as usize) {
            if u.label.band_type() != t.get(u.rank as usize).copied() {
                r.label_failures += 1;
            }
        }
        for w in tree.vertices.iter().skip(1) {
            if (u.level - w.level).abs() > 1 {
                continue;
            }
            if compare_paths(&paths[u.id], &paths[w.id]) != Ordering::Less || is_prefix(&paths[u.id], &paths[w.id]) {
                continue;
            }
            r.ordered_pairs += 1;
            if !left_of(img[u.id].interval(), img[w.id].interval()) {
                r.order_failures += 1;
            }
        }
    }
    Ok(r)
}

fn is_prefix(a: &BoundaryPath, b: &BoundaryPath) -> bool {
    a.len() <= b.len() && a.0 == b.0[..a.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandtype::band_types;
    use crate::contfrac::denominators;

    const GOLDEN: [i64; 30] = [1; 30];

    #[test]
    fn golden_level_counts() {
        let t = SpectralTree::build(&GOLDEN, 3).unwrap();
        let counts: Vec<_> = (0..=3).map(|k| t.level_counts(k)).collect();
        assert_eq!(counts, vec![(1, 0), (0, 1), (1, 1), (1, 2)]);
        let t0 = SpectralTree::build(&GOLDEN, 0).unwrap();
        assert_eq!(t0.vertices.len(), 2);
    }

    #[test]
    fn counts_match_denominators() {
        let alpha = [1, 2, 3, 1, 4, 2, 1, 1];
        let shape = TreeShape::new(&alpha).unwrap();
        let t = SpectralTree::build(&alpha, 8).unwrap();
        let q = denominators(&alpha, 8);
        for k in 0..=8i64 {
            let qk = q[k as usize + 1] as u64;
            let qk1 = q[k as usize] as u64;
            assert_eq!(shape.level_counts(k).unwrap(), (qk - qk1, qk1), "level {k}");
            let (a, b) = t.level_counts(k);
            assert_eq!((a as u64, b as u64), (qk - qk1, qk1));
        }
        for v in t.vertices.iter().skip(1) {
            let info = shape.vertex(&t.path(v.id)).unwrap();
            assert_eq!((info.label, info.level, info.rank), (v.label, v.level, v.rank));
        }
    }

    #[test]
    fn first_images() {
        let shape = TreeShape::new(&GOLDEN).unwrap();
        let v = 1.5;
        let u0 = psi_path(&shape, &"0".parse().unwrap(), v).unwrap();
        let (l, r) = u0.interval();
        assert!((l + 2.0).abs() < 1e-12 && (r - 2.0).abs() < 1e-12);
        let w0 = psi_path(&shape, &"1".parse().unwrap(), v).unwrap();
        let (l, r) = w0.interval();
        assert!((l - (v - 2.0)).abs() < 1e-12 && (r - (v + 2.0)).abs() < 1e-12);
        assert_eq!(psi_path(&shape, &BoundaryPath::default(), v).unwrap(), Image::Line);
    }

    #[test]
    fn tree_matches_bands() {
        let alpha = [2, 1, 3, 1, 1, 2];
        let t = SpectralTree::build(&alpha, 6).unwrap();
        for v in [1.0, 5.0] {
            let types: Vec<_> =
                (0..=6).map(|k| band_types(&ContFrac::approximant(&alpha, k).unwrap(), v).unwrap()).collect();
            let r = check_tree(&t, v, &types).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.ordered_pairs > 0);
        }
    }

    #[test]
    fn two_level_order_fails() {
        let alpha = [1, 2, 1, 1];
        let t = SpectralTree::build(&alpha, 2).unwrap();
        let u = t.level(0)[0];
        let w = t.level(2)[1];
        assert_eq!(t.precedes(u, w), Some(true));
        let pw = t.psi(w, 1.0).unwrap().interval();
        let pu = t.psi(u, 1.0).unwrap().interval();
        assert!(pw.0.abs() < 1e-10);
        assert!((pw.1 - 2f64.sqrt()).abs() < 1e-10);
        assert!(pu.0 < pw.0 && pw.1 < pu.1);
        assert!(!left_of(pu, pw));
    }

    #[test]
    fn path_parsing() {
        let p: BoundaryPath = "0, 2,1".parse().unwrap();
        assert_eq!(p.0, vec![0, 2, 1]);
        assert_eq!(p.to_string(), "0,2,1");
        assert!("0,x".parse::<BoundaryPath>().is_err());
        assert_eq!(compare_paths(&p, &p.prefix(2)), Ordering::Equal);
    }

    #[test]
    fn energy_and_shortcuts() {
        let shape = TreeShape::new(&GOLDEN).unwrap();
        let left = shape.leftmost_path(18).unwrap();
        let e = boundary_energy(&shape, &left, 1.0, 1e-6).unwrap();
        let bottom = level_band(&GOLDEN, 18, 0, 1.0).unwrap().left;
        assert!((e - bottom).abs() < 1e-5);
        let quick = boundary_energy(&shape, &left, 1.0, 10.0).unwrap();
        assert_eq!(quick, 0.0);
        let short = shape.leftmost_path(2).unwrap();
        assert!(matches!(boundary_energy(&shape, &short, 1.0, 1e-9), Err(Error::DepthExhausted { .. })));
    }

    #[test]
    fn injectivity_golden() {
        let shape = TreeShape::new(&GOLDEN).unwrap();
        let l = shape.leftmost_path(6).unwrap();
        let r = shape.rightmost_path(6).unwrap();
        for v in [1.0, 0.1] {
            let rep = injectivity_bound_check(&shape, &l, &r, v, 4).unwrap();
            assert!(rep.holds(), "{rep:?}");
            assert_eq!(rep.separated_at(), Some(if v == 1.0 { 1 } else { 3 }));
        }
        // diverge below a shared B vertex with three children
        let base = shape.leftmost_path(4).unwrap();
        let a = shape.extend_path(&base.child(0), 6, |_| 1).unwrap();
        let b = shape.extend_path(&base.child(2), 6, |_| 0).unwrap();
        for v in [1.0, 0.3] {
            let rep = injectivity_bound_check(&shape, &a, &b, v, 4).unwrap();
            assert_eq!(rep.divergence_level, Some(4));
            assert!(rep.holds() && rep.holds_fine(), "{rep:?}");
            assert!(rep.separated_at().is_some());
        }
        let rep = injectivity_bound_check(&shape, &l, &l, 1.0, 4).unwrap();
        assert!(rep.steps.is_empty() && rep.holds());
    }
}
