//! Eigenvalue interlacing under rank-one and rank-two perturbations, and the
//! explicit rank-two decomposition between `H_{[c,m,n]}(theta)` and the
//! direct sum of `n` copies of `H_{[c,m]}` with `H_c`.

use serde::Serialize;

use crate::bandscan::{build_floquet, periodic_matrix, potential, theta_admissible, Theta};
use crate::contfrac::{is_rotation, word_period, ContFrac};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, SymMatrix, DENSE_CAP};

/// Gap below which neighbouring eigenvalues count as one.
pub const SIMPLE_TOL: f64 = 1e-9;

/// `lambda_{j-1}(X + v v^T) <= lambda_j(X) <= lambda_j(X + v v^T)`.
pub fn rank1_interlace_check(x: &SymMatrix, v: &[f64], tol: f64) -> Result<bool> {
    if v.len() != x.size() {
        return Err(Error::Input(format!("vector length {} for a {}x{} matrix", v.len(), x.size(), x.size())));
    }
    let a = eigenvalues(x)?;
    let b = eigenvalues(&x.add_outer(v, 1.0))?;
    Ok((0..a.len()).all(|j| a[j] <= b[j] + tol && (j == 0 || b[j - 1] <= a[j] + tol)))
}

/// Which block comes first in the direct sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockOrder {
    /// `n` copies of `H_{[c,m]}`, then `H_c`.
    CopiesFirst,
    /// `H_c`, then the copies.
    BaseFirst,
}

/// Block order prescribed by the parity of `n`.
pub fn parity_order(n: i64) -> BlockOrder {
    if n % 2 == 0 {
        BlockOrder::CopiesFirst
    } else {
        BlockOrder::BaseFirst
    }
}

/// Block order under which the mechanical period of `[c,m,n]` is literally
/// the concatenation of the periods, if any. Otherwise the concatenation
/// agrees only up to a cyclic rotation.
pub fn diagonal_order(c: &ContFrac, m: i64, n: i64) -> Result<Option<BlockOrder>> {
    let cm = c.extend(m)?;
    let cmn = cm.extend(n)?;
    let base = potential(c, 1.0)?;
    let copy = potential(&cm, 1.0)?;
    let full = potential(&cmn, 1.0)?;
    let copies: Vec<f64> = copy.iter().copied().cycle().take(copy.len() * n as usize).collect();
    let first: Vec<f64> = copies.iter().chain(&base).copied().collect();
    let second: Vec<f64> = base.iter().chain(&copies).copied().collect();
    Ok(if full == first {
        Some(BlockOrder::CopiesFirst)
    } else if full == second {
        Some(BlockOrder::BaseFirst)
    } else {
        None
    })
}

/// The decomposition `Y - Z = x x^T - y y^T`.
#[derive(Clone, Debug)]
pub struct Rank2 {
    pub order: BlockOrder,
    /// Size of the first block.
    pub d1: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `H_{[c,m,n]}(theta_cmn)` on the concatenated period.
    pub y_mat: SymMatrix,
    /// The direct sum.
    pub z: SymMatrix,
}

impl Rank2 {
    /// Frobenius norm of `Y - Z - x x^T + y y^T`.
    pub fn residual(&self) -> f64 {
        self.y_mat.sub(&self.z).add_outer(&self.x, -1.0).add_outer(&self.y, 1.0).frobenius()
    }

    pub fn trace(&self) -> f64 {
        self.y_mat.sub(&self.z).trace()
    }

    /// Eigenvalues of `Y - Z` by decreasing magnitude.
    pub fn perturbation_spectrum(&self) -> Result<Vec<f64>> {
        let mut e = eigenvalues(&self.y_mat.sub(&self.z))?;
        e.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
        Ok(e)
    }

    /// A vector supported on one block and orthogonal to `x` and `y` must
    /// vanish at both ends of the block.
    pub fn orthogonality_forces_zero(&self) -> bool {
        let q = self.x.len();
        let ends = [(0, self.d1 - 1), (self.d1, q - 1)];
        ends.iter().all(|&(s, e)| {
            if s == e {
                self.x[s] != 0.0 || self.y[s] != 0.0
            } else {
                (self.x[s] * self.y[e] - self.x[e] * self.y[s]).abs() > 1e-12
            }
        })
    }
}

fn block_diag(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    let (na, nb) = (a.size(), b.size());
    SymMatrix::from_fn(na + nb, |i, j| {
        if j < na {
            a.get(i, j)
        } else if i >= na {
            b.get(i - na, j - na)
        } else {
            0.0
        }
    })
}

fn check_instance(c: &ContFrac, m: i64, n: i64) -> Result<(ContFrac, ContFrac)> {
    if m < 1 || n < 1 {
        return Err(Error::Input("m and n must be positive".into()));
    }
    if c.phi().is_sentinel() {
        return Err(Error::DegenerateExpansion);
    }
    let cm = c.extend(m)?;
    let cmn = cm.extend(n)?;
    Ok((cm, cmn))
}

/// `Y = H_{[c,m,n]}(theta_cmn)` against the direct sum `Z` in the block
/// order prescribed by the parity of `n`, with explicit `x` and `y`.
///
/// `Y` is assembled on the concatenated period, a cyclic rotation of the
/// period of `[c,m,n]`; its spectrum is that of `H_{[c,m,n]}(theta_cmn)`.
/// The trace of `Y - Z` vanishes unless a block has size one, where the
/// corner term `2 cos(theta)` sits on the diagonal.
///
/// With `s_f`, `s_s` the corner signs `cos(theta)` of the first and second
/// block and `a, b, c, d` their end indices,
/// `x = (-s_f e_a + e_b + e_c - s_s e_d) / sqrt 2` and
/// `y = (s_f e_a + e_b - e_c - s_s e_d) / sqrt 2`.
pub fn rank2_decomposition(c: &ContFrac, m: i64, n: i64, v: f64, theta: (Theta, Theta, Theta)) -> Result<Rank2> {
    if !theta_admissible(theta) {
        return Err(Error::NotAdmissible);
    }
    let (cm, cmn) = check_instance(c, m, n)?;
    let (t_c, t_cm, t_cmn) = theta;
    let base_w = potential(c, v)?;
    let copy_w = potential(&cm, v)?;
    let copies_w: Vec<f64> = copy_w.iter().copied().cycle().take(copy_w.len() * n as usize).collect();
    let order = parity_order(n);
    let diag: Vec<f64> = match order {
        BlockOrder::CopiesFirst => copies_w.iter().chain(&base_w).copied().collect(),
        BlockOrder::BaseFirst => base_w.iter().chain(&copies_w).copied().collect(),
    };
    if diag.len() > DENSE_CAP {
        return Err(Error::SizeCap { size: diag.len(), cap: DENSE_CAP });
    }
    // a rotated period gives a unitarily equivalent Floquet matrix
    let bits: Vec<u8> = diag.iter().map(|&x| u8::from(x != 0.0)).collect();
    if !is_rotation(&bits, &word_period(&cmn)?.bits) {
        return Err(Error::PreconditionFail(format!("period of {cmn} is not a rotation of the concatenation")));
    }
    let y_mat = periodic_matrix(&diag, t_cmn);
    let copies = build_floquet(&cm, v, t_cm, n as usize)?.matrix;
    let base = build_floquet(c, v, t_c, 1)?.matrix;
    let (z, d1, s_f, s_s) = match order {
        BlockOrder::CopiesFirst => (block_diag(&copies, &base), copies.size(), t_cm.cos(), t_c.cos()),
        BlockOrder::BaseFirst => (block_diag(&base, &copies), base.size(), t_c.cos(), t_cm.cos()),
    };
    let q = y_mat.size();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut x = vec![0.0; q];
    let mut y = vec![0.0; q];
    for (i, xs, ys) in [(0, -s_f, s_f), (d1 - 1, 1.0, 1.0), (d1, 1.0, -1.0), (q - 1, -s_s, -s_s)] {
        x[i] += r * xs;
        y[i] += r * ys;
    }
    Ok(Rank2 { order, d1, x, y, y_mat, z })
}

#[derive(Clone, Debug, Serialize)]
pub struct InterlaceReport {
    pub size: usize,
    /// Violations of `lambda_{j-1}(Y) <= lambda_j(X) <= lambda_{j+1}(Y)`.
    pub violations: usize,
    /// Simple eigenvalues of `X` checked for strictness.
    pub simple: usize,
    /// Simple eigenvalues at which an inequality is an equality.
    pub strict_failures: usize,
    /// Smallest margin over the strict checks.
    pub min_strict_margin: f64,
}

impl InterlaceReport {
    pub fn holds(&self) -> bool {
        self.violations == 0 && self.strict_failures == 0
    }
}

/// Interlacing of `X = nH_{[c,m]}(theta_cm) ⊕ H_c(theta_c)` with
/// `Y = H_{[c,m,n]}(theta_cmn)`, strict at simple eigenvalues of `X`.
pub fn interlacing_check(
    c: &ContFrac,
    m: i64,
    n: i64,
    v: f64,
    theta: (Theta, Theta, Theta),
) -> Result<InterlaceReport> {
    if !theta_admissible(theta) {
        return Err(Error::NotAdmissible);
    }
    let (cm, cmn) = check_instance(c, m, n)?;
    let y = eigenvalues(&build_floquet(&cmn, v, theta.2, 1)?.matrix)?;
    let mut x = eigenvalues(&build_floquet(&cm, v, theta.1, n as usize)?.matrix)?;
    x.extend(eigenvalues(&build_floquet(c, v, theta.0, 1)?.matrix)?);
    x.sort_by(f64::total_cmp);
    let q = y.len();
    let tol = 1e-10 * (1.0 + v.abs());
    let mut rep =
        InterlaceReport { size: q, violations: 0, simple: 0, strict_failures: 0, min_strict_margin: f64::INFINITY };
    for j in 0..q {
        let lower = (j >= 1).then(|| y[j - 1]);
        let upper = (j + 1 < q).then(|| y[j + 1]);
        if lower.is_some_and(|l| l > x[j] + tol) || upper.is_some_and(|u| x[j] > u + tol) {
            rep.violations += 1;
        }
        let simple = (j == 0 || x[j] - x[j - 1] > SIMPLE_TOL) && (j + 1 == q || x[j + 1] - x[j] > SIMPLE_TOL);
        if simple {
            rep.simple += 1;
            let margin = lower.map_or(f64::INFINITY, |l| x[j] - l).min(upper.map_or(f64::INFINITY, |u| u - x[j]));
            rep.min_strict_margin = rep.min_strict_margin.min(margin);
            if margin <= tol {
                rep.strict_failures += 1;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Theta::{Pi, Zero};

    fn cf(d: &[i64]) -> ContFrac {
        ContFrac::new(d).unwrap()
    }

    #[test]
    fn rank1_examples() {
        let z = SymMatrix::zeros(2);
        assert!(rank1_interlace_check(&z, &[1.0, 0.0], 0.0).unwrap());
        let x = SymMatrix::from_rows(&[vec![1.0, 2.0, 0.0], vec![2.0, -1.0, 0.5], vec![0.0, 0.5, 3.0]]);
        assert!(rank1_interlace_check(&x, &[0.0; 3], 0.0).unwrap());
        assert!(rank1_interlace_check(&x, &[0.3, -1.0, 2.0], 1e-12).unwrap());
        assert!(rank1_interlace_check(&x, &[1.0], 0.0).is_err());
    }

    #[test]
    fn small_decomposition() {
        let r = rank2_decomposition(&cf(&[0, 0, 1]), 1, 1, 1.0, (Zero, Zero, Zero)).unwrap();
        assert_eq!(r.y_mat.size(), 3);
        assert!(r.residual() < 1e-12);
        // H_{[0,0,1]} is 1x1 with 2cos(theta) on the diagonal
        assert!((r.trace() + 2.0).abs() < 1e-12);
        let s = r.perturbation_spectrum().unwrap();
        assert!(s[2].abs() < 1e-10 && s[1].abs() > 0.5);
        let r = rank2_decomposition(&cf(&[0, 0, 1, 1]), 2, 1, 1.0, (Pi, Zero, Pi)).unwrap();
        assert!(r.residual() < 1e-12 && r.trace().abs() < 1e-12);
        let s = r.perturbation_spectrum().unwrap();
        assert!((s[0].abs() - 2.0).abs() < 1e-12 && (s[1].abs() - 2.0).abs() < 1e-12 && s[2].abs() < 1e-10);
        let mut ey = eigenvalues(&r.y_mat).unwrap();
        let et = eigenvalues(&build_floquet(&cf(&[0, 0, 1, 1, 2, 1]), 1.0, Pi, 1).unwrap().matrix).unwrap();
        ey.iter_mut().zip(&et).for_each(|(a, b)| *a -= b);
        assert!(ey.iter().all(|d| d.abs() < 1e-10));
        assert!(r.orthogonality_forces_zero());
        assert_eq!(
            rank2_decomposition(&cf(&[0, 0, 1]), 1, 1, 1.0, (Zero, Zero, Pi)).unwrap_err(),
            Error::NotAdmissible
        );
    }

    #[test]
    fn small_interlacing() {
        let r = interlacing_check(&cf(&[0, 0, 1]), 1, 1, 1.0, (Zero, Zero, Zero)).unwrap();
        assert!(r.holds(), "{r:?}");
        for v in [0.5, 1.0, 5.0] {
            for th in [(Zero, Zero, Zero), (Pi, Pi, Zero), (Pi, Zero, Pi), (Zero, Pi, Pi)] {
                let r = interlacing_check(&cf(&[0, 0, 1, 1, 1, 1]), 1, 1, v, th).unwrap();
                assert!(r.holds(), "{v} {th:?} {r:?}");
            }
        }
    }

    #[test]
    fn concatenation_is_rotation() {
        for d in [&[0, 0][..], &[0, 0, 1], &[0, 0, 2], &[0, 0, 1, 1], &[0, 0, 2, 3], &[0, 0, 1, 2, 1]] {
            let c = cf(d);
            for m in 1..4 {
                for n in 1..4 {
                    let r = rank2_decomposition(&c, m, n, 1.0, (Zero, Zero, Zero)).unwrap();
                    assert_eq!(r.order, parity_order(n));
                    assert!(r.residual() < 1e-12, "{c} {m} {n}");
                }
            }
        }
        // the literal order follows the level of c, not n
        assert_eq!(diagonal_order(&cf(&[0, 0, 1, 1]), 2, 2).unwrap(), Some(BlockOrder::BaseFirst));
        assert_eq!(diagonal_order(&cf(&[0, 0, 2]), 2, 1).unwrap(), Some(BlockOrder::CopiesFirst));
    }
}
