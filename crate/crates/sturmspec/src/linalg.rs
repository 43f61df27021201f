//! Dense symmetric eigenvalues by cyclic Jacobi rotations, and inertia
//! counting for symmetric tridiagonal matrices.

use crate::error::{Error, Result};

/// Default size cap of the dense solver.
pub const DENSE_CAP: usize = 600;

/// Real symmetric matrix stored densely, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, a: vec![0.0; n * n] }
    }

    /// Builds from `f(i, j)` for `i <= j`, mirrored below the diagonal.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate().take(n) {
                m.a[i * n + j] = 0.5 * (x + rows[j][i]);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        let x = self.get(i, j);
        if i == j {
            self.set(i, i, x + v);
        } else {
            self.set(i, j, x + v);
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn sub(&self, o: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, o.n);
        SymMatrix { n: self.n, a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect() }
    }

    /// `self + s * v v^T`.
    pub fn add_outer(&self, v: &[f64], s: f64) -> SymMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i * self.n + j] += s * v[i] * v[j];
            }
        }
        m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.a.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

/// Eigenvalues (ascending, with multiplicity) and orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

pub fn eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    eigenvalues_capped(m, DENSE_CAP)
}

pub fn eigenvalues_capped(m: &SymMatrix, cap: usize) -> Result<Vec<f64>> {
    Ok(jacobi(m, cap, false)?.values)
}

pub fn eigen(m: &SymMatrix) -> Result<Eigen> {
    jacobi(m, DENSE_CAP, true)
}

fn jacobi(m: &SymMatrix, cap: usize, want_vectors: bool) -> Result<Eigen> {
    let n = m.n;
    if n > cap {
        return Err(Error::SizeCap { size: n, cap });
    }
    let mut a = m.a.clone();
    let mut v = if want_vectors {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    } else {
        Vec::new()
    };
    let tol = 1e-13 * m.frobenius();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                if want_vectors {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors =
        if want_vectors { order.iter().map(|&j| (0..n).map(|k| v[k * n + j]).collect()).collect() } else { Vec::new() };
    Ok(Eigen { values, vectors })
}

/// Number of eigenvalues `< x` of the symmetric tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn tridiag_count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - if i == 0 { 0.0 } else { b2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (diag[i].abs() + x.abs() + 1.0);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Tridiagonal counting with unit off-diagonals.
pub fn unit_tridiag_count_below(diag: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        d = a - x - if i == 0 { 0.0 } else { 1.0 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (a.abs() + x.abs() + 1.0);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_closed_forms() {
        assert_eq!(eigenvalues(&SymMatrix::from_rows(&[vec![2.0]])).unwrap(), vec![2.0]);
        let e = eigenvalues(&SymMatrix::from_rows(&[vec![0.0, 2.0], vec![2.0, 1.0]])).unwrap();
        let s = 17f64.sqrt();
        assert!((e[0] - (1.0 - s) / 2.0).abs() < 1e-14);
        assert!((e[1] - (1.0 + s) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn cap() {
        let m = SymMatrix::zeros(5);
        assert_eq!(eigenvalues_capped(&m, 4), Err(Error::SizeCap { size: 5, cap: 4 }));
    }

    #[test]
    fn residuals_and_counts() {
        let n = 12;
        let diag: Vec<f64> = (0..n).map(|i| ((i * 7) % 5) as f64 * 0.7).collect();
        let m = SymMatrix::from_fn(n, |i, j| {
            if i == j {
                diag[i]
            } else if j == i + 1 {
                1.0
            } else {
                0.0
            }
        });
        let eig = eigen(&m).unwrap();
        for (l, v) in eig.values.iter().zip(&eig.vectors) {
            let mv = m.mul_vec(v);
            let r: f64 = mv.iter().zip(v).map(|(a, b)| (a - l * b).powi(2)).sum::<f64>().sqrt();
            assert!(r <= 1e-9 * m.frobenius());
        }
        for (k, &l) in eig.values.iter().enumerate() {
            assert_eq!(unit_tridiag_count_below(&diag, l - 1e-9), k);
            assert_eq!(tridiag_count_below(&diag, &vec![1.0; n - 1], l + 1e-9), k + 1);
        }
    }
}
