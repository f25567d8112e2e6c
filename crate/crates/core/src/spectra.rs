//! Symmetrized adjacency spectra of Schreier graphs.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::schreier::SchreierGraph;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("matrix has dimension zero")]
    Empty,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("rows have inconsistent lengths")]
    Ragged,
    #[error("no convergence after {sweeps} sweeps, off-diagonal norm {residual:e}")]
    NoConvergence { sweeps: usize, residual: f64 },
}

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseSymMatrix {
    /// Fills the upper triangle from `f` and mirrors it.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> DenseSymMatrix {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                data[i * n + j] = x;
                data[j * n + i] = x;
            }
        }
        DenseSymMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<DenseSymMatrix, SpectraError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SpectraError::Ragged);
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, other) in rows.iter().enumerate().skip(i + 1) {
                if row[j] != other[i] {
                    return Err(SpectraError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(DenseSymMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    /// `P A Pᵀ` for the vertex relabelling `i ↦ perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> DenseSymMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        DenseSymMatrix { n, data }
    }
}

/// `Σ_labels (P + Pᵀ)`; a loop adds 2 to its diagonal entry.
pub fn adjacency_matrix(graph: &SchreierGraph) -> DenseSymMatrix {
    let n = graph.vertex_count();
    let mut data = vec![0.0; n * n];
    for a in graph.arcs() {
        data[a.src * n + a.dst] += 1.0;
        data[a.dst * n + a.src] += 1.0;
    }
    DenseSymMatrix { n, data }
}

fn round_sig12(x: f64) -> f64 {
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn serialize_sig12<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round_sig12(x)))
}

fn serialize_sig12_one<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig12(*x))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    #[serde(serialize_with = "serialize_sig12")]
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm when iteration stopped; bounds the
    /// distance of every eigenvalue from its exact value.
    #[serde(serialize_with = "serialize_sig12_one")]
    pub residual: f64,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
/// rotations in row order.
pub fn eigenvalues_symmetric(
    matrix: &DenseSymMatrix,
    tol: f64,
) -> Result<SpectrumReport, SpectraError> {
    let n = matrix.dim();
    if n == 0 {
        return Err(SpectraError::Empty);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectraError::InvalidTolerance(tol));
    }
    let mut a = matrix.data.clone();
    let mut off = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while off > tol {
        if sweeps == MAX_SWEEPS {
            return Err(SpectraError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // entries below the diagonals' resolution are dropped once
                // the first few sweeps have done the bulk of the work
                if sweeps > 4
                    && app.abs() + 100.0 * apq.abs() == app.abs()
                    && aqq.abs() + 100.0 * apq.abs() == aqq.abs()
                {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                rotate(&mut a, n, p, q);
            }
        }
        off = off_diagonal_norm(&a, n);
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(SpectrumReport {
        eigenvalues,
        residual: off,
        sweeps,
    })
}

// Annihilates a[p][q] with a plane rotation applied on both sides.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

/// Same length and `max |s1[i] - s2[i]| <= tol` after sorting both.
pub fn spectra_equal(s1: &[f64], s2: &[f64], tol: f64) -> bool {
    if s1.len() != s2.len() {
        return false;
    }
    let mut a = s1.to_vec();
    let mut b = s2.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}
