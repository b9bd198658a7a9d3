//! Floating-point ground truth: dense Laplacians and a cyclic Jacobi
//! eigensolver, independent of the exact inertia engine.

use thiserror::Error;

use crate::tree::Tree;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;
pub const MAX_DENSE_N: usize = 512;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("dense oracle limited to n <= {MAX_DENSE_N}, got {0}")]
    TooLarge(usize),
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// Row-major symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> DenseMatrix {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j) * self.get(i, j);
                }
            }
        }
        s.sqrt()
    }
}

/// `L = D - A`.
pub fn laplacian(t: &Tree) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(t.n());
    for v in 0..t.n() {
        m.set(v, v, t.degree(v) as f64);
    }
    for &(u, v) in t.edges() {
        m.set(u, v, -1.0);
        m.set(v, u, -1.0);
    }
    m
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Stops once the off-diagonal Frobenius norm is below `tol`.
pub fn jacobi_eigenvalues(m: &DenseMatrix, tol: f64) -> Result<Vec<f64>, OracleError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(OracleError::BadTolerance);
    }
    let n = m.n();
    if n > MAX_DENSE_N {
        return Err(OracleError::TooLarge(n));
    }
    let mut a = m.clone();
    let mut off = a.off_diagonal_norm();
    let mut sweeps = 0;
    while off >= tol {
        if sweeps == MAX_SWEEPS {
            return Err(OracleError::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                // tan of the rotation angle, smaller root for stability
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
            }
        }
        sweeps += 1;
        off = a.off_diagonal_norm();
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

pub fn laplacian_spectrum(t: &Tree) -> Result<Vec<f64>, OracleError> {
    jacobi_eigenvalues(&laplacian(t), DEFAULT_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericCount {
    Count(usize),
    /// Some eigenvalue is within the guard of an endpoint.
    Indeterminate,
}

/// Counts eigenvalues in `[a, b)`.
///
/// Abstains when an eigenvalue lies within `guard` of an endpoint.
/// Eigenvalues within `guard` of zero are taken as the exact zero
/// eigenvalue of a positive semidefinite matrix, so an endpoint at exactly
/// `0` does not make them ambiguous.
pub fn interval_count_numeric(eigs: &[f64], a: f64, b: f64, guard: f64) -> NumericCount {
    let mut count = 0;
    for &raw in eigs {
        let lam = if raw.abs() < guard { 0.0 } else { raw };
        for end in [a, b] {
            let snapped_zero = lam == 0.0 && end == 0.0;
            if !snapped_zero && (lam - end).abs() < guard {
                return NumericCount::Indeterminate;
            }
        }
        if a <= lam && lam < b {
            count += 1;
        }
    }
    NumericCount::Count(count)
}
