//! Dense complex matrices with the small set of operations the generator
//! model needs: products, adjoints, powers, structural predicates, and a
//! Hermitian eigensolver.
//!
//! Matrices here are tiny (the state space of a generator is at most a few
//! tens of dimensions), so everything is written for clarity over speed.
//! All values are immutable after construction and every operation is a
//! pure function, so they can be shared freely across threads.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for structural predicates (unitarity, projector checks).
pub const STRUCTURAL_TOL: f64 = 1e-9;

/// Largest dimension accepted by [`CMatrix::hermitian_eigenvalues`].
pub const EIGEN_MAX_DIM: usize = 64;

const JACOBI_MAX_SWEEPS: usize = 50;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN or infinite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                left_rows: rows,
                left_cols: cols,
                right_rows: entries.len() / cols.max(1),
                right_cols: cols,
            });
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    row: k / cols.max(1),
                    col: k % cols.max(1),
                });
            }
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch {
                    left_rows: r,
                    left_cols: c,
                    right_rows: r,
                    right_cols: row.len(),
                });
            }
        }
        Self::new(r, c, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Real diagonal matrix.
    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Exact matrix product.
    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.entries[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.entries[i * self.cols + j].conj();
            }
        }
        out
    }

    /// k-th matrix power; `pow(0)` is the identity.
    pub fn pow(&self, k: usize) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = CMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            t += self.entries[i * self.cols + i];
        }
        Ok(t)
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, factor: f64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max |a_ij - conj(a_ji)|`, zero for Hermitian matrices.
    pub fn hermitian_residual(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.entries[i * n + j] - self.entries[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }

    /// True iff `max |A A^H - I| <= tol`. Non-square matrices are never unitary.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        match self.matmul(&self.adjoint()) {
            Ok(p) => p
                .sub(&CMatrix::identity(self.rows))
                .map(|d| d.max_abs() <= tol)
                .unwrap_or(false),
            Err(_) => false,
        }
    }

    /// True iff the matrix is Hermitian and idempotent within `tol`.
    pub fn is_projector(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        if self.hermitian_residual().map_or(true, |r| r > tol) {
            return false;
        }
        match self.matmul(self) {
            Ok(sq) => sq.max_abs_diff(self).map_or(false, |d| d <= tol),
            Err(_) => false,
        }
    }

    /// Eigenvalues of a Hermitian matrix, descending.
    ///
    /// Cyclic Jacobi with complex plane rotations; the matrices involved are
    /// tiny, so the quadratically convergent sweep loop is more than enough.
    /// The input must be Hermitian within `tol`.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n > EIGEN_MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim: n,
                max: EIGEN_MAX_DIM,
            });
        }
        let residual = self.hermitian_residual()?;
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        if n == 0 {
            return Ok(Vec::new());
        }

        // Work on the symmetrized copy so representation error does not leak
        // into the rotation angles.
        let mut a = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] =
                    (self.entries[i * n + j] + self.entries[j * n + i].conj()) * 0.5;
            }
        }

        let scale = self.frobenius_norm_sq().sqrt().max(1.0);
        let conv_tol = 1e-14 * scale;
        let mut converged = false;
        let mut off = off_diagonal_norm(&a, n);
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            if off <= conv_tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, n, p, q);
                }
            }
            off = off_diagonal_norm(&a, n);
        }
        if !converged && off > conv_tol {
            return Err(Error::EigenNoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off_norm: off,
            });
        }

        let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
        values.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
        Ok(values)
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry of a Hermitian
/// matrix stored row-major in `a`.
fn jacobi_rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let beta = apq.norm();
    if beta == 0.0 {
        return;
    }
    let phase = apq / beta; // a_pq = beta * e^{i phi}
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * beta);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // V restricted to the (p, q) plane is [[c, s], [-s e^{-i phi}, c e^{-i phi}]];
    // the update is A <- V^H A V.
    let phase_conj = phase.conj();
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * phase_conj * s;
        a[k * n + q] = akp * s + akq * phase_conj * c;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - aqk * phase * s;
        a[q * n + k] = apk * s + aqk * phase * c;
    }
    // Clean the pair the rotation was built to annihilate.
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
}
