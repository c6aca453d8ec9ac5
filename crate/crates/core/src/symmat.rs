//! Dense real symmetric matrices.
//!
//! The kernel is small on purpose: validation, a cyclic Jacobi eigensolver
//! with a deterministic ordering/sign convention, the positive-definiteness
//! test, and fractional powers of positive semidefinite matrices. Everything
//! downstream (distances, bounds, samplers) goes through [`eigh`].

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Relative skew tolerated by [`validate_symmetric`].
pub const SYMMETRY_TOL: f64 = 1e-8;
/// Relative eigenvalue floor below which a matrix is not positive definite,
/// and below whose negation it is not positive semidefinite.
pub const EIGEN_TOL: f64 = 1e-10;
/// Off-diagonal magnitude (relative to the Frobenius norm) at which Jacobi
/// sweeps stop.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// A dense `m x m` real symmetric matrix stored row-major.
///
/// Mirrored entries are bit-identical; every constructor enforces it.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymMatrix")
            .field("dim", &self.dim)
            .field("rows", &self.to_rows())
            .finish()
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl SymMatrix {
    /// Builds a symmetric matrix from the upper triangle produced by `f(i, j)`
    /// for `i <= j`, mirroring it into the lower triangle.
    pub(crate) fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        Self { dim, data }
    }

    /// Symmetrizes a row-major square buffer by averaging mirrored entries.
    /// No tolerance check; used on products that are symmetric in exact
    /// arithmetic.
    pub(crate) fn symmetrize_dense(dim: usize, data: &[f64]) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self::from_upper_fn(dim, |i, j| {
            if i == j {
                data[i * dim + i]
            } else {
                0.5 * (data[i * dim + j] + data[j * dim + i])
            }
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_upper_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Diagonal matrix with the given diagonal. Panics on an empty slice.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        assert!(!diag.is_empty(), "diagonal must be non-empty");
        Self::from_upper_fn(diag.len(), |i, j| if i == j { diag[i] } else { 0.0 })
    }

    /// Validates and symmetrizes a matrix given as rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        validate_symmetric(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest absolute off-diagonal entry (0 for a 1x1 matrix).
    pub fn off_diagonal_max(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                m = m.max(self[(i, j)].abs());
            }
        }
        m
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_diagonal_frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    s += self[(i, j)] * self[(i, j)];
                }
            }
        }
        s.sqrt()
    }

    /// True when every off-diagonal entry is at most `1e-12` in magnitude.
    pub fn is_diagonal(&self) -> bool {
        self.off_diagonal_max() <= 1e-12
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// `self - other`. Panics on a dimension mismatch.
    pub fn sub(&self, other: &SymMatrix) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Congruence `Bᵀ · self · B` for a square row-major `b` of the same
    /// dimension, returned symmetrized.
    pub fn congruence_t(&self, b: &[f64]) -> SymMatrix {
        let n = self.dim;
        let bt = transpose(b, n);
        let prod = matmul(&matmul(&bt, &self.data, n), b, n);
        SymMatrix::symmetrize_dense(n, &prod)
    }

    /// Congruence `B · self · Bᵀ`, returned symmetrized.
    pub fn congruence(&self, b: &[f64]) -> SymMatrix {
        let n = self.dim;
        let bt = transpose(b, n);
        let prod = matmul(&matmul(b, &self.data, n), &bt, n);
        SymMatrix::symmetrize_dense(n, &prod)
    }
}

/// Product of two row-major `n x n` buffers.
pub(crate) fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub(crate) fn transpose(a: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j];
        }
    }
    out
}

/// Checks that `raw` is square, finite and symmetric up to
/// `1e-8 * (1 + max|raw|)`, then returns `(raw + rawᵀ) / 2`.
pub fn validate_symmetric(raw: &[Vec<f64>]) -> Result<SymMatrix> {
    let n = raw.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: i,
                cols: row.len(),
            });
        }
    }
    let mut max_abs = 0.0f64;
    for (i, row) in raw.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            max_abs = max_abs.max(v.abs());
        }
    }
    let tolerance = SYMMETRY_TOL * (1.0 + max_abs);
    let mut skew = 0.0f64;
    for (i, row) in raw.iter().enumerate() {
        for (j, &v) in row.iter().enumerate().skip(i + 1) {
            skew = skew.max((v - raw[j][i]).abs());
        }
    }
    if skew > tolerance {
        return Err(Error::AsymmetricInput { skew, tolerance });
    }
    Ok(SymMatrix::from_upper_fn(n, |i, j| {
        if i == j {
            raw[i][i]
        } else {
            0.5 * (raw[i][j] + raw[j][i])
        }
    }))
}

/// Eigenvalues in descending order with paired orthonormal eigenvectors.
///
/// Column `i` of the eigenvector matrix belongs to `eigenvalues[i]`. In every
/// column the entry of largest magnitude is positive, the lowest row index
/// winning ties.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<f64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Row-major eigenvector matrix `U`; columns are eigenvectors.
    pub fn eigenvectors(&self) -> &[f64] {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        let n = self.dim();
        (0..n).map(|r| self.eigenvectors[r * n + i]).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `U · diag(f(λ)) · Uᵀ`, symmetric by construction.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let n = self.dim();
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let u = &self.eigenvectors;
        SymMatrix::from_upper_fn(n, |i, j| {
            (0..n).map(|k| u[i * n + k] * mapped[k] * u[j * n + k]).sum()
        })
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.map_eigenvalues(|l| l)
    }

    fn psd_floor(&self) -> f64 {
        -EIGEN_TOL * self.max_eigenvalue().max(1.0)
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn eigh(a: &SymMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut m = a.as_slice().to_vec();
    let mut v = SymMatrix::identity(n).data;
    let threshold = JACOBI_TOL * a.frobenius();

    let off_max = |m: &[f64]| {
        let mut o = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                o = o.max(m[p * n + q].abs());
            }
        }
        o
    };

    let mut sweeps = 0;
    while off_max(&m) > threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= threshold {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    m[k * n + p] = new_kp;
                    m[p * n + k] = new_kp;
                    m[k * n + q] = new_kq;
                    m[q * n + k] = new_kq;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        let mut pivot = 0;
        for r in 1..n {
            if v[r * n + src].abs() > v[pivot * n + src].abs() {
                pivot = r;
            }
        }
        let sign = if v[pivot * n + src] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            eigenvectors[r * n + col] = sign * v[r * n + src];
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// `λ_min > 1e-10 · max(λ_max, 1)`.
pub fn is_positive_definite(a: &SymMatrix) -> bool {
    match eigh(a) {
        Ok(d) => d.min_eigenvalue() > EIGEN_TOL * d.max_eigenvalue().max(1.0),
        Err(_) => false,
    }
}

/// Returns the decomposition when `a` is positive definite.
pub(crate) fn require_pd(a: &SymMatrix) -> Result<SpectralDecomposition> {
    let d = eigh(a)?;
    if d.min_eigenvalue() > EIGEN_TOL * d.max_eigenvalue().max(1.0) {
        Ok(d)
    } else {
        Err(Error::NotPd {
            min_eigenvalue: d.min_eigenvalue(),
        })
    }
}

/// Returns the decomposition when `a` is positive semidefinite up to
/// tolerance.
pub(crate) fn require_psd(a: &SymMatrix) -> Result<SpectralDecomposition> {
    let d = eigh(a)?;
    if d.min_eigenvalue() >= d.psd_floor() {
        Ok(d)
    } else {
        Err(Error::NotPsd {
            min_eigenvalue: d.min_eigenvalue(),
        })
    }
}

fn check_exponent(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(Error::BadExponent(q))
    }
}

/// `U · diag(max(λ, 0)^q) · Uᵀ` for `q ∈ (0, 1]`.
pub fn matrix_power_psd(a: &SymMatrix, q: f64) -> Result<SymMatrix> {
    check_exponent(q)?;
    let d = require_psd(a)?;
    Ok(d.map_eigenvalues(|l| l.max(0.0).powf(q)))
}

/// `Σ max(λ_i, 0)^q` for `q ∈ (0, 1]`.
pub fn trace_power(a: &SymMatrix, q: f64) -> Result<f64> {
    check_exponent(q)?;
    let d = require_psd(a)?;
    Ok(d.eigenvalues().iter().map(|l| l.max(0.0).powf(q)).sum())
}
