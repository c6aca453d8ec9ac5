//! Gaussian and multivariate Student-t laws with a prescribed covariance,
//! their samplers, covariance estimation and random test matrices.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmat::{self, require_pd, SymMatrix};

/// Radial profile of an elliptical family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    Gaussian,
    StudentT { df: f64 },
}

impl Generator {
    /// Student-t with `df > 2`, the range in which the covariance is finite.
    pub fn student_t(df: f64) -> Result<Self> {
        if df.is_finite() && df > 2.0 {
            Ok(Generator::StudentT { df })
        } else {
            Err(Error::BadDf(df))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Gaussian => "gaussian",
            Generator::StudentT { .. } => "student-t",
        }
    }
}

/// A zero-mean elliptical law: generator plus (positive definite) covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticalSpec {
    generator: Generator,
    covariance: SymMatrix,
}

impl EllipticalSpec {
    pub fn new(generator: Generator, covariance: SymMatrix) -> Result<Self> {
        if let Generator::StudentT { df } = generator {
            Generator::student_t(df)?;
        }
        require_pd(&covariance)?;
        Ok(Self {
            generator,
            covariance,
        })
    }

    pub fn gaussian(covariance: SymMatrix) -> Result<Self> {
        Self::new(Generator::Gaussian, covariance)
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn covariance(&self) -> &SymMatrix {
        &self.covariance
    }

    pub fn dim(&self) -> usize {
        self.covariance.dim()
    }
}

/// `n` draws of an `m`-dimensional vector, one row per draw.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    n: usize,
    dim: usize,
    rows: Vec<f64>,
    seed: u64,
}

impl SampleSet {
    /// Builds a sample set from explicit rows (`seed` is informational).
    pub fn from_rows(rows: &[Vec<f64>], seed: u64) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::InvalidSamples("rows have zero length".into()));
        }
        let mut flat = Vec::with_capacity(n * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidSamples(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            if let Some(col) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row: i, col });
            }
            flat.extend_from_slice(row);
        }
        Ok(Self {
            n,
            dim,
            rows: flat,
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.rows.chunks(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.rows
    }

    pub fn mean(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.dim];
        for row in self.rows() {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        let inv = 1.0 / self.n as f64;
        mean.iter_mut().for_each(|m| *m *= inv);
        mean
    }

    /// The same draws with rows reordered by `perm` (row `i` of the result is
    /// row `perm[i]` of `self`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut rows = Vec::with_capacity(self.rows.len());
        for &p in perm {
            rows.extend_from_slice(self.row(p));
        }
        Self {
            rows,
            ..self.clone()
        }
    }
}

/// Standard normals from the Box–Muller transform.
struct BoxMuller<'a, R: Rng> {
    rng: &'a mut R,
    spare: Option<f64>,
}

impl<'a, R: Rng> BoxMuller<'a, R> {
    fn new(rng: &'a mut R) -> Self {
        Self { rng, spare: None }
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2 = self.rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Multiplies each `m`-vector `z` by a symmetric matrix `root` (`z · rootᵀ`).
fn color(z: &[f64], root: &SymMatrix, out: &mut Vec<f64>) {
    let m = root.dim();
    for i in 0..m {
        out.push((0..m).map(|k| root[(i, k)] * z[k]).sum());
    }
}

/// Draws `n` samples from `spec` on stream 0 of the seeded generator.
pub fn sample(spec: &EllipticalSpec, n: usize, seed: u64) -> Result<SampleSet> {
    sample_stream(spec, n, seed, 0)
}

/// Draws `n` samples on an explicit stream of the seeded ChaCha generator, so
/// two laws can be sampled from one seed without sharing draws.
///
/// Gaussian rows are `z · Σ^{1/2}`. Student-t rows are
/// `z / sqrt(g/ν) · S^{1/2}` with `g ~ χ²(ν)` and `S = (ν−2)/ν · Σ`, which
/// makes the population covariance exactly `Σ`.
pub fn sample_stream(spec: &EllipticalSpec, n: usize, seed: u64, stream: u64) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let m = spec.dim();
    let mut rng = rng_for(seed, stream);
    let mut rows = Vec::with_capacity(n * m);
    let mut z = vec![0.0; m];
    match spec.generator {
        Generator::Gaussian => {
            let root = symmat::matrix_power_psd(&spec.covariance, 0.5)?;
            let mut normals = BoxMuller::new(&mut rng);
            for _ in 0..n {
                z.iter_mut().for_each(|v| *v = normals.next());
                color(&z, &root, &mut rows);
            }
        }
        Generator::StudentT { df } => {
            let scale = spec.covariance.scaled((df - 2.0) / df);
            let root = symmat::matrix_power_psd(&scale, 0.5)?;
            let chi = ChiSquared::new(df).map_err(|_| Error::BadDf(df))?;
            let mut spare = None;
            for _ in 0..n {
                // keep the Box–Muller spare across rows while interleaving χ² draws
                let mut normals = BoxMuller {
                    rng: &mut rng,
                    spare: spare.take(),
                };
                z.iter_mut().for_each(|v| *v = normals.next());
                spare = normals.spare.take();
                let g: f64 = chi.sample(&mut rng);
                let w = (df / g).sqrt();
                z.iter_mut().for_each(|v| *v *= w);
                color(&z, &root, &mut rows);
            }
        }
    }
    Ok(SampleSet {
        n,
        dim: m,
        rows,
        seed,
    })
}

/// Equal-weight mixture of `N(+shift, S)` and `N(−shift, S)`: a zero-mean,
/// non-elliptical law with total covariance `S + shift·shiftᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPairMixture {
    shift: Vec<f64>,
    component: SymMatrix,
}

impl GaussianPairMixture {
    /// Picks the component covariance so the mixture's covariance is `total`.
    /// Fails with `NotPd` when `total − shift·shiftᵀ` is not positive definite.
    pub fn with_total_covariance(total: &SymMatrix, shift: Vec<f64>) -> Result<Self> {
        if shift.len() != total.dim() {
            return Err(Error::DimMismatch {
                left: total.dim(),
                right: shift.len(),
            });
        }
        let component = SymMatrix::from_upper_fn(total.dim(), |i, j| total[(i, j)] - shift[i] * shift[j]);
        require_pd(&component)?;
        Ok(Self { shift, component })
    }

    pub fn total_covariance(&self) -> SymMatrix {
        SymMatrix::from_upper_fn(self.component.dim(), |i, j| {
            self.component[(i, j)] + self.shift[i] * self.shift[j]
        })
    }

    pub fn sample_stream(&self, n: usize, seed: u64, stream: u64) -> Result<SampleSet> {
        if n == 0 {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        let m = self.component.dim();
        let root = symmat::matrix_power_psd(&self.component, 0.5)?;
        let mut rng = rng_for(seed, stream);
        let mut rows = Vec::with_capacity(n * m);
        let mut z = vec![0.0; m];
        let mut spare = None;
        for _ in 0..n {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            let mut normals = BoxMuller {
                rng: &mut rng,
                spare: spare.take(),
            };
            z.iter_mut().for_each(|v| *v = normals.next());
            spare = normals.spare.take();
            let start = rows.len();
            color(&z, &root, &mut rows);
            for (v, s) in rows[start..].iter_mut().zip(&self.shift) {
                *v += sign * s;
            }
        }
        Ok(SampleSet {
            n,
            dim: m,
            rows,
            seed,
        })
    }
}

/// Second-moment matrix with divisor `n`; the sample mean is removed first
/// when `center` is set.
pub fn sample_covariance(s: &SampleSet, center: bool) -> Result<SymMatrix> {
    let needed = if center { 2 } else { 1 };
    if s.n < needed {
        return Err(Error::TooFewSamples {
            needed,
            got: s.n,
        });
    }
    let m = s.dim;
    let mean = if center { s.mean() } else { vec![0.0; m] };
    let mut acc = vec![0.0; m * m];
    let mut centered = vec![0.0; m];
    for row in s.rows() {
        for d in 0..m {
            centered[d] = row[d] - mean[d];
        }
        for i in 0..m {
            for j in i..m {
                acc[i * m + j] += centered[i] * centered[j];
            }
        }
    }
    let inv = 1.0 / s.n as f64;
    Ok(SymMatrix::from_upper_fn(m, |i, j| acc[i * m + j] * inv))
}

/// Largest condition number [`random_pd`] will produce; larger requests are
/// clamped so the result stays positive definite under the `1e-10` test.
pub const MAX_CONDITION: f64 = 1e8;

/// Random orthogonal `m x m` matrix (row-major) from Gram–Schmidt on
/// Gaussian columns.
fn random_orthogonal(m: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut normals = BoxMuller::new(rng);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(m);
    while cols.len() < m {
        let mut v: Vec<f64> = (0..m).map(|_| normals.next()).collect();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for c in &cols {
                let dot: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(a, b)| *a -= dot * b);
            }
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|a| *a /= norm);
        cols.push(v);
    }
    let mut u = vec![0.0; m * m];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..m {
            u[i * m + j] = c[i];
        }
    }
    u
}

/// Random positive definite matrix `U diag(λ) Uᵀ` with Haar-like `U` and
/// eigenvalues log-uniform in `[1/condition_cap, 1]`.
pub fn random_pd(dim: usize, seed: u64, condition_cap: f64) -> SymMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let cap = if condition_cap.is_finite() {
        condition_cap.clamp(1.0, MAX_CONDITION)
    } else {
        MAX_CONDITION
    };
    let mut rng = rng_for(seed, 0);
    let u = random_orthogonal(dim, &mut rng);
    let log_floor = -cap.ln();
    let lambda: Vec<f64> = (0..dim)
        .map(|_| (log_floor * rng.random::<f64>()).exp())
        .collect();
    SymMatrix::from_diagonal(&lambda).congruence(&u)
}

/// Random correlation matrix: a random positive definite matrix rescaled to
/// unit diagonal.
pub fn random_correlation(dim: usize, seed: u64) -> SymMatrix {
    let a = random_pd(dim, seed, 10.0);
    let inv_sd: Vec<f64> = a.diagonal().iter().map(|v| 1.0 / v.sqrt()).collect();
    SymMatrix::from_upper_fn(dim, |i, j| {
        if i == j {
            1.0
        } else {
            a[(i, j)] * inv_sd[i] * inv_sd[j]
        }
    })
}
