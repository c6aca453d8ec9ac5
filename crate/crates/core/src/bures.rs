//! Bures–Wasserstein distance, the Gelbrich lower bound, and the diagonal
//! and eigenbasis bounds built on the trace inequality
//! `tr(Σ^q) ≤ Σ_i (Σ_ii)^q`, `0 < q < 1`.
//!
//! All covariances are taken to describe zero-mean laws.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmat::{self, require_pd, require_psd, SpectralDecomposition, SymMatrix};

/// Positive per-coordinate variances.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VarianceVector(Vec<f64>);

impl VarianceVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveVariance { index, value });
            }
        }
        Ok(Self(values))
    }

    /// Diagonal of a covariance, clamping roundoff-negative entries to zero.
    /// Entries may be zero when the source is only semidefinite.
    pub(crate) fn from_diagonal_clamped(values: Vec<f64>) -> Self {
        Self(values.into_iter().map(|v| v.max(0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for VarianceVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

fn check_dims(a: &SymMatrix, b: &SymMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Condition number of `A^{1/2} B A^{1/2}` up to which the polar route is
/// used; beyond it the inverse square root is too inaccurate.
const POLAR_MAX_CONDITION: f64 = 1e10;

/// Distance `sqrt(tr[A + B − 2 (A^{1/2} B A^{1/2})^{1/2}])`.
///
/// Evaluated as `‖A^{1/2} − B^{1/2} Q‖_F` with `Q` the orthogonal polar
/// factor of `B^{1/2} A^{1/2}`: the identity
/// `tr (A^{1/2} B A^{1/2})^{1/2} = max_Q tr(Qᵀ B^{1/2} A^{1/2})` makes both
/// expressions equal, and the Frobenius form has no cancellation when the
/// two covariances are close. Singular or badly conditioned cross terms fall
/// back to the trace expression, clamped at zero.
fn bures_distance(dx: &SpectralDecomposition, a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    let n = a.dim();
    let root_a = dx.map_eigenvalues(|l| l.max(0.0).sqrt());
    let root_b = symmat::require_psd(b)?.map_eigenvalues(|l| l.max(0.0).sqrt());
    let m = symmat::matmul(root_b.as_slice(), root_a.as_slice(), n);
    let cross = SymMatrix::symmetrize_dense(n, &symmat::matmul(&symmat::transpose(&m, n), &m, n));
    let dc = symmat::eigh(&cross)?;

    if dc.min_eigenvalue() > dc.max_eigenvalue() / POLAR_MAX_CONDITION && dc.max_eigenvalue() > 0.0 {
        let inv_root = dc.map_eigenvalues(|l| 1.0 / l.sqrt());
        let mut q = symmat::matmul(&m, inv_root.as_slice(), n);
        // Newton–Schulz: Q ← Q (3I − QᵀQ) / 2 polishes orthogonality
        for _ in 0..3 {
            let qtq = symmat::matmul(&symmat::transpose(&q, n), &q, n);
            let mut step = qtq;
            for (k, v) in step.iter_mut().enumerate() {
                *v = if k % (n + 1) == 0 { 1.5 - 0.5 * *v } else { -0.5 * *v };
            }
            q = symmat::matmul(&q, &step, n);
        }
        let bq = symmat::matmul(root_b.as_slice(), &q, n);
        let sq: f64 = root_a
            .as_slice()
            .iter()
            .zip(&bq)
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        return Ok(sq.sqrt());
    }

    let cross_root_trace: f64 = dc.eigenvalues().iter().map(|l| l.max(0.0).sqrt()).sum();
    let value = a.trace() + b.trace() - 2.0 * cross_root_trace;
    // exact value is non-negative; only roundoff can push it below zero
    Ok(value.max(0.0).sqrt())
}

/// Exact 2-Wasserstein distance between two zero-mean elliptical laws that
/// share a density generator, `sqrt(tr[Σx + Σy − 2(Σx^{1/2} Σy Σx^{1/2})^{1/2}])`.
/// Both covariances must be positive definite.
pub fn w2_closed(sigma_x: &SymMatrix, sigma_y: &SymMatrix) -> Result<f64> {
    check_dims(sigma_x, sigma_y)?;
    let dx = require_pd(sigma_x)?;
    require_pd(sigma_y)?;
    bures_distance(&dx, sigma_x, sigma_y)
}

/// Lower bound on the 2-Wasserstein distance between any two zero-mean
/// laws with covariances `Σx` and `Σy` (semidefinite allowed). Same formula
/// as [`w2_closed`].
pub fn gelbrich_bound(sigma_x: &SymMatrix, sigma_y: &SymMatrix) -> Result<f64> {
    check_dims(sigma_x, sigma_y)?;
    let dx = require_psd(sigma_x)?;
    bures_distance(&dx, sigma_x, sigma_y)
}

fn check_open_exponent(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::BadExponent(q))
    }
}

/// `Σ_i (Σ_ii)^q − tr(Σ^q)`; non-negative, and zero exactly for diagonal `Σ`.
pub fn trace_power_gap(sigma: &SymMatrix, q: f64) -> Result<f64> {
    check_open_exponent(q)?;
    let d = require_pd(sigma)?;
    let spectral: f64 = d.eigenvalues().iter().map(|l| l.max(0.0).powf(q)).sum();
    let diagonal: f64 = sigma.diagonal().iter().map(|v| v.powf(q)).sum();
    Ok(diagonal - spectral)
}

/// `Σ_i sqrt(Σ_ii) − tr(Σ^{1/2})`.
pub fn trace_sqrt_gap(sigma: &SymMatrix) -> Result<f64> {
    let d = require_pd(sigma)?;
    let spectral: f64 = d.eigenvalues().iter().map(|l| l.max(0.0).sqrt()).sum();
    let diagonal: f64 = sigma.diagonal().iter().map(|v| v.sqrt()).sum();
    Ok(diagonal - spectral)
}

/// Both sides of Klein's inequality for `f(x) = −x^{1/2}` at `(Σ, Λ)`, with
/// `Λ = diag(Σ)`:
///
/// * `lhs = tr(Λ^{1/2} − Σ^{1/2})`
/// * `rhs = tr[(Σ − Λ) · (−½ Λ^{−1/2})]`
///
/// `rhs` vanishes because `Σ − Λ` has a zero diagonal and `Λ^{−1/2}` is
/// diagonal, so `lhs ≥ 0` follows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KleinResidual {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn klein_residual(sigma: &SymMatrix) -> Result<KleinResidual> {
    let lhs = trace_sqrt_gap(sigma)?;
    let n = sigma.dim();
    let lambda = SymMatrix::from_diagonal(&sigma.diagonal());
    let diff = sigma.sub(&lambda);
    // dense −½ Λ^{−1/2}
    let mut fprime = vec![0.0; n * n];
    for i in 0..n {
        fprime[i * n + i] = -0.5 / sigma[(i, i)].sqrt();
    }
    let prod = symmat::matmul(diff.as_slice(), &fprime, n);
    let rhs = (0..n).map(|i| prod[i * n + i]).sum();
    Ok(KleinResidual { lhs, rhs })
}

/// `sqrt(Σ_i (sqrt(dx_i) − sqrt(dy_i))²)` with positional pairing.
pub fn diag_bound(dx: &VarianceVector, dy: &VarianceVector) -> Result<f64> {
    if dx.len() != dy.len() {
        return Err(Error::DimMismatch {
            left: dx.len(),
            right: dy.len(),
        });
    }
    Ok(paired_root_distance(dx.as_slice(), dy.as_slice()))
}

fn paired_root_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x.max(0.0).sqrt() - y.max(0.0).sqrt();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Output of [`eigenbasis_bound`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenbasisBound {
    pub bound: f64,
    /// Diagonal of `U_xᵀ Σy U_x`, in the eigenvalue order of `Σx`.
    pub rotated_diag: VarianceVector,
}

/// Rotates `Σy` into the eigenbasis of `Σx` and compares the spectrum of
/// `Σx` with the rotated diagonal:
/// `sqrt(Σ_i (λ_i^{1/2} − (U_xᵀ Σy U_x)_ii^{1/2})²)`.
///
/// Never exceeds [`gelbrich_bound`]. When `Σx` has repeated eigenvalues the
/// eigenbasis is not unique; the value then depends on the eigenvector
/// convention of [`eigh`](crate::symmat::eigh) but remains a valid lower bound.
pub fn eigenbasis_bound(sigma_x: &SymMatrix, sigma_y: &SymMatrix) -> Result<EigenbasisBound> {
    check_dims(sigma_x, sigma_y)?;
    let dx = require_pd(sigma_x)?;
    require_psd(sigma_y)?;
    let rotated = sigma_y.congruence_t(dx.eigenvectors());
    let rotated_diag = VarianceVector::from_diagonal_clamped(rotated.diagonal());
    let bound = paired_root_distance(dx.eigenvalues(), rotated_diag.as_slice());
    Ok(EigenbasisBound {
        bound,
        rotated_diag,
    })
}

/// `U_x · diag(target) · U_xᵀ`: the covariance whose rotated diagonal is
/// `target` and for which the eigenbasis bound is attained.
pub fn minimizer_covariance(sigma_x: &SymMatrix, target: &VarianceVector) -> Result<SymMatrix> {
    if sigma_x.dim() != target.len() {
        return Err(Error::DimMismatch {
            left: sigma_x.dim(),
            right: target.len(),
        });
    }
    let dx = require_pd(sigma_x)?;
    let diag = SymMatrix::from_diagonal(target.as_slice());
    Ok(diag.congruence(dx.eigenvectors()))
}

/// Every distance and bound for one covariance pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    /// Exact distance, present when both laws share a density generator.
    pub closed_form: Option<f64>,
    pub gelbrich: f64,
    pub eigenbasis_bound: f64,
    /// Present when `Σx` is diagonal.
    pub diag_bound: Option<f64>,
    pub rotated_diag: VarianceVector,
}

pub fn full_report(
    sigma_x: &SymMatrix,
    sigma_y: &SymMatrix,
    same_generator: bool,
) -> Result<BoundReport> {
    check_dims(sigma_x, sigma_y)?;
    require_pd(sigma_x)?;
    let gelbrich = gelbrich_bound(sigma_x, sigma_y)?;
    let closed_form = if same_generator {
        require_pd(sigma_y)?;
        Some(gelbrich)
    } else {
        None
    };
    let eb = eigenbasis_bound(sigma_x, sigma_y)?;
    let diag_bound = if sigma_x.is_diagonal() {
        let dx = VarianceVector::new(sigma_x.diagonal())?;
        let dy = VarianceVector::new(sigma_y.diagonal())?;
        Some(diag_bound(&dx, &dy)?)
    } else {
        None
    };
    Ok(BoundReport {
        closed_form,
        gelbrich,
        eigenbasis_bound: eb.bound,
        diag_bound,
        rotated_diag: eb.rotated_diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn vv(v: &[f64]) -> VarianceVector {
        VarianceVector::new(v.to_vec()).unwrap()
    }

    /// Independent 2x2 route: tr((A^{1/2} B A^{1/2})^{1/2}) =
    /// sqrt(tr(AB) + 2 sqrt(det A det B)).
    fn w2_2x2_oracle(a: &SymMatrix, b: &SymMatrix) -> f64 {
        let tr_ab = a[(0, 0)] * b[(0, 0)] + 2.0 * a[(0, 1)] * b[(0, 1)] + a[(1, 1)] * b[(1, 1)];
        let det = |x: &SymMatrix| x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
        let cross = (tr_ab + 2.0 * (det(a) * det(b)).sqrt()).sqrt();
        (a.trace() + b.trace() - 2.0 * cross).max(0.0).sqrt()
    }

    /// Eigenvalues of a 2x2 symmetric matrix by the quadratic formula.
    fn eig_2x2(a: &SymMatrix) -> (f64, f64) {
        let half_tr = 0.5 * a.trace();
        let disc = (0.25 * (a[(0, 0)] - a[(1, 1)]).powi(2) + a[(0, 1)].powi(2)).sqrt();
        (half_tr + disc, half_tr - disc)
    }

    #[test]
    fn w2_closed_examples() {
        let one_d = w2_closed(&m(&[&[4.0]]), &m(&[&[1.0]])).unwrap();
        assert!((one_d - 1.0).abs() < 1e-15);

        let a = m(&[&[3.0, 0.5], &[0.5, 1.0]]);
        assert!(w2_closed(&a, &a).unwrap() < 1e-7);

        let d = w2_closed(
            &SymMatrix::from_diagonal(&[1.0, 4.0]),
            &SymMatrix::from_diagonal(&[9.0, 16.0]),
        )
        .unwrap();
        assert!((d - 2.0 * 2f64.sqrt()).abs() < 1e-14);

        let b = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let v = w2_closed(&SymMatrix::identity(2), &b).unwrap();
        let expected = (6.0 - 2.0 - 2.0 * 3f64.sqrt()).sqrt();
        assert!((v - expected).abs() < 1e-12, "{v} vs {expected}");
        assert!((expected - (3f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((v - w2_2x2_oracle(&SymMatrix::identity(2), &b)).abs() < 1e-12);
    }

    #[test]
    fn w2_closed_errors() {
        let i2 = SymMatrix::identity(2);
        let i3 = SymMatrix::identity(3);
        assert_eq!(
            w2_closed(&i2, &i3),
            Err(Error::DimMismatch { left: 2, right: 3 })
        );
        let singular = m(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(w2_closed(&i2, &singular), Err(Error::NotPd { .. })));
        // the Gelbrich bound accepts semidefinite input
        assert!(gelbrich_bound(&i2, &singular).is_ok());
        let indefinite = SymMatrix::from_diagonal(&[1.0, -1.0]);
        assert!(matches!(gelbrich_bound(&i2, &indefinite), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn gelbrich_examples() {
        let a = m(&[&[2.0, 0.3], &[0.3, 1.0]]);
        assert!(gelbrich_bound(&a, &a).unwrap() < 1e-7);
        assert!((gelbrich_bound(&m(&[&[1.0]]), &m(&[&[4.0]])).unwrap() - 1.0).abs() < 1e-15);
        let g = gelbrich_bound(&SymMatrix::identity(2), &m(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        assert!((g - (3f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn w2_matches_2x2_oracle_on_random_pairs() {
        let mut s = 11u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let mut draw = || {
                let (a, c) = (0.2 + 3.0 * next(), 0.2 + 3.0 * next());
                let b = (2.0 * next() - 1.0) * 0.9 * (a * c).sqrt();
                m(&[&[a, b], &[b, c]])
            };
            let (a, b) = (draw(), draw());
            let got = w2_closed(&a, &b).unwrap();
            let want = w2_2x2_oracle(&a, &b);
            assert!((got - want).abs() <= 1e-9 * (1.0 + want), "{got} vs {want}");
        }
    }

    #[test]
    fn polar_route_matches_trace_route() {
        // the trace expression, evaluated directly, as an independent route
        let trace_route = |a: &SymMatrix, b: &SymMatrix| {
            let root = symmat::matrix_power_psd(a, 0.5).unwrap();
            let cross = b.congruence(root.as_slice());
            let t = symmat::trace_power(&cross, 0.5).unwrap();
            (a.trace() + b.trace() - 2.0 * t).max(0.0).sqrt()
        };
        for seed in 0..200u64 {
            let n = 1 + (seed % 6) as usize;
            let a = crate::elliptical::random_pd(n, seed, 1e3);
            let b = crate::elliptical::random_pd(n, seed + 1000, 1e3);
            let polar = w2_closed(&a, &b).unwrap();
            let trace = trace_route(&a, &b);
            assert!((polar - trace).abs() <= 1e-7 * (1.0 + trace), "{polar} vs {trace}");
        }
    }

    #[test]
    fn singular_cross_term_uses_trace_route() {
        let g = gelbrich_bound(&SymMatrix::identity(2), &SymMatrix::from_diagonal(&[1.0, 0.0])).unwrap();
        assert!((g - 1.0).abs() < 1e-12);
        let g = gelbrich_bound(&SymMatrix::from_diagonal(&[0.0, 4.0]), &SymMatrix::from_diagonal(&[9.0, 1.0])).unwrap();
        assert!((g - (9.0f64 + 1.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn trace_sqrt_gap_examples() {
        assert!(trace_sqrt_gap(&SymMatrix::from_diagonal(&[1.0, 4.0])).unwrap().abs() < 1e-15);
        assert!(trace_sqrt_gap(&SymMatrix::identity(5)).unwrap().abs() < 1e-15);
        let a = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let (l1, l2) = eig_2x2(&a);
        let expected = 2.0 * 2f64.sqrt() - (l1.sqrt() + l2.sqrt());
        let gap = trace_sqrt_gap(&a).unwrap();
        assert!((gap - expected).abs() < 1e-14);
        assert!((gap - 0.0963).abs() < 1e-4);
        assert!(matches!(
            trace_sqrt_gap(&SymMatrix::from_diagonal(&[1.0, 0.0])),
            Err(Error::NotPd { .. })
        ));
    }

    #[test]
    fn trace_power_gap_examples() {
        let d = SymMatrix::from_diagonal(&[2.0, 5.0]);
        assert!(trace_power_gap(&d, 0.3).unwrap().abs() < 1e-14);
        let a = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let half = trace_power_gap(&a, 0.5).unwrap();
        assert!((half - trace_sqrt_gap(&a).unwrap()).abs() < 1e-15);
        let quarter = trace_power_gap(&a, 0.25).unwrap();
        let expected = 2.0 * 2f64.powf(0.25) - (1.0 + 3f64.powf(0.25));
        assert!((quarter - expected).abs() < 1e-14);
        assert!((quarter - 0.0624).abs() < 1e-4);
        let via_power = 2.0 * 2f64.powf(0.25) - symmat::matrix_power_psd(&a, 0.25).unwrap().trace();
        assert!((quarter - via_power).abs() < 1e-14);
        for q in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(matches!(trace_power_gap(&a, q), Err(Error::BadExponent(_))));
        }
    }

    #[test]
    fn klein_examples() {
        let k = klein_residual(&SymMatrix::from_diagonal(&[1.0, 9.0])).unwrap();
        assert_eq!(k.rhs, 0.0);
        assert!(k.lhs.abs() < 1e-15);

        let a = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let k = klein_residual(&a).unwrap();
        assert_eq!(k.rhs, 0.0);
        assert!((k.lhs - trace_sqrt_gap(&a).unwrap()).abs() < 1e-15);

        let t = m(&[&[4.0, 1.0, 0.0], &[1.0, 4.0, 1.0], &[0.0, 1.0, 4.0]]);
        let k = klein_residual(&t).unwrap();
        assert!(k.rhs.abs() <= 1e-10 * (1.0 + t.max_abs()));
        assert!(k.lhs > 0.0);
        // eigenvalues 4, 4 ± √2
        let s2 = 2f64.sqrt();
        let expected = 3.0 * 2.0 - (2.0 + (4.0 + s2).sqrt() + (4.0 - s2).sqrt());
        assert!((k.lhs - expected).abs() < 1e-13);
    }

    #[test]
    fn diag_bound_examples() {
        let b = diag_bound(&vv(&[1.0, 4.0]), &vv(&[9.0, 16.0])).unwrap();
        assert!((b - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(diag_bound(&vv(&[2.0, 3.0]), &vv(&[2.0, 3.0])).unwrap(), 0.0);
        let b = diag_bound(&vv(&[1.0, 1.0]), &vv(&[4.0, 9.0])).unwrap();
        assert!((b - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            diag_bound(&vv(&[1.0]), &vv(&[1.0, 2.0])),
            Err(Error::DimMismatch { left: 1, right: 2 })
        );
        assert_eq!(
            VarianceVector::new(vec![1.0, 0.0]),
            Err(Error::NonPositiveVariance { index: 1, value: 0.0 })
        );
    }

    #[test]
    fn eigenbasis_examples() {
        let i2 = SymMatrix::identity(2);
        let r = eigenbasis_bound(&i2, &i2).unwrap();
        assert_eq!(r.bound, 0.0);
        assert_eq!(r.rotated_diag.as_slice(), &[1.0, 1.0]);

        // eigen order of diag(1,4) is (4,1); U is a permutation
        let y = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let r = eigenbasis_bound(&SymMatrix::from_diagonal(&[1.0, 4.0]), &y).unwrap();
        let s2 = 2f64.sqrt();
        let expected = ((1.0 - s2).powi(2) + (2.0 - s2).powi(2)).sqrt();
        assert!((r.bound - expected).abs() < 1e-15);
        assert!((r.bound - 0.7174).abs() < 1e-3);
        assert_eq!(r.rotated_diag.as_slice(), &[2.0, 2.0]);

        let x = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let y = minimizer_covariance(&x, &vv(&[1.0, 1.0])).unwrap();
        let eb = eigenbasis_bound(&x, &y).unwrap().bound;
        let g = gelbrich_bound(&x, &y).unwrap();
        assert!((eb - g).abs() < 1e-8);
    }

    #[test]
    fn minimizer_examples() {
        let r = minimizer_covariance(&SymMatrix::identity(2), &vv(&[1.0, 4.0])).unwrap();
        assert_eq!(r, SymMatrix::from_diagonal(&[1.0, 4.0]));

        let r = minimizer_covariance(&SymMatrix::from_diagonal(&[4.0, 1.0]), &vv(&[9.0, 25.0])).unwrap();
        assert_eq!(r, SymMatrix::from_diagonal(&[9.0, 25.0]));
        // ascending input: the variance-4 coordinate is second and gets 9
        let r = minimizer_covariance(&SymMatrix::from_diagonal(&[1.0, 4.0]), &vv(&[9.0, 25.0])).unwrap();
        assert_eq!(r, SymMatrix::from_diagonal(&[25.0, 9.0]));

        let x = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let r = minimizer_covariance(&x, &vv(&[1.0, 1.0])).unwrap();
        assert!(r.max_abs_diff(&SymMatrix::identity(2)) < 1e-15);

        let r = minimizer_covariance(&x, &vv(&[1.0, 9.0])).unwrap();
        assert!(!r.is_diagonal());
        let (l1, l2) = eig_2x2(&r);
        assert!((l1 - 9.0).abs() < 1e-13 && (l2 - 1.0).abs() < 1e-13);

        assert!(matches!(
            minimizer_covariance(&x, &vv(&[1.0])),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn report_examples() {
        let i3 = SymMatrix::identity(3);
        let r = full_report(&i3, &i3, true).unwrap();
        assert_eq!(r.closed_form, Some(0.0));
        assert_eq!(r.gelbrich, 0.0);
        assert_eq!(r.eigenbasis_bound, 0.0);
        assert_eq!(r.diag_bound, Some(0.0));
        assert_eq!(r.rotated_diag.as_slice(), &[1.0; 3]);

        let x = SymMatrix::from_diagonal(&[1.0, 4.0]);
        let y = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let r = full_report(&x, &y, false).unwrap();
        assert!(r.closed_form.is_none());
        assert!(r.gelbrich >= r.eigenbasis_bound - 1e-9);
        let db = r.diag_bound.unwrap();
        assert!((db - r.eigenbasis_bound).abs() < 1e-10);

        let r = full_report(&y, &x, true).unwrap();
        assert!(r.diag_bound.is_none());
        assert_eq!(r.closed_form, Some(r.gelbrich));
    }
}
