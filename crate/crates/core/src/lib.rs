//! 2-Wasserstein geometry of zero-mean elliptical distributions.
//!
//! * [`symmat`]: symmetric matrices, Jacobi eigendecomposition, fractional powers.
//! * [`bures`]: the closed-form distance, the Gelbrich bound, the trace-power
//!   gaps, and the diagonal and eigenbasis bounds with their minimizer.
//! * [`elliptical`]: Gaussian / Student-t samplers with an exact covariance,
//!   covariance estimation, random test matrices.
//! * [`discrete_ot`]: exact assignment-based distance between point clouds,
//!   used as ground truth for everything above.
//! * [`verify`]: the seeded property and acceptance suite.
//!
//! ```
//! use bures::{gelbrich_bound, eigenbasis_bound, SymMatrix};
//!
//! let x = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
//! let y = SymMatrix::from_diagonal(&[1.0, 4.0]);
//! let g = gelbrich_bound(&x, &y).unwrap();
//! let e = eigenbasis_bound(&x, &y).unwrap();
//! assert!(g >= e.bound - 1e-9);
//! ```

pub mod bures;
pub mod csvio;
pub mod discrete_ot;
pub mod elliptical;
pub mod error;
pub mod experiment;
pub mod symmat;
pub mod verify;

pub use crate::bures::{
    diag_bound, eigenbasis_bound, full_report, gelbrich_bound, klein_residual, minimizer_covariance,
    trace_power_gap, trace_sqrt_gap, w2_closed, BoundReport, EigenbasisBound, KleinResidual, VarianceVector,
};
pub use crate::discrete_ot::{assignment_min, brute_force_min, cost_matrix, empirical_w2, Assignment, CostMatrix};
pub use crate::elliptical::{
    random_correlation, random_pd, sample, sample_covariance, EllipticalSpec, Generator, GaussianPairMixture,
    SampleSet,
};
pub use crate::error::{Error, Result};
pub use crate::symmat::{
    eigh, is_positive_definite, matrix_power_psd, trace_power, validate_symmetric, SpectralDecomposition,
    SymMatrix,
};
