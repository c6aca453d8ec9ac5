//! Browser bindings for two-dimensional covariances.
//!
//! A covariance is given by its two standard deviations and a correlation,
//! which maps directly onto slider controls. Every exported function returns
//! a JSON string; failures come back as `{"error": "..."}`.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use bures::experiment::{run_trial, Law};
use bures::{
    assignment_min, cost_matrix, eigh, full_report, gelbrich_bound, minimizer_covariance, sample_covariance,
    EllipticalSpec, Generator, SymMatrix, VarianceVector,
};

/// Largest point count the page may request; keeps the assignment fast.
pub const MAX_POINTS: usize = 400;

/// `[[sx², ρ·sx·sy], [ρ·sx·sy, sy²]]`.
pub fn covariance(sx: f64, sy: f64, rho: f64) -> Result<SymMatrix, String> {
    if !(sx > 0.0 && sy > 0.0) {
        return Err("standard deviations must be positive".into());
    }
    if !(rho > -1.0 && rho < 1.0) {
        return Err("correlation must lie strictly between -1 and 1".into());
    }
    let c = rho * sx * sy;
    SymMatrix::from_rows(&[vec![sx * sx, c], vec![c, sy * sy]]).map_err(|e| e.to_string())
}

/// One-sigma ellipse: semi-axes and the angle of the major axis in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ellipse {
    pub major: f64,
    pub minor: f64,
    pub angle: f64,
}

pub fn ellipse(sigma: &SymMatrix) -> Result<Ellipse, String> {
    let d = eigh(sigma).map_err(|e| e.to_string())?;
    let v = d.eigenvector(0);
    Ok(Ellipse {
        major: d.eigenvalues()[0].max(0.0).sqrt(),
        minor: d.eigenvalues()[1].max(0.0).sqrt(),
        angle: v[1].atan2(v[0]),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsView {
    pub closed_form: Option<f64>,
    pub gelbrich: f64,
    pub eigenbasis_bound: f64,
    pub diag_bound: Option<f64>,
    pub a: Ellipse,
    pub b: Ellipse,
    /// Covariance with B's variances in A's eigenbasis; its distance to A
    /// is the eigenbasis bound.
    pub minimizer: Ellipse,
    pub minimizer_matrix: Vec<Vec<f64>>,
}

pub fn bounds_view(a: &SymMatrix, b: &SymMatrix, same_generator: bool) -> Result<BoundsView, String> {
    let r = full_report(a, b, same_generator).map_err(|e| e.to_string())?;
    let target = VarianceVector::new(r.rotated_diag.as_slice().to_vec()).map_err(|e| e.to_string())?;
    let m = minimizer_covariance(a, &target).map_err(|e| e.to_string())?;
    Ok(BoundsView {
        closed_form: r.closed_form,
        gelbrich: r.gelbrich,
        eigenbasis_bound: r.eigenbasis_bound,
        diag_bound: r.diag_bound,
        a: ellipse(a)?,
        b: ellipse(b)?,
        minimizer: ellipse(&m)?,
        minimizer_matrix: m.to_rows(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizerView {
    pub matrix: Vec<Vec<f64>>,
    pub ellipse: Ellipse,
    pub distance: f64,
}

pub fn minimizer_view(a: &SymMatrix, target: &[f64]) -> Result<MinimizerView, String> {
    let t = VarianceVector::new(target.to_vec()).map_err(|e| e.to_string())?;
    let m = minimizer_covariance(a, &t).map_err(|e| e.to_string())?;
    Ok(MinimizerView {
        distance: gelbrich_bound(a, &m).map_err(|e| e.to_string())?,
        ellipse: ellipse(&m)?,
        matrix: m.to_rows(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalView {
    pub x: Vec<[f64; 2]>,
    pub y: Vec<[f64; 2]>,
    /// `x[i]` is matched to `y[matching[i]]`.
    pub matching: Vec<usize>,
    pub empirical: f64,
    pub closed_form: f64,
    pub gelbrich_centered: f64,
    pub sample_a: Ellipse,
    pub sample_b: Ellipse,
}

pub fn empirical_view(
    a: &SymMatrix,
    b: &SymMatrix,
    generator: Generator,
    n: usize,
    seed: u64,
) -> Result<EmpiricalView, String> {
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(format!("point count must lie in 2..={MAX_POINTS}"));
    }
    let err = |e: bures::Error| e.to_string();
    let x: Law = EllipticalSpec::new(generator, a.clone()).map_err(err)?.into();
    let y: Law = EllipticalSpec::new(generator, b.clone()).map_err(err)?.into();
    // same draws as the trial itself
    let xs = x.sample_stream(n, seed, 0).map_err(err)?;
    let ys = y.sample_stream(n, seed, 1).map_err(err)?;
    let trial = run_trial(&x, &y, n, seed).map_err(err)?;
    let matching = assignment_min(&cost_matrix(&xs, &ys).map_err(err)?).perm;
    let pts = |s: &bures::SampleSet| s.rows().map(|r| [r[0], r[1]]).collect::<Vec<_>>();
    Ok(EmpiricalView {
        x: pts(&xs),
        y: pts(&ys),
        matching,
        empirical: trial.empirical,
        closed_form: gelbrich_bound(a, b).map_err(err)?,
        gelbrich_centered: trial.gelbrich_centered,
        sample_a: ellipse(&sample_covariance(&xs, true).map_err(err)?)?,
        sample_b: ellipse(&sample_covariance(&ys, true).map_err(err)?)?,
    })
}

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v),
        Err(e) => serde_json::to_string(&serde_json::json!({ "error": e })),
    }
    .expect("view serializes")
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn bounds(ax: f64, ay: f64, arho: f64, bx: f64, by: f64, brho: f64, same_generator: bool) -> String {
    respond((|| bounds_view(&covariance(ax, ay, arho)?, &covariance(bx, by, brho)?, same_generator))())
}

#[wasm_bindgen]
pub fn minimizer(ax: f64, ay: f64, arho: f64, t1: f64, t2: f64) -> String {
    respond((|| minimizer_view(&covariance(ax, ay, arho)?, &[t1, t2]))())
}

/// `df <= 0` selects the Gaussian generator, anything else Student-t.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn empirical(ax: f64, ay: f64, arho: f64, bx: f64, by: f64, brho: f64, df: f64, n: u32, seed: u32) -> String {
    respond((|| {
        let g = if df <= 0.0 {
            Generator::Gaussian
        } else {
            Generator::student_t(df).map_err(|e| e.to_string())?
        };
        empirical_view(&covariance(ax, ay, arho)?, &covariance(bx, by, brho)?, g, n as usize, seed as u64)
    })())
}
