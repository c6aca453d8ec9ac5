//! Pilot runs for the empirical-distance envelopes used by `verify`.
//!
//! Prints, per pilot seed, the ratio of the mean empirical distance over 20
//! trials (n = 512) to the closed form, plus the per-trial extremes.

use bures::experiment::{run_trials, Law};
use bures::{w2_closed, EllipticalSpec, Generator, SymMatrix};

fn main() {
    let cov_x = SymMatrix::from_diagonal(&[1.0, 4.0]);
    let cov_y = SymMatrix::from_diagonal(&[4.0, 1.0]);
    let closed = w2_closed(&cov_x, &cov_y).unwrap();
    for (label, generator) in [
        ("gaussian", Generator::Gaussian),
        ("student-t(6)", Generator::student_t(6.0).unwrap()),
    ] {
        let x: Law = EllipticalSpec::new(generator, cov_x.clone()).unwrap().into();
        let y: Law = EllipticalSpec::new(generator, cov_y.clone()).unwrap().into();
        for pilot in 0..5u64 {
            let seed = 0xA11CE ^ (pilot << 40);
            let trials = run_trials(&x, &y, 512, seed, 20).unwrap();
            let ratios: Vec<f64> = trials.iter().map(|t| t.empirical / closed).collect();
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().cloned().fold(0.0, f64::max);
            println!("{label} pilot {pilot}: mean ratio {mean:.4}, trial range [{lo:.4}, {hi:.4}]");
        }
    }
}
