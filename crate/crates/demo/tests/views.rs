use bures_demo::{bounds, covariance, ellipse, empirical, empirical_view, minimizer, minimizer_view};
use bures::{Generator, SymMatrix};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn covariance_from_sliders() {
    let c = covariance(1.0, 2.0, 0.5).unwrap();
    assert_eq!(c.to_rows(), vec![vec![1.0, 1.0], vec![1.0, 4.0]]);
    assert!(covariance(0.0, 1.0, 0.0).is_err());
    assert!(covariance(1.0, 1.0, 1.0).is_err());
}

#[test]
fn ellipse_of_rotated_matrix() {
    let e = ellipse(&SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap()).unwrap();
    assert!((e.major - 3f64.sqrt()).abs() < 1e-12);
    assert!((e.minor - 1.0).abs() < 1e-12);
    assert!((e.angle - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
}

#[test]
fn bounds_json() {
    let v = parse(&bounds(1.0, 1.0, 0.0, 2f64.sqrt(), 2f64.sqrt(), 0.5, true));
    let g = v["gelbrich"].as_f64().unwrap();
    assert!((g - (3f64.sqrt() - 1.0)).abs() < 1e-12);
    assert_eq!(v["closed_form"].as_f64(), Some(g));
    assert!(g >= v["eigenbasis_bound"].as_f64().unwrap() - 1e-9);
    let err = parse(&bounds(1.0, 1.0, 0.0, 1.0, 1.0, 1.5, true));
    assert!(err["error"].is_string());
}

#[test]
fn minimizer_attains_bound() {
    let a = covariance(1.0, 2.0, 0.7).unwrap();
    let m = minimizer_view(&a, &[0.5, 3.0]).unwrap();
    let direct = bures::eigenbasis_bound(&a, &SymMatrix::from_rows(&m.matrix).unwrap()).unwrap();
    assert!((m.distance - direct.bound).abs() < 1e-8);
    assert!(parse(&minimizer(1.0, 1.0, 0.0, -1.0, 1.0))["error"].is_string());
}

#[test]
fn empirical_matches_trial() {
    let a = covariance(1.0, 2.0, 0.0).unwrap();
    let b = covariance(2.0, 1.0, 0.3).unwrap();
    let v = empirical_view(&a, &b, Generator::Gaussian, 50, 3).unwrap();
    assert_eq!(v.x.len(), 50);
    let mut seen = v.matching.clone();
    seen.sort();
    assert_eq!(seen, (0..50).collect::<Vec<_>>());
    let cost: f64 = v
        .matching
        .iter()
        .enumerate()
        .map(|(i, &j)| (v.x[i][0] - v.y[j][0]).powi(2) + (v.x[i][1] - v.y[j][1]).powi(2))
        .sum();
    assert!(((cost / 50.0).sqrt() - v.empirical).abs() < 1e-12);
    assert!(v.empirical >= v.gelbrich_centered - 1e-8);

    assert_eq!(
        empirical(1.0, 2.0, 0.0, 2.0, 1.0, 0.3, 0.0, 50, 3),
        serde_json::to_string(&v).unwrap()
    );
    assert!(parse(&empirical(1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.5, 50, 3))["error"].is_string());
    assert!(parse(&empirical(1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 5000, 3))["error"].is_string());
}
