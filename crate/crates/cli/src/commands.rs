use std::fs;
use std::path::Path;

use bures::csvio::parse_sym_matrix;
use bures::discrete_ot::EMPIRICAL_CAP;
use bures::experiment::{run_trials, Law};
use bures::verify::{self, Check, VerifyConfig};
use bures::{
    eigenbasis_bound, full_report, gelbrich_bound, minimizer_covariance, EllipticalSpec, Generator, SymMatrix,
    VarianceVector,
};

use crate::report::{EmpiricalSummary, Inputs, Report};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GeneratorArg {
    Gaussian,
    #[value(name = "student-t")]
    StudentT,
}

fn read_covariance(path: &Path) -> Result<SymMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_sym_matrix(&text).map_err(|e| match CliError::from(e) {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn same_dim(a: &SymMatrix, b: &SymMatrix) -> Result<(), CliError> {
    if a.dim() != b.dim() {
        return Err(CliError::Invalid(format!(
            "covariances differ in dimension: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// `bounds`: every bound for one covariance pair.
pub fn cmd_bounds(cov_a: &Path, cov_b: &Path, same_generator: bool) -> Result<Report, CliError> {
    let a = read_covariance(cov_a)?;
    let b = read_covariance(cov_b)?;
    same_dim(&a, &b)?;
    let r = full_report(&a, &b, same_generator)?;

    let mut checks = vec![Check::ge(
        "gelbrich_ge_eigenbasis_bound",
        r.gelbrich,
        r.eigenbasis_bound,
        1e-9,
    )];
    if let Some(closed) = r.closed_form {
        checks.push(Check::le(
            "closed_form_equals_gelbrich",
            (closed - r.gelbrich).abs(),
            0.0,
            1e-12 * r.gelbrich.max(1.0),
        ));
    }
    if let Some(db) = r.diag_bound {
        checks.push(Check::ge("gelbrich_ge_diag_bound", r.gelbrich, db, 1e-9));
    }

    Ok(Report {
        inputs: Inputs {
            command: "bounds".into(),
            cov_a: Some(cov_a.display().to_string()),
            cov_b: Some(cov_b.display().to_string()),
            dim: Some(a.dim()),
            same_generator: Some(same_generator),
            ..Inputs::default()
        },
        closed_form: r.closed_form,
        gelbrich: Some(r.gelbrich),
        eigenbasis_bound: Some(r.eigenbasis_bound),
        diag_bound: r.diag_bound,
        rotated_diag: r.rotated_diag.into_vec(),
        checks,
        ..Report::default()
    })
}

/// Parses a comma-separated list of variances.
pub fn parse_target(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(|f| {
            let f = f.trim();
            f.parse::<f64>()
                .map_err(|_| CliError::Parse(format!("target: not a number: {f:?}")))
        })
        .collect()
}

/// `minimizer`: the covariance attaining the eigenbasis bound for `target`.
pub fn cmd_minimizer(cov_a: &Path, target: &[f64]) -> Result<Report, CliError> {
    let a = read_covariance(cov_a)?;
    if target.len() != a.dim() {
        return Err(CliError::Invalid(format!(
            "target has {} entries, covariance has dimension {}",
            target.len(),
            a.dim()
        )));
    }
    let target_vv = VarianceVector::new(target.to_vec())?;
    let minimizer = minimizer_covariance(&a, &target_vv)?;
    let g = gelbrich_bound(&a, &minimizer)?;
    let eb = eigenbasis_bound(&a, &minimizer)?;
    let checks = vec![Check::le(
        "equality_gap",
        (g - eb.bound).abs(),
        0.0,
        1e-8 * (1.0 + g),
    )];
    Ok(Report {
        inputs: Inputs {
            command: "minimizer".into(),
            cov_a: Some(cov_a.display().to_string()),
            dim: Some(a.dim()),
            target: Some(target.to_vec()),
            ..Inputs::default()
        },
        gelbrich: Some(g),
        eigenbasis_bound: Some(eb.bound),
        rotated_diag: eb.rotated_diag.into_vec(),
        minimizer: Some(minimizer.to_rows()),
        checks,
        ..Report::default()
    })
}

pub struct EmpiricalArgs<'a> {
    pub cov_a: &'a Path,
    pub cov_b: &'a Path,
    pub generator: GeneratorArg,
    pub df: Option<f64>,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
}

/// `empirical`: sampled distances against the closed form and the Gelbrich
/// bound of the sample covariances. Trial `t` uses seed `seed ^ t`.
pub fn cmd_empirical(args: &EmpiricalArgs<'_>) -> Result<Report, CliError> {
    if args.n > EMPIRICAL_CAP {
        return Err(CliError::TooLarge(format!(
            "--n {} exceeds the cap of {EMPIRICAL_CAP}",
            args.n
        )));
    }
    if args.n < 2 {
        return Err(CliError::Invalid("--n must be at least 2".into()));
    }
    if args.trials == 0 {
        return Err(CliError::Invalid("--trials must be at least 1".into()));
    }
    let generator = match args.generator {
        GeneratorArg::Gaussian => Generator::Gaussian,
        GeneratorArg::StudentT => {
            let df = args
                .df
                .ok_or_else(|| CliError::Invalid("--df is required for student-t".into()))?;
            Generator::student_t(df)?
        }
    };
    let a = read_covariance(args.cov_a)?;
    let b = read_covariance(args.cov_b)?;
    same_dim(&a, &b)?;
    let r = full_report(&a, &b, true)?;

    let x: Law = EllipticalSpec::new(generator, a.clone())?.into();
    let y: Law = EllipticalSpec::new(generator, b.clone())?.into();
    let trials = run_trials(&x, &y, args.n, args.seed, args.trials)?;

    let values: Vec<f64> = trials.iter().map(|t| t.empirical).collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let checks = trials
        .iter()
        .enumerate()
        .map(|(t, o)| {
            Check::ge(
                format!("trial[{t}].empirical_ge_gelbrich_centered"),
                o.empirical,
                o.gelbrich_centered,
                1e-8,
            )
        })
        .collect();

    Ok(Report {
        inputs: Inputs {
            command: "empirical".into(),
            cov_a: Some(args.cov_a.display().to_string()),
            cov_b: Some(args.cov_b.display().to_string()),
            dim: Some(a.dim()),
            same_generator: Some(true),
            seed: Some(args.seed),
            ..Inputs::default()
        },
        closed_form: r.closed_form,
        gelbrich: Some(r.gelbrich),
        eigenbasis_bound: Some(r.eigenbasis_bound),
        diag_bound: r.diag_bound,
        rotated_diag: r.rotated_diag.into_vec(),
        empirical: Some(EmpiricalSummary {
            n: args.n,
            seed: args.seed,
            generator: generator.name().into(),
            df: match generator {
                Generator::StudentT { df } => Some(df),
                Generator::Gaussian => None,
            },
            trials: args.trials,
            value: mean,
            min,
            max,
            per_trial: trials,
        }),
        checks,
        ..Report::default()
    })
}

/// `verify`: the full seeded property and acceptance suite.
pub fn cmd_verify(seed: u64, quick: bool) -> Result<Report, CliError> {
    let v = verify::run(VerifyConfig { seed, quick })?;
    Ok(Report {
        inputs: Inputs {
            command: "verify".into(),
            seed: Some(seed),
            quick: Some(quick),
            ..Inputs::default()
        },
        checks: v.checks,
        ..Report::default()
    })
}
