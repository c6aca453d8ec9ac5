use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bures_cli::commands::{parse_target, EmpiricalArgs};
use bures_cli::{cmd_bounds, cmd_empirical, cmd_minimizer, cmd_verify, CliError, GeneratorArg, Report};

/// Wasserstein-2 bounds for elliptical and arbitrary covariances.
#[derive(Debug, Parser)]
#[command(name = "bures", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed form, Gelbrich, eigenbasis and diagonal bounds for two covariances.
    Bounds {
        #[arg(long)]
        cov_a: PathBuf,
        #[arg(long)]
        cov_b: PathBuf,
        /// Both laws share a density generator (enables the closed form).
        #[arg(long)]
        same_generator: bool,
    },
    /// Covariance attaining the eigenbasis bound for the given variances.
    Minimizer {
        #[arg(long)]
        cov_a: PathBuf,
        /// Comma-separated positive variances, one per dimension.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Exact empirical distances between sampled point clouds.
    Empirical {
        #[arg(long)]
        cov_a: PathBuf,
        #[arg(long)]
        cov_b: PathBuf,
        #[arg(long, value_enum)]
        generator: GeneratorArg,
        /// Degrees of freedom (student-t only, > 2).
        #[arg(long, allow_hyphen_values = true)]
        df: Option<f64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
    },
    /// Runs every property suite and acceptance check.
    Verify {
        #[arg(long, default_value_t = bures::verify::DEFAULT_SEED)]
        seed: u64,
        /// Shrink corpora tenfold.
        #[arg(long)]
        quick: bool,
    },
}

fn run(cli: Cli) -> Result<(Report, bool), CliError> {
    match cli.command {
        Command::Bounds {
            cov_a,
            cov_b,
            same_generator,
        } => cmd_bounds(&cov_a, &cov_b, same_generator).map(|r| (r, false)),
        Command::Minimizer { cov_a, target } => {
            let target = parse_target(&target)?;
            cmd_minimizer(&cov_a, &target).map(|r| (r, false))
        }
        Command::Empirical {
            cov_a,
            cov_b,
            generator,
            df,
            n,
            seed,
            trials,
        } => cmd_empirical(&EmpiricalArgs {
            cov_a: &cov_a,
            cov_b: &cov_b,
            generator,
            df,
            n,
            seed,
            trials,
        })
        .map(|r| (r, false)),
        Command::Verify { seed, quick } => cmd_verify(seed, quick).map(|r| (r, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, gate)) => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
            if gate && !report.all_passed() {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!("FAILED {}: lhs {} rhs {} tolerance {}", c.name, c.lhs, c.rhs, c.tolerance);
                }
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
