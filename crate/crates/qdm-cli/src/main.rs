//! Batch front end: verification suites, evolution curves, singular-set
//! scans, Veronese residual tables and Chern integrals.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed,
//! 2 usage or configuration error.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use qdm_cli::batch::{self, InitialState, ModelKind};
use qdm_cli::report::{write_atomic, ReportDocument};
use qdm_cli::suites::{run_suite, VerifyConfig, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "qdm",
    about = "Verification and batch computations for truncated Fock-space operator models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Classical,
    Jc,
    Pseudo,
    Veronese,
    Representations,
    Chern,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a JSON report.
    Verify {
        /// Suites to run.
        #[arg(long, value_enum, default_values_t = [SuiteArg::All])]
        suite: Vec<SuiteArg>,
        /// Detuning grid (overrides each suite's default).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Option<Vec<f64>>,
        /// Fock truncation cutoff.
        #[arg(long, default_value_t = 64)]
        cutoff: usize,
        /// Trailing indices excluded from banded comparisons.
        #[arg(long, default_value_t = 2)]
        band: usize,
        /// Override every check's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for the random samples.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format (json only for reports).
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Evolve an initial state under the closed-form propagator, CSV output.
    Evolve {
        /// Detuning θ (θ² > 1 required with --pseudo).
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        /// Use the pseudo-Hermitian model on its admissible subspace.
        #[arg(long)]
        pseudo: bool,
        /// Initial state: up:0, down:3, or up:coherent:1.5.
        #[arg(long, default_value = "up:0")]
        initial: String,
        /// Largest gt on the grid.
        #[arg(long, default_value_t = 10.0)]
        gt_max: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 200)]
        gt_points: usize,
        /// Fock truncation cutoff (standard model only).
        #[arg(long, default_value_t = 64)]
        cutoff: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Scan chart normalizers for their exact singular sets, JSON output.
    DiracScan {
        /// Comma-separated θ grid, e.g. "-2,-1,1,2".
        #[arg(long, allow_hyphen_values = true)]
        theta_grid: String,
        /// Fock truncation cutoff.
        #[arg(long, default_value_t = 64)]
        cutoff: usize,
        /// Output JSON path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalization/idempotence residual table across degree and θ, JSON.
    Veronese {
        /// Positive detunings to tabulate.
        #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.5])]
        theta: Vec<f64>,
        /// Largest mapping degree.
        #[arg(long, default_value_t = 4)]
        degree_max: usize,
        /// Fock truncation cutoff.
        #[arg(long, default_value_t = 64)]
        cutoff: usize,
        /// Output JSON path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerically integrate the first Chern number of the degree-n bundle.
    Chern {
        /// Mapping degree.
        #[arg(long)]
        degree: usize,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Output JSON path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(contents: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => write_atomic(path, contents).map_err(|e| format!("write {path:?}: {e}")),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            suite,
            theta,
            cutoff,
            band,
            tol,
            seed,
            out,
            format,
        } => {
            if format == FormatArg::Csv {
                return Err("verification reports are JSON only".into());
            }
            if cutoff < 8 {
                return Err("cutoff must be at least 8".into());
            }
            if band >= cutoff {
                return Err("band must be smaller than the cutoff".into());
            }
            if let Some(t) = tol {
                if !t.is_finite() || t <= 0.0 {
                    return Err("tolerance must be positive".into());
                }
            }
            let config = VerifyConfig {
                cutoff,
                band,
                tol_override: tol,
                seed,
                thetas: theta,
            };
            let names: Vec<&str> = if suite.contains(&SuiteArg::All) {
                SUITE_NAMES.to_vec()
            } else {
                suite
                    .iter()
                    .map(|s| match s {
                        SuiteArg::Classical => "classical",
                        SuiteArg::Jc => "jc",
                        SuiteArg::Pseudo => "pseudo",
                        SuiteArg::Veronese => "veronese",
                        SuiteArg::Representations => "representations",
                        SuiteArg::Chern => "chern",
                        SuiteArg::All => unreachable!(),
                    })
                    .collect()
            };
            let mut checks = Vec::new();
            for name in names {
                checks.extend(run_suite(name, &config).expect("suite names are validated"));
            }
            let doc = ReportDocument::new(seed, config.as_map(), checks);
            let all_pass = doc.all_pass();
            emit(&doc.to_json(), out.as_ref())?;
            eprintln!(
                "{} checks, {} passed, {} failed",
                doc.summary.total, doc.summary.passed, doc.summary.failed
            );
            Ok(all_pass)
        }
        Command::Evolve {
            theta,
            pseudo,
            initial,
            gt_max,
            gt_points,
            cutoff,
            out,
        } => {
            let kind = if pseudo {
                ModelKind::Pseudo
            } else {
                ModelKind::Jc
            };
            let state = InitialState::parse(&initial).map_err(|e| e.to_string())?;
            let csv = batch::evolve_csv(kind, theta, cutoff, &state, gt_max, gt_points)
                .map_err(|e| e.to_string())?;
            emit(&csv, Some(&out))?;
            Ok(true)
        }
        Command::DiracScan {
            theta_grid,
            cutoff,
            out,
        } => {
            let grid = batch::parse_theta_grid(&theta_grid).map_err(|e| e.to_string())?;
            let json = batch::dirac_scan_json(&grid, cutoff).map_err(|e| e.to_string())?;
            emit(&json, out.as_ref())?;
            Ok(true)
        }
        Command::Veronese {
            theta,
            degree_max,
            cutoff,
            out,
        } => {
            let json = batch::veronese_table_json(&theta, degree_max, cutoff)
                .map_err(|e| e.to_string())?;
            emit(&json, out.as_ref())?;
            Ok(true)
        }
        Command::Chern { degree, tol, out } => {
            if degree == 0 {
                return Err("degree must be positive".into());
            }
            let json = batch::chern_json(degree, tol).map_err(|e| e.to_string())?;
            emit(&json, out.as_ref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
