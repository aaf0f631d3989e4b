//! `rab` — batch front end for the beamforming toolkit.
//!
//! Subcommands:
//! - `solve  --config PATH --out PATH`: run every configured method at a
//!   single operating point, one CSV row per (run, method).
//! - `sweep  --config PATH --out PATH`: sweep exactly one axis (an SNR
//!   list, or a list of actual angular spreads).
//! - `verify --config PATH --out PATH`: solve one instance and run the
//!   certification suite on it, writing structured text reports.
//!
//! Exit codes: 0 success; 1 config or usage error; 2 one or more
//! verification checks failed (or could not be evaluated on this
//! instance); 3 solver failure — directly for `verify`, and for
//! `solve`/`sweep` only in single-run mode, where a failed solve cannot
//! hide behind Monte-Carlo aggregation (multi-run batches record failures
//! in the CSV `status` column instead and still exit 0).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use rab_core::bench::{cmd_solve, cmd_sweep, cmd_verify, RunRecord};
use rab_core::Error;

#[derive(Parser)]
#[command(
    name = "rab",
    version,
    about = "Worst-case-SINR robust beamforming: batch solves, sweeps, and certification"
)]
struct Cli {
    /// Override the seed from the config file.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Log verbosity: off, error, warn, info, debug, trace.
    #[arg(long, global = true, default_value = "warn", value_name = "LEVEL")]
    log_level: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured methods at a single operating point.
    Solve {
        /// Scenario description (TOML).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Sweep one axis: an SNR list, or actual angular spreads.
    Sweep {
        /// Scenario description (TOML).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Solve one instance and run the certification checks on it.
    Verify {
        /// Scenario description (TOML).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output report path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}

const EXIT_CONFIG: u8 = 1;
const EXIT_CHECK: u8 = 2;
const EXIT_SOLVER: u8 = 3;

fn error_exit(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Io(_) => EXIT_CONFIG,
        // A check precondition the instance does not meet (for example a
        // repeated top eigenvalue where a derivative formula needs a
        // simple one) means the certification could not be completed.
        Error::InvalidInput(_) => EXIT_CHECK,
        _ => EXIT_SOLVER,
    }
}

/// `solve`/`sweep` outcome: failures recorded in the rows only abort the
/// command when there is no Monte-Carlo aggregation to absorb them.
fn batch_exit(records: &[RunRecord], out: &Path) -> u8 {
    let failed: Vec<&RunRecord> =
        records.iter().filter(|r| r.objective.is_nan()).collect();
    let single_run = records.iter().all(|r| r.run_index == 0);
    println!("wrote {} records to {}", records.len(), out.display());
    if failed.is_empty() {
        return 0;
    }
    for rec in &failed {
        eprintln!(
            "solver failure: run {} method {}: {}",
            rec.run_index,
            rec.method.as_str(),
            rec.status
        );
    }
    if single_run {
        EXIT_SOLVER
    } else {
        eprintln!(
            "{} of {} solves failed; failures are recorded in the status column",
            failed.len(),
            records.len()
        );
        0
    }
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Solve { config, out } => match cmd_solve(&config, &out, cli.seed) {
            Ok(records) => batch_exit(&records, &out),
            Err(e) => {
                eprintln!("error: {e}");
                error_exit(&e)
            }
        },
        Command::Sweep { config, out } => match cmd_sweep(&config, &out, cli.seed) {
            Ok(records) => batch_exit(&records, &out),
            Err(e) => {
                eprintln!("error: {e}");
                error_exit(&e)
            }
        },
        Command::Verify { config, out } => match cmd_verify(&config, &out, cli.seed) {
            Ok(reports) => {
                let mut failures = 0usize;
                for report in &reports {
                    // First line of the render is the one-line summary.
                    println!("{}", report.render().lines().next().unwrap_or(""));
                    if !report.pass {
                        failures += 1;
                    }
                }
                println!("reports written to {}", out.display());
                if failures == 0 {
                    0
                } else {
                    eprintln!("{failures} of {} checks failed", reports.len());
                    EXIT_CHECK
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                error_exit(&e)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            // Usage problems share the config-error exit code.
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match cli.log_level.parse::<log::LevelFilter>() {
        Ok(level) => {
            env_logger::Builder::new().filter_level(level).init();
        }
        Err(_) => {
            eprintln!(
                "error: invalid log level {:?}; expected off, error, warn, info, debug or trace",
                cli.log_level
            );
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    ExitCode::from(run(cli))
}
