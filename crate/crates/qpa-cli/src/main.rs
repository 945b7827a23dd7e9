//! Command-line front end: trajectory runs, grid sweeps, the critical-point
//! root certificate, and the seeded verification suite.
//!
//! Exit codes are the machine-readable success signal:
//!   0  success
//!   1  bad input (unparseable state, invalid step or option)
//!   2  trajectory did not converge
//!   3  a verification or reference check failed

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qpa",
    version,
    about = "Bell-diagonal purification-map dynamics and convergence certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate the map from one initial state and emit the trajectory.
    Trajectory(TrajectoryArgs),
    /// Classify every cell of a simplex grid against its predicted basin.
    Sweep(SweepArgs),
    /// Solve the critical-point cubic and print its certificate as JSON.
    Roots(RootsArgs),
    /// Run the seeded property suites and print the margin report as JSON.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    /// Initial state literal "a,b,c,d".
    #[arg(long)]
    state: String,
    /// Convergence threshold on 1 - max(a, c); must lie in (0, 0.5).
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Grid step, the reciprocal of an integer (0.05, 0.02, ...).
    #[arg(long)]
    step: f64,
    /// Convergence threshold; the sweep default trades depth for breadth.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Worker threads for the cell classification; defaults to all cores.
    /// The report is identical for any worker count.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output path for the per-cell rows; standard output when omitted.
    /// In csv format the summary JSON goes to standard output when the rows
    /// go to a file, and to standard error otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    /// Residual tolerance for the cubic solve.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Draws per property suite.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_BAD_INPUT,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Trajectory(args) => commands::trajectory(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Roots(args) => commands::roots(&args),
        Command::Verify(args) => commands::verify(&args),
    };
    std::process::exit(code);
}
