//! daosim command line: network generation, adoption-dynamics runs,
//! parameter sweeps, vote tallies, governance metrics and viability reports.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 I/O error. All
//! parameters are validated (and the computation finished) before any output
//! file is written, and identical invocations produce byte-identical files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use config::ConfigFile;

#[derive(Parser)]
#[command(
    name = "daosim",
    version,
    about = "DAO governance dynamics: simulate standard adoption, sweep fork regimes, \
             tally votes, measure turnout and centralization, score viability"
)]
pub struct Cli {
    /// JSON file with per-subcommand defaults; command-line flags take precedence
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a network and write it as an edge list
    Generate(GenerateArgs),
    /// Run the adoption dynamics once; write trajectory CSV and summary JSON
    Simulate(SimulateArgs),
    /// Run a (q, c_A, c_B) grid sweep; write the outcome table as CSV
    Sweep(SweepArgs),
    /// Tally a ballots file; write the result as JSON
    Vote(VoteArgs),
    /// Governance metrics: proposal turnout simulation and/or token centralization
    Govern(GovernArgs),
    /// Score an assessment file against the viability rubric
    Assess(AssessArgs),
}

/// Network source shared by generate/simulate/sweep: either an edge-list
/// file or a topology spec.
#[derive(Args, Default)]
pub struct NetworkArgs {
    /// Edge-list file ("i j [w]" per line)
    #[arg(long, value_name = "FILE")]
    pub edges: Option<PathBuf>,
    /// Topology: complete | ring | er | ba | ws
    #[arg(long)]
    pub topology: Option<String>,
    /// Agent count
    #[arg(long)]
    pub n: Option<usize>,
    /// Even neighbor count (ring, ws)
    #[arg(long)]
    pub k: Option<usize>,
    /// Edge probability (er)
    #[arg(long)]
    pub p: Option<f64>,
    /// Attachments per new node (ba)
    #[arg(long)]
    pub m: Option<usize>,
    /// Rewiring probability (ws)
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output edge-list path
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    /// Initial states: a file (one A/B per line) or an inline string like ABB
    #[arg(long)]
    pub init: Option<String>,
    /// Relative advantage of standard A, in [0, 1]
    #[arg(long)]
    pub q: Option<f64>,
    /// Switching cost for leaving A
    #[arg(long = "cA")]
    pub c_a: Option<f64>,
    /// Switching cost for leaving B
    #[arg(long = "cB")]
    pub c_b: Option<f64>,
    /// sync | async
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long = "max-steps")]
    pub max_steps: Option<usize>,
    /// Performance measure: A | B
    #[arg(long)]
    pub measure: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trajectory CSV path
    #[arg(long = "out-trajectory", value_name = "FILE")]
    pub out_trajectory: Option<PathBuf>,
    /// Summary JSON path
    #[arg(long = "out-summary", value_name = "FILE")]
    pub out_summary: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    /// Comma-separated q values
    #[arg(long = "q-grid")]
    pub q_grid: Option<String>,
    /// Comma-separated c_A values
    #[arg(long = "ca-grid")]
    pub ca_grid: Option<String>,
    /// Comma-separated c_B values
    #[arg(long = "cb-grid")]
    pub cb_grid: Option<String>,
    /// Initial A-fraction in [0, 1]
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub replicas: Option<usize>,
    /// sync | async
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long = "max-steps")]
    pub max_steps: Option<usize>,
    /// Base seed; every cell/replica derives an independent stream from it
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV path
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write an SVG heatmap of fork frequency
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    /// Worker threads (default: number of processors)
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args)]
pub struct VoteArgs {
    /// single | approval | ranked | quadratic
    #[arg(long)]
    pub kind: Option<String>,
    /// Ballots CSV ("voter_id,payload" per line)
    #[arg(long, value_name = "FILE")]
    pub ballots: Option<PathBuf>,
    /// Token ledger CSV ("voter_id,balance") for weighted tallies
    #[arg(long, value_name = "FILE")]
    pub weights: Option<PathBuf>,
    /// Quadratic budget in credits (quadratic only)
    #[arg(long)]
    pub budget: Option<u64>,
    /// Output JSON path (stdout if omitted)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct GovernArgs {
    /// Member count for the proposal simulation
    #[arg(long)]
    pub members: Option<usize>,
    /// Number of proposals to simulate
    #[arg(long)]
    pub proposals: Option<usize>,
    /// Participation rate, or a comma-separated per-member list
    #[arg(long)]
    pub participation: Option<String>,
    #[arg(long = "approve-rate")]
    pub approve_rate: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Token ledger CSV for centralization metrics
    #[arg(long, value_name = "FILE")]
    pub ledger: Option<PathBuf>,
    /// Output JSON path (stdout if omitted)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AssessArgs {
    /// Assessment JSON file
    #[arg(long, value_name = "FILE")]
    pub file: Option<PathBuf>,
    /// text | json
    #[arg(long)]
    pub format: Option<String>,
    /// Output path (stdout if omitted)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// CLI failure, split by exit code.
pub enum CliError {
    /// Exit 1: bad arguments, bad config values, domain violations.
    Validation(String),
    /// Exit 2: filesystem problems; carries the offending path.
    Io { path: PathBuf, source: std::io::Error },
}

impl From<daosim::Error> for CliError {
    fn from(err: daosim::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to the file when a path is given, stdout otherwise.
pub fn emit(out: Option<&std::path::Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let config = ConfigFile::load(cli.config.as_deref())?;
    match cli.command {
        Command::Generate(args) => commands::generate(args, config.section("generate")),
        Command::Simulate(args) => commands::simulate(args, config.section("simulate")),
        Command::Sweep(args) => commands::sweep(args, config.section("sweep")),
        Command::Vote(args) => commands::vote(args, config.section("vote")),
        Command::Govern(args) => commands::govern(args, config.section("govern")),
        Command::Assess(args) => commands::assess(args, config.section("assess")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    // usage text on the error stream, exit 1
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };

    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io { path, source }) => {
            eprintln!("error: {}: {source}", path.display());
            ExitCode::from(2)
        }
    }
}
