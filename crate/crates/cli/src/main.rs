//! `svdyn`: build fattened transition graphs and analyze their recurrence,
//! decomposition, entropy and shadowing from the command line.
//!
//! Exit status: 0 on success, 1 when the analysis reports a domain error
//! (its name is printed on standard error), 2 on I/O, schema or usage
//! errors. `SVDYN_THREADS` sets the worker thread count.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "svdyn", about = "Combinatorial dynamics of fattened maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fatten a base map on a cell space and write the transition graph.
    Build(BuildArgs),
    /// Recurrent sets, final classes and (with --full) their cyclic decomposition.
    Decompose(DecomposeArgs),
    /// Orbit counts and entropy estimates.
    Entropy(EntropyArgs),
    /// Transitivity certificate for a hyperbolic toral automorphism.
    Anosov(AnosovArgs),
    /// Compare the fast graph algorithms with the brute-force oracle.
    OracleCheck(OracleArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Build configuration: {"space": ..., "map": ..., "epsilon": e}.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Write the compact binary format instead of JSON.
    #[arg(long)]
    pub binary: bool,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Graph file, JSON or binary.
    #[arg(long)]
    pub graph: PathBuf,
    /// Include the cyclic decomposition of every final class.
    #[arg(long)]
    pub full: bool,
    /// Also write the decomposition as Graphviz DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Count,
    Spectral,
    Separated,
    Spanning,
    Theoremc,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Graph file; required by every method except theoremc.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Build configuration supplying the base map for theoremc.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Largest orbit length.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Cap on the number of sequences enumerated by the greedy methods.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Restrict orbits to the final class with this index.
    #[arg(long)]
    pub class: Option<usize>,
    /// Grid subdivisions for theoremc.
    #[arg(long, value_delimiter = ',', default_value = "20,40,80,160")]
    pub subdivisions: Vec<usize>,
    /// Also write the value table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnosovArgs {
    /// Integer matrix entries a,b,c,d of [[a,b],[c,d]].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "2,1,1,1")]
    pub matrix: Vec<i64>,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long)]
    pub delta: f64,
    #[arg(long)]
    pub eps: f64,
    /// Iterates of the shadow point examined; 0 follows the trajectory length.
    #[arg(long, default_value_t = 0)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the shadow orbit as CSV (k, x, y).
    #[arg(long)]
    pub orbit_csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Graph files to check.
    #[arg(long, num_args = 1..)]
    pub graph: Vec<PathBuf>,
    /// Number of seeded random explicit graphs to check as well.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn version() -> &'static str {
    let text = format!(
        "{}\nreport schema {}\ngraph formats: json, binary {}",
        env!("CARGO_PKG_VERSION"),
        svdyn::SCHEMA_VERSION,
        String::from_utf8_lossy(svdyn::svmap::BINARY_MAGIC),
    );
    Box::leak(text.into_boxed_str())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SVDYN_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SVDYN_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Build(a) => commands::build(&a),
        Command::Decompose(a) => commands::decompose(&a),
        Command::Entropy(a) => commands::entropy(&a),
        Command::Anosov(a) => commands::anosov(&a),
        Command::OracleCheck(a) => commands::oracle_check(&a),
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().version(version()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
