//! `qlattice`: certificates, states, spectral valuations and convergence
//! reports from the command line. Inputs are JSON files holding exact
//! rationals as strings; output is JSON lines or plain text.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};

use config::{Config, OutputFormat};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Parse(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Parse(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Domain(m) => write!(f, "{m}"),
            CliError::Parse(m) => write!(f, "{m}"),
        }
    }
}

impl From<qlattice::Error> for CliError {
    fn from(e: qlattice::Error) -> Self {
        match e {
            qlattice::Error::Parse(_) => CliError::Parse(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qlattice", version, about = "Exact computations on closed subspaces, states and observables")]
struct Cli {
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Squared distance from a vector to the span of a subspace file.
    Dist {
        #[arg(long)]
        vec: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
    },
    /// Stream certificates (c, r) of a subspace as JSON lines.
    Encode {
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_certs: usize,
        /// Stop after this many rounds even if fewer certificates appeared.
        #[arg(long, default_value_t = 100_000)]
        max_rounds: usize,
    },
    /// Semidecide that a vector lies outside a subspace.
    Notmember {
        #[arg(long)]
        vec: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long)]
        fuel: Option<u64>,
    },
    /// Evaluate a state on a subspace.
    State {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
        /// Number of state terms to sum; the rest is bounded by the tail.
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Spectral valuation of a closed set: upper bounds and/or `< q`.
    Specval {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        vec: PathBuf,
        /// A closed subset of [-1, 1], e.g. "[-1,0]∪{1/2}".
        #[arg(long)]
        set: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        fuel: Option<u64>,
        /// Print the bound stream up to the fuel.
        #[arg(long)]
        upper: bool,
    },
    /// Strong-operator convergence of a built-in sequence on probe vectors.
    Sotcheck {
        #[arg(long, value_enum)]
        seq: SequenceKind,
        /// A vector or a JSON array of vectors.
        #[arg(long)]
        probes: PathBuf,
        /// Limit operator; defaults to the sequence's own limit, else 0.
        #[arg(long)]
        limit: Option<PathBuf>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value_t = 50)]
        max_n: usize,
    },
    /// Reproduce the discontinuity examples.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SequenceKind {
    LeftShift,
    RightShift,
    Projections,
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// s(A_n)(e_0) for A_n = span(e_0 + e_n).
    Schroeder {
        #[arg(long, default_value_t = 50)]
        max_n: usize,
        /// Append the summary record.
        #[arg(long)]
        summary: bool,
    },
    /// meet(P, Q_n) for P = span(sum_k ratio^k e_k), k <= K.
    Join {
        #[arg(long, default_value_t = 50)]
        max_n: usize,
        #[arg(long, default_value_t = 50)]
        k: usize,
        #[arg(long, default_value = "1/2")]
        ratio: String,
        #[arg(long)]
        summary: bool,
    },
    /// Biorthogonal closures of shrinking rays.
    Biorth {
        #[arg(long, default_value_t = 100)]
        max_n: usize,
        /// Unit vector spanning the rays; defaults to e_0.
        #[arg(long)]
        vec: Option<PathBuf>,
        #[arg(long)]
        summary: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = Config::from_env().and_then(|cfg| commands::run(cli, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
