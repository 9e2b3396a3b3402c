mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "hlsnake",
    version,
    about = "Snake graphs, cluster expansions and q-characters of HL modules in type A"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver Q_ξ and the i◇ / i• / ī table
    Quiver(Job),
    /// Labelled snake graph of an interval
    Snake(Job),
    /// Laurent expansion of x[α_{i,j}] from perfect matchings
    Expand(Job),
    /// The sequences Γ_{i,j}, Γ'_{i,j} and the monomials m^ε, f^ε
    Gamma(Job),
    /// q-character of an HL module
    Qchar(Job),
    /// Exhaustive and randomised consistency sweeps
    Verify(Job),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
    Tikz,
    Svg,
}

#[derive(Args, Debug)]
pub struct Job {
    /// Height function values, e.g. "-4,-5,-6,-5"
    #[arg(long, allow_hyphen_values = true, conflicts_with = "xi_file")]
    xi: Option<String>,
    /// JSON file of the form {"n": 4, "xi": [...]}
    #[arg(long)]
    xi_file: Option<PathBuf>,
    /// HL monomial, e.g. "Y[1,-7]Y[2,-4]Y[3,-7]"
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["xi", "xi_file"])]
    monomial: Option<String>,
    /// Rank n (for --monomial, or the sweep bound for verify)
    #[arg(long)]
    n: Option<usize>,
    /// Interval i:j
    #[arg(long)]
    interval: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cross-check against the mutation engine or the second q-character route
    #[arg(long)]
    oracle: bool,
    /// Seed for randomised sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random height functions for verify
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Highlight the k-th perfect matching (0-based) in snake renderings
    #[arg(long)]
    matching: Option<usize>,
    /// Write output here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Corrupt the expansion before oracle comparison (testing only)
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

/// A report plus a mismatch to signal once the report is written.
pub struct Outcome {
    pub text: String,
    pub mismatch: Option<String>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (job, out) = match &cli.command {
        Command::Quiver(j) => (j, commands::quiver(j)?),
        Command::Snake(j) => (j, commands::snake(j)?),
        Command::Expand(j) => (j, commands::expand(j)?),
        Command::Gamma(j) => (j, commands::gamma(j)?),
        Command::Qchar(j) => (j, commands::qchar(j)?),
        Command::Verify(j) => (j, commands::verify(j)?),
    };
    match &job.output {
        Some(p) => std::fs::write(p, &out.text)?,
        None => std::io::stdout().write_all(out.text.as_bytes())?,
    }
    match out.mismatch {
        Some(m) => Err(CliError::Mismatch(m)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
