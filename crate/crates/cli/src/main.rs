//! `homomesy`: run homomesy experiments from the command line.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 a size guard was hit,
//! 4 the verdict did not match `--expect-c`.

mod output;
mod run;
mod systems;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homomesy_core::DEFAULT_ENUMERATION_GUARD;

#[derive(Parser, Debug)]
#[command(name = "homomesy", version, about = "Exact orbit averages and homomesy checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit averages of a statistic and the homomesy verdict.
    Check(Options),
    /// Every orbit (or the orbit of --seed) with its states.
    Orbits(Options),
    /// Homomesic linear combinations of the system's indicator statistics.
    Subspace(Options),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Check,
    Orbits,
    Subspace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    GridRowmotionIdeals,
    GridRowmotionAntichains,
    GridPromotionIdeals,
    GridPromotionAntichains,
    Ballot,
    CyclicInversions,
    ReversalInversions,
    Lyness,
    Sandpile,
    Suter,
    Ssyt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    #[arg(value_enum)]
    pub system: SystemKind,
    /// First chain length, or the number of -1 letters for word systems.
    #[arg(long)]
    pub a: Option<usize>,
    /// Second chain length, or the number of +1 letters for word systems.
    #[arg(long)]
    pub b: Option<usize>,
    /// Permutation length, Suter parameter, or SSYT column count.
    #[arg(long)]
    pub n: Option<usize>,
    /// SSYT ceiling.
    #[arg(long)]
    pub k: Option<u32>,
    /// SSYT row count.
    #[arg(long)]
    pub m: Option<usize>,
    /// Statistic selector, e.g. `ideal-size`, `file:-1`, `positive-fiber:2`.
    #[arg(long)]
    pub stat: Option<String>,
    /// A serialized state; `orbits` then lists only its orbit.
    #[arg(long)]
    pub seed: Option<String>,
    /// Expected constant as `p/q` (comma-separated for vector statistics).
    #[arg(long = "expect-c")]
    pub expect_c: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Upper bound on enumerated states and on orbit length.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_GUARD)]
    pub guard: u64,
    /// Sandpile edge-list file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// SSYT cells for `sigma`, as `r,c;r,c;…` (1-indexed).
    #[arg(long)]
    pub cells: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<homomesy_core::Error> for CliError {
    fn from(e: homomesy_core::Error) -> Self {
        if e.is_guard() {
            CliError::Guard(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// Rendered output plus, when `--expect-c` disagreed, the reason.
pub struct Outcome {
    pub text: String,
    pub mismatch: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, options) = match cli.command {
        Command::Check(o) => (Mode::Check, o),
        Command::Orbits(o) => (Mode::Orbits, o),
        Command::Subspace(o) => (Mode::Subspace, o),
    };
    match systems::dispatch(mode, &options) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            match outcome.mismatch {
                Some(why) => {
                    eprintln!("homomesy: {why}");
                    ExitCode::from(CliError::Mismatch(why).exit_code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(err) => {
            let (CliError::Usage(msg) | CliError::Guard(msg) | CliError::Mismatch(msg)) = &err;
            eprintln!("homomesy: {msg}");
            ExitCode::from(err.exit_code())
        }
    }
}
