//! `mixedvol`: exact mixed volumes and mixed multiplicities from the command
//! line.
//!
//! Exit codes: 0 on success, 2 for malformed or invalid input, 3 when a
//! computation fails to stabilize or a verification does not pass, 1 for
//! internal errors.

mod commands;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mixedvol_core::multiplicity::{MultiplicityConfig, MAX_BASE_ENV};
use mixedvol_core::rational::{self, Rational};
use mixedvol_core::Error;

#[derive(Parser, Debug)]
#[command(name = "mixedvol", version, about = "Exact mixed volumes and mixed multiplicities")]
struct Cli {
    /// Input JSON file (standard input when omitted).
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Output file (standard output when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Comma-separated levels p, strictly increasing.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,2,4,8,16")]
    p_schedule: Vec<u32>,

    /// Relative tolerance for non-lattice verification, as a decimal or p/q.
    #[arg(long, global = true, default_value = "0.05")]
    tolerance: String,

    /// Largest base coordinate tried when waiting for the Hilbert function to
    /// become polynomial.
    #[arg(long, global = true, env = MAX_BASE_ENV)]
    max_base: Option<u32>,

    /// Worker threads (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Mixed volume of d polytopes in R^d, or of r polytopes with a multidegree.
    MixedVolume,
    /// Mixed multiplicity table of monomial ideals.
    MixedMult,
    /// Normalized mixed multiplicities along graded families.
    FamilyMult,
    /// Compare mixed volumes of bodies with multiplicities of their families.
    VerifyTheoremC,
    /// Level counts of the plain and hat semigroups.
    Okounkov,
    /// Levelwise decomposition of the semigroups, level by level.
    DecompositionCheck,
}

/// Everything a command needs besides its input document.
pub struct Settings {
    pub format: Format,
    pub schedule: Vec<u32>,
    pub tolerance: Rational,
    pub config: MultiplicityConfig,
}

/// A command result: the rendered output and whether a check inside it
/// failed.
pub struct Output {
    pub text: String,
    pub check_failed: bool,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Convergence(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_convergence_error() {
            CliError::Convergence(e.to_string())
        } else if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Convergence(m) | CliError::Internal(m) => m,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("standard output: {e}"))),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(n: usize) -> Result<(), CliError> {
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_n: usize) -> Result<(), CliError> {
    Ok(())
}

fn run(cli: Cli) -> Result<Output, CliError> {
    configure_threads(cli.threads)?;
    let tolerance = rational::parse_decimal(&cli.tolerance)?;
    let max_base = cli.max_base.unwrap_or(MultiplicityConfig::default().max_base);
    if max_base == 0 {
        return Err(CliError::Input("--max-base must be positive".into()));
    }
    let settings = Settings {
        format: cli.format,
        schedule: cli.p_schedule,
        tolerance,
        config: MultiplicityConfig { max_base },
    };
    let input = read_input(&cli.input)?;
    let out = match cli.command {
        Command::MixedVolume => commands::mixed_volume(&input, &settings)?,
        Command::MixedMult => commands::mixed_mult(&input, &settings)?,
        Command::FamilyMult => commands::family_mult(&input, &settings)?,
        Command::VerifyTheoremC => commands::verify_theorem_c(&input, &settings)?,
        Command::Okounkov => commands::okounkov(&input, &settings)?,
        Command::DecompositionCheck => commands::decomposition_check(&input, &settings)?,
    };
    write_output(&cli.output, &out.text)?;
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) if out.check_failed => ExitCode::from(3),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mixedvol: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
