mod commands;
mod config;
mod output;
mod verify;

use std::fmt::Debug;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "hypermech", version, about = "Hypercomplex mechanics: figure data and verification")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// File of key=value lines; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (a directory for `orbits`); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// Grid points per axis.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Half-width of the square domain.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub domain: Option<f64>,
    /// Seed for randomised checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbits of the one-parameter subgroups and their derived actions.
    Orbits(commands::OrbitsArgs),
    /// The unit circles e^{iota t} of the three algebras.
    Rotations(commands::RotationsArgs),
    /// Phase-space evolution under a harmonic or unharmonic Hamiltonian.
    Dynamics(commands::DynamicsArgs),
    /// Interference curves of two symmetric states.
    Interference(commands::InterferenceArgs),
    /// Covariant transforms and their analyticity residuals.
    Wavelet(commands::WaveletArgs),
    /// Runs the invariant checks and reports residuals.
    Verify(verify::VerifyArgs),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    #[serde(skip)]
    pub code: u8,
    pub module: String,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            module: "cli".into(),
            kind: "UsageError".into(),
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            module: "cli".into(),
            kind: "Internal".into(),
            message: message.into(),
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError {
            code: 2,
            module: "cli".into(),
            kind: "Io".into(),
            message: format!("{}: {e}", path.display()),
        }
    }

    /// A library error, reported with its module and variant name.
    pub fn module<E: Debug + std::fmt::Display>(module: &str, e: E) -> Self {
        CliError {
            code: 2,
            module: module.into(),
            kind: variant_name(&e),
            message: e.to_string(),
        }
    }
}

/// Name of an enum variant from its `Debug` output.
pub fn variant_name<E: Debug>(e: &E) -> String {
    let s = format!("{e:?}");
    let end = s.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(s.len());
    s[..end].to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            #[derive(Serialize)]
            struct Wrapped<'a> {
                error: &'a CliError,
            }
            match output::to_json(&Wrapped { error: &e }) {
                Ok(s) => eprint!("{s}"),
                Err(_) => eprintln!("{}: {}", e.kind, e.message),
            }
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let file = match &cli.common.config {
        Some(p) => config::FileConfig::load(p)?,
        None => config::FileConfig::default(),
    };
    match cli.command {
        Command::Orbits(a) => commands::orbits(&cli.common, &file, &a),
        Command::Rotations(a) => commands::rotations(&cli.common, &file, &a),
        Command::Dynamics(a) => commands::dynamics(&cli.common, &file, &a),
        Command::Interference(a) => commands::interference(&cli.common, &file, &a),
        Command::Wavelet(a) => commands::wavelet(&cli.common, &file, &a),
        Command::Verify(a) => verify::verify(&cli.common, &file, &a),
    }
}
