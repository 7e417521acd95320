//! Command-line front end for `orthoframe`.
//!
//! Every command renders its full stdout into a `String`; the binary only
//! prints it and maps errors to exit codes.

pub mod commands;
pub mod format;
pub mod input;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] orthoframe::Error),
}

impl CliError {
    /// 2 for malformed input or usage, 3 for numeric/domain failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) | CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "orthoframe",
    version,
    about = "Orthogonal frames, parity and attitude determination"
)]
pub struct Cli {
    /// Print 17 significant digits instead of 6.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Append residual diagnostics as `#` comment lines.
    #[arg(long, global = true)]
    pub report: bool,
    /// Override the orthogonality tolerance (convert m2q, parity) or the
    /// convergence tolerance (factor jacobi).
    #[arg(long, global = true, value_name = "REAL")]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between unit quaternions (w x y z) and rotation matrices.
    Convert {
        #[arg(value_enum)]
        direction: Direction,
        /// File path, `-` for stdin, or (q2m only) a literal "w x y z".
        input: String,
    },
    /// Project a nearly orthogonal matrix onto the rotations.
    Orthogonalize {
        input: String,
        #[arg(long, value_enum, default_value_t = OrthoMethod::Landis)]
        method: OrthoMethod,
        /// Rescale output rows to unit length (landis only).
        #[arg(long)]
        rescale_rows: bool,
    },
    /// Solve Wahba's problem from `weight r1 r2 r3 o1 o2 o3` lines.
    Wahba {
        input: String,
        #[arg(long, value_enum, default_value_t = WahbaMethod::Davenport)]
        method: WahbaMethod,
    },
    /// Classify an orthogonal matrix as +1 or -1 without determinants.
    Parity {
        input: String,
        /// Also print N evenly spaced points of the reducing Givens path.
        #[arg(long, value_name = "N")]
        path: Option<usize>,
    },
    /// Print matrix factorizations.
    Factor {
        input: String,
        #[arg(long, value_enum)]
        kind: FactorKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Q2m,
    M2q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrthoMethod {
    Landis,
    Polar,
    Svd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WahbaMethod {
    Davenport,
    Svd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FactorKind {
    Qr,
    Polar,
    Svd,
    Jacobi,
}

/// Output of a successful command.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = commands::Options {
        printer: format::Printer::new(cli.exact),
        report: cli.report,
        tol: match cli.tol {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                return Err(CliError::Usage(format!(
                    "--tol must be a positive real, got {t}"
                )))
            }
            t => t,
        },
    };
    match &cli.command {
        Command::Convert { direction, input } => commands::convert(&opts, *direction, input),
        Command::Orthogonalize {
            input,
            method,
            rescale_rows,
        } => commands::orthogonalize(&opts, input, *method, *rescale_rows),
        Command::Wahba { input, method } => commands::wahba(&opts, input, *method),
        Command::Parity { input, path } => commands::parity(&opts, input, *path),
        Command::Factor { input, kind } => commands::factor(&opts, input, *kind),
    }
}
