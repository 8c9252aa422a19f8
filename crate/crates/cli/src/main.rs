//! `arhomotopy`: AR triangles, Serre duality and Gorenstein data for quiver algebras.

mod commands;
mod expr;
mod names;
mod output;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Result;
use arh_core::algebra::{build_algebra, parse_presentation, AlgebraRef};
use arh_core::gorenstein::DEFAULT_BOUND;
use arh_core::linalg::Field;
use clap::{Args, Parser, Subcommand};

use crate::output::Output;

/// Malformed invocation, unreadable file or unresolved name.
#[derive(Debug)]
pub struct InputError(String);

impl InputError {
    pub fn new(msg: impl Into<String>) -> InputError {
        InputError(msg.into())
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "arhomotopy", version, about = "Auslander-Reiten triangles in bounded homotopy categories")]
struct Cli {
    /// Override the field declared in the algebra file (`GF(p)` or `Q`).
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BoundArg {
    /// Resolution bound (default: $ARH_DEFAULT_BOUND, else 10).
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Build the algebra and validate its structure constants.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Algebra-level operations.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// List the indecomposable projectives.
    Proj { file: PathBuf },
    /// List the indecomposable injectives.
    Inj { file: PathBuf },
    /// Almost split sequence ending at a module.
    ArSequence { module: String, file: PathBuf },
    /// AR triangle ending at a perfect or starting at a coperfect complex.
    ArTriangle {
        #[arg(long, conflicts_with = "starting_at", required_unless_present = "starting_at")]
        ending_at: Option<String>,
        #[arg(long)]
        starting_at: Option<String>,
        file: PathBuf,
    },
    /// Dimensions of Hom_K(X, Y) and Hom_K(Y, νX) over the corpus.
    SerreTable { file: PathBuf },
    /// Injective dimension of the regular module.
    InjDim {
        file: PathBuf,
        /// Use the left regular module.
        #[arg(long)]
        left: bool,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Injective dimension on both sides and the Gorenstein verdict.
    Gorenstein {
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Gorenstein projectivity of a module, by Ext vanishing and a complete-resolution fragment.
    GpCheck {
        module: String,
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// GP cover of a complex.
    GpCover {
        object: String,
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Injective dimensions against restricted AR triangles.
    HappelReport {
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Re-verify certificates emitted by `ar-triangle`.
    VerifyTriangle { certificate: PathBuf, file: PathBuf },
    /// DOT graph of the AR triangles at the corpus objects.
    ExportDot { file: PathBuf },
}

fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse::<u32>().ok())
        .ok_or_else(|| InputError::new(format!("bad field `{t}`: expected GF(p) or Q")))?;
    Ok(Field::prime(p).map_err(|e| InputError::new(e.to_string()))?)
}

pub fn load_algebra(path: &Path, field: Option<&str>) -> Result<AlgebraRef> {
    let text =
        std::fs::read_to_string(path).map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))?;
    let mut pres = parse_presentation(&text)?;
    if let Some(f) = field {
        pres.field = parse_field(f)?;
    }
    Ok(Arc::new(build_algebra(&pres)?))
}

pub fn resolve_bound(b: &BoundArg) -> Result<usize> {
    if let Some(n) = b.bound {
        return Ok(n);
    }
    match std::env::var("ARH_DEFAULT_BOUND") {
        Ok(v) => Ok(v
            .trim()
            .parse()
            .map_err(|_| InputError::new(format!("ARH_DEFAULT_BOUND must be a non-negative integer, got `{v}`")))?),
        Err(_) => Ok(DEFAULT_BOUND),
    }
}

fn run(cli: Cli) -> Result<Output> {
    let field = cli.field.as_deref();
    match cli.command {
        Command::Algebra { cmd: AlgebraCmd::Check { file } } => commands::algebra_check(&file, field),
        Command::Proj { file } => commands::list(&load_algebra(&file, field)?, true),
        Command::Inj { file } => commands::list(&load_algebra(&file, field)?, false),
        Command::ArSequence { module, file } => commands::ar_sequence(&file, field, &module),
        Command::ArTriangle { ending_at, starting_at, file } => match (ending_at, starting_at) {
            (Some(e), None) => commands::ar_triangle(&file, field, &e, true),
            (None, Some(s)) => commands::ar_triangle(&file, field, &s, false),
            _ => Err(InputError::new("give exactly one of --ending-at and --starting-at").into()),
        },
        Command::SerreTable { file } => commands::serre_table(&load_algebra(&file, field)?),
        Command::InjDim { file, left, bound } => commands::inj_dim(&load_algebra(&file, field)?, left, resolve_bound(&bound)?),
        Command::Gorenstein { file, bound } => commands::gorenstein(&load_algebra(&file, field)?, resolve_bound(&bound)?),
        Command::GpCheck { module, file, bound } => commands::gp_check(&file, field, &module, resolve_bound(&bound)?),
        Command::GpCover { object, file, bound } => commands::gp_cover(&file, field, &object, resolve_bound(&bound)?),
        Command::HappelReport { file, bound } => {
            commands::happel(&load_algebra(&file, field)?, resolve_bound(&bound)?)
        }
        Command::VerifyTriangle { certificate, file } => commands::verify_triangle(&certificate, &file, field),
        Command::ExportDot { file } => commands::export_dot(&load_algebra(&file, field)?),
    }
}

/// Exit code for a failed run.
fn classify(e: &anyhow::Error) -> u8 {
    use arh_core::Error as E;
    if e.downcast_ref::<InputError>().is_some() {
        return EXIT_INPUT;
    }
    match e.downcast_ref::<E>() {
        Some(E::NotFoundWithinBound(_) | E::NotGorenstein(_) | E::HypothesisNotWitnessed(_)) => EXIT_NEGATIVE,
        Some(E::Verification(_) | E::Internal(_) | E::Locality(_)) => EXIT_VERIFICATION,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.render());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e))
        }
    }
}
