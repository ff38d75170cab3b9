//! Command-line front end: argument parsing, input documents, reports.
//!
//! [`run`] does all the work and returns what the binary should print, so
//! tests can drive the CLI in-process.

pub mod docs;
pub mod report;
pub mod text;

use clap::{Parser, Subcommand, ValueEnum};
use jkpencil::liealg::{by_name, catalog_names, default_frozen_point};
use jkpencil::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::docs::{parse_point, LieDocument, PencilDocument};
use crate::report::Envelope;

pub const DEFAULT_SEED: u64 = 1729;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "jkpencil",
    version,
    about = "Jordan-Kronecker analysis of skew-symmetric and Lie-algebra pencils"
)]
pub struct Cli {
    /// Seed for all random sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random (x, a) pairs for the generic invariants of a Lie algebra.
    #[arg(long, global = true, default_value_t = jkpencil::liealg::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Evaluation point for `lie analyze`, comma-separated rationals.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Constant pencils given as two skew matrices.
    Pencil {
        #[command(subcommand)]
        action: FileAction,
    },
    /// Lie algebras given by structure constants.
    Lie {
        #[command(subcommand)]
        action: FileAction,
    },
    /// Print a catalog algebra as an input document, or list the names.
    Catalog { name: Option<String> },
}

#[derive(Debug, Subcommand)]
pub enum FileAction {
    Analyze { path: std::path::PathBuf },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn emit<T: Serialize>(
    format: Format,
    envelope: Envelope<T>,
    text: impl FnOnce(&T) -> String,
) -> Outcome {
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&envelope).expect("reports serialise") + "\n",
        Format::Text => text(&envelope.report),
    };
    Outcome {
        stdout,
        ..Outcome::default()
    }
}

fn failure(e: &Error) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error [{}]: {e}\n", e.code()),
        code: if e.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_VALIDATION
        },
    }
}

fn read(path: &std::path::Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Pencil {
            action: FileAction::Analyze { path },
        } => {
            if cli.point.is_some() {
                return Err(Error::Parse("--point applies to `lie analyze` only".into()));
            }
            let text = read(path)?;
            let p = PencilDocument::from_json(&text)?.to_pencil()?;
            let rep = report::analyze_pencil(&p, &mut rng)?;
            Ok(emit(
                cli.format,
                Envelope::new("pencil analyze", digest(text.as_bytes()), cli.seed, rep),
                text::pencil,
            ))
        }
        Command::Lie {
            action: FileAction::Analyze { path },
        } => {
            let text = read(path)?;
            let doc = LieDocument::from_json(&text)?;
            let g = doc.to_algebra()?;
            let points = match &cli.point {
                Some(p) => {
                    let x = parse_point(p)?;
                    if x.len() != g.dimension() {
                        return Err(Error::DimensionMismatch {
                            expected: g.dimension(),
                            found: x.len(),
                        });
                    }
                    vec![x]
                }
                None => doc.evaluation_points()?,
            };
            let rep = report::analyze_lie(&g, doc.frozen()?, &points, cli.samples, &mut rng)?;
            Ok(emit(
                cli.format,
                Envelope::new("lie analyze", digest(text.as_bytes()), cli.seed, rep),
                text::lie,
            ))
        }
        Command::Catalog { name: None } => {
            let names = catalog_names();
            let stdout = match cli.format {
                Format::Text => names.iter().map(|n| format!("{n}\n")).collect(),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Names {
                        schema_version: u32,
                        names: Vec<String>,
                    }
                    serde_json::to_string_pretty(&Names {
                        schema_version: report::SCHEMA_VERSION,
                        names,
                    })
                    .expect("names serialise")
                        + "\n"
                }
            };
            Ok(Outcome {
                stdout,
                ..Outcome::default()
            })
        }
        Command::Catalog { name: Some(name) } => {
            let g = by_name(name)?;
            let a = default_frozen_point(&g);
            let doc = LieDocument::from_algebra(&g, a.as_deref());
            Ok(Outcome {
                stdout: serde_json::to_string_pretty(&doc).expect("documents serialise") + "\n",
                ..Outcome::default()
            })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: msg,
                    code: EXIT_VALIDATION,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: msg,
                    ..Outcome::default()
                }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => failure(&e),
    }
}
