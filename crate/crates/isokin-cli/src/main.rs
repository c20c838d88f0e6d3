//! `isokin` — design isotropic point sets, derive planar revolute chains,
//! and compute conditioning and characteristic lengths.

mod commands;
mod document;
mod error;
mod svg;

use clap::{Parser, Subcommand};
use commands::{CharlenOptions, Context, Format, OrderingSelection};
use document::DesignDocument;
use error::CliError;
use isokin::conditioning::SearchParams;
use isokin::planar_geometry::DEFAULT_TOL;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "isokin",
    version,
    about = "Isotropic point sets and well-conditioned planar manipulators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Absolute tolerance for geometric comparisons (falls back to the
    /// ISOKIN_TOL environment variable, then to 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for randomized search starts.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the output to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format for tabular reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Write the vertex set of a regular polygon as a design document.
    Polygon {
        /// Vertex count (n >= 3).
        #[arg(long)]
        n: usize,
        /// Circumradius.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Phase of the first vertex (accepts deg/rad suffixes).
        #[arg(long, default_value = "0")]
        phase: String,
        /// Center as x,y.
        #[arg(long, default_value = "0,0")]
        center: String,
        /// Unit tag of the generated set.
        #[arg(long, default_value = "dimensionless")]
        unit: String,
    },
    /// Concatenate two concentric point sets.
    Union { first: PathBuf, second: PathBuf },
    /// Rotate a set rigidly about its centroid.
    Rotate {
        file: PathBuf,
        /// Rotation angle (accepts deg/rad suffixes).
        #[arg(long)]
        angle: String,
    },
    /// Reflect a set about an axis through its centroid.
    Reflect {
        file: PathBuf,
        /// Axis direction (accepts deg/rad suffixes).
        #[arg(long)]
        axis: String,
    },
    /// Check whether a set is isotropic.
    CheckIso { file: PathBuf },
    /// Enumerate the n! chains of a set with rotation-equivalence classes.
    Chains { file: PathBuf },
    /// Conditioning report per ordering: link lengths, optimal lambda,
    /// conditioning length, residual, spectral condition number.
    Analyze {
        file: PathBuf,
        /// Analyze one explicit ordering, e.g. 1,2,3,4.
        #[arg(long, conflicts_with = "all_orderings")]
        ordering: Option<String>,
        /// Analyze every permutation.
        #[arg(long)]
        all_orderings: bool,
        /// Joint angles overriding the placement posture (deg/rad suffixes).
        #[arg(long)]
        posture: Option<String>,
    },
    /// Search for the characteristic length.
    Charlen {
        file: PathBuf,
        /// Restrict the search to one ordering, e.g. 1,2,3,4.
        #[arg(long)]
        ordering: Option<String>,
        /// Grid starts per shape angle.
        #[arg(long, default_value_t = 3)]
        starts: usize,
        /// Convergence threshold on the finite-difference gradient norm.
        #[arg(long, default_value_t = 1e-6)]
        gradient_tol: f64,
        /// Evaluation budget per start.
        #[arg(long, default_value_t = 10_000)]
        max_evals: usize,
        /// Draw starts at random (seeded with --seed) instead of the grid.
        #[arg(long)]
        randomized: bool,
    },
    /// Render placements as a panelled SVG figure.
    Render {
        file: PathBuf,
        /// Render one explicit ordering, e.g. 1,2,3,4 (repeatable).
        #[arg(long, conflicts_with = "dedup")]
        ordering: Vec<String>,
        /// Render the representative of every rotation-equivalence class.
        #[arg(long)]
        dedup: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Context {
        tol: resolve_tol(cli.tol)?,
        seed: cli.seed,
        format: cli.format,
    };

    let output = match &cli.command {
        Command::Polygon {
            n,
            radius,
            phase,
            center,
            unit,
        } => {
            let unit = document::parse_unit(unit)?;
            let phase = document::parse_angle(phase)?;
            let center = document::parse_center(center, unit)?;
            commands::polygon(&ctx, *n, *radius, phase, center)?
        }
        Command::Union { first, second } => {
            let a = DesignDocument::load(first)?;
            let b = DesignDocument::load(second)?;
            commands::union(&ctx, &a, &b)?
        }
        Command::Rotate { file, angle } => {
            let doc = DesignDocument::load(file)?;
            commands::rotate(&ctx, &doc, document::parse_angle(angle)?)?
        }
        Command::Reflect { file, axis } => {
            let doc = DesignDocument::load(file)?;
            commands::reflect(&ctx, &doc, document::parse_angle(axis)?)?
        }
        Command::CheckIso { file } => {
            let doc = DesignDocument::load(file)?;
            commands::check_iso(&ctx, &doc)?
        }
        Command::Chains { file } => {
            let doc = DesignDocument::load(file)?;
            commands::chains_report(&ctx, &doc)?
        }
        Command::Analyze {
            file,
            ordering,
            all_orderings,
            posture,
        } => {
            let doc = DesignDocument::load(file)?;
            let selection = if *all_orderings {
                OrderingSelection::All
            } else if let Some(text) = ordering {
                OrderingSelection::ExplicitList(vec![document::parse_ordering(text)?])
            } else {
                OrderingSelection::Document {
                    fallback: Box::new(OrderingSelection::DedupRepresentatives),
                }
            };
            let posture = posture
                .as_deref()
                .map(document::parse_angle_list)
                .transpose()?;
            commands::analyze(&ctx, &doc, &selection, posture.as_deref())?
        }
        Command::Charlen {
            file,
            ordering,
            starts,
            gradient_tol,
            max_evals,
            randomized,
        } => {
            let doc = DesignDocument::load(file)?;
            let selection = match ordering {
                Some(text) => {
                    OrderingSelection::ExplicitList(vec![document::parse_ordering(text)?])
                }
                None => OrderingSelection::Document {
                    fallback: Box::new(OrderingSelection::DedupRepresentatives),
                },
            };
            let search = SearchParams {
                starts_per_dimension: *starts,
                gradient_tol: *gradient_tol,
                max_evaluations: *max_evals,
                randomized: *randomized,
                seed: ctx.seed.unwrap_or(0),
                ..SearchParams::default()
            };
            commands::charlen(&ctx, &doc, &CharlenOptions { selection, search })?
        }
        Command::Render {
            file,
            ordering,
            dedup,
        } => {
            let doc = DesignDocument::load(file)?;
            let selection = if !ordering.is_empty() {
                let parsed: Result<Vec<_>, _> = ordering
                    .iter()
                    .map(|o| document::parse_ordering(o))
                    .collect();
                OrderingSelection::ExplicitList(parsed?)
            } else if *dedup {
                OrderingSelection::DedupRepresentatives
            } else {
                OrderingSelection::Document {
                    fallback: Box::new(OrderingSelection::DedupRepresentatives),
                }
            };
            commands::render(&ctx, &doc, &selection)?
        }
    };

    write_output(cli.out.as_deref(), &output)
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(tol) = flag {
        return Ok(tol);
    }
    match std::env::var("ISOKIN_TOL") {
        Ok(text) => text.parse().map_err(|_| {
            CliError::validation(
                "InvalidTolerance",
                format!("ISOKIN_TOL={text:?} is not a number"),
            )
        }),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

/// Writes to stdout, or atomically (temp file + rename) when a path is given.
fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut temp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
                .map_err(|e| CliError::io(path, e))?;
            temp.write_all(content.as_bytes())
                .map_err(|e| CliError::io(path, e))?;
            temp.persist(path)
                .map_err(|e| CliError::io(path, e.error))?;
            Ok(())
        }
    }
}
