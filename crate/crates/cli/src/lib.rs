//! Command-line front end: scenario files in, reports out.

pub mod commands;
pub mod error;
pub mod literal;
pub mod report;
pub mod scenario;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sphgenus::rational::parse_rational;
use sphgenus::verify::Suite;
use sphgenus::Rational;

use crate::commands::{CountArgs, CountMode, GzOutput, Outcome};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "sphgenus", version, about = "Arithmetic genus and h^{p,0} data of generic complete intersections")]
pub struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ScenarioArg {
    /// Scenario file (JSON); `-` reads standard input.
    pub path: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: subset terms, independence, chi, critical numbers, h^{p,0}.
    Genus(ScenarioArg),
    /// Defect table and independence verdict.
    Independence(ScenarioArg),
    /// Conclusions about h^{p,0}.
    Hp0(ScenarioArg),
    /// Lattice-point counts and weighted sums over a polytope.
    Count {
        /// Polytope file (JSON literal).
        path: Option<PathBuf>,
        /// Inline polytope: a literal or an array of points, e.g. "[0,2]".
        #[arg(long, conflicts_with = "path")]
        polytope: Option<String>,
        /// Lattice basis as a JSON array of vectors.
        #[arg(long)]
        lattice: Option<String>,
        /// Lattice shift as a JSON vector.
        #[arg(long)]
        shift: Option<String>,
        #[arg(long, value_enum, default_value = "closed")]
        mode: CountMode,
        /// Root system literal for the S modes, e.g. '{"type":"A","n":3}'.
        #[arg(long)]
        roots: Option<String>,
    },
    /// Gelfand-Zetlin polytope of an increasing weight of GL(n).
    Gz {
        #[arg(long)]
        n: usize,
        /// Comma-separated entries, e.g. 0,1,2.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<String>,
        #[arg(long, value_enum, default_value = "count")]
        output: GzOutput,
        /// Shorthand for --output count.
        #[arg(long, conflicts_with_all = ["vertices", "hrep"])]
        count: bool,
        /// Shorthand for --output vertices.
        #[arg(long, conflicts_with = "hrep")]
        vertices: bool,
        /// Shorthand for --output hrep.
        #[arg(long)]
        hrep: bool,
    },
    /// Mixed volume of n polytopes in dimension n, given as a JSON array.
    MixedVolume { path: PathBuf },
    /// Seeded randomized self-checks.
    Verify {
        /// chains, reciprocity, gz or bkk.
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io { path: path.display().to_string(), message: e.to_string() };
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(io);
    }
    std::fs::read_to_string(path).map_err(io)
}

fn parse_entries(v: &[String]) -> Result<Vec<Rational>, CliError> {
    Ok(v.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let json = cli.json;
    match cli.command {
        Command::Genus(a) => commands::genus(&read(&a.path)?, json),
        Command::Independence(a) => commands::independence(&read(&a.path)?, json),
        Command::Hp0(a) => commands::hp0(&read(&a.path)?, json),
        Command::Count { path, polytope, lattice, shift, mode, roots } => {
            let text = match (path, polytope) {
                (Some(p), _) => read(&p)?,
                (None, Some(t)) => t,
                (None, None) => return Err(CliError::Schema("count needs a polytope file or --polytope".into())),
            };
            commands::count(CountArgs {
                polytope: literal::parse_polytope(&text)?,
                lattice: lattice.as_deref().map(commands::parse_vectors).transpose()?,
                shift: shift.as_deref().map(commands::parse_vector).transpose()?,
                mode,
                roots: roots.as_deref().map(commands::parse_roots).transpose()?,
            })
        }
        Command::Gz { n, lambda, output, count, vertices, hrep } => {
            let output = match (count, vertices, hrep) {
                (true, _, _) => GzOutput::Count,
                (_, true, _) => GzOutput::Vertices,
                (_, _, true) => GzOutput::Hrep,
                _ => output,
            };
            commands::gz(n, &parse_entries(&lambda)?, output)
        }
        Command::MixedVolume { path } => commands::mixed_volume_cmd(&read(&path)?),
        Command::Verify { suite, seed, trials } => Ok(commands::verify_cmd(suite, seed, trials, json)),
    }
}

/// Caps the global thread pool from `SPHGENUS_THREADS` when set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SPHGENUS_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("ignoring SPHGENUS_THREADS={v:?}: not a positive integer"))?;
    if n == 0 {
        return Err("ignoring SPHGENUS_THREADS=0".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}
