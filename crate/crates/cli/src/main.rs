//! `hilblat`: lattice computations for K3 surfaces and their Douady spaces.
//!
//! Exit status is 0 on success, 2 for malformed input and 3 when a mathematical
//! precondition fails.

mod commands;
mod error;
mod report;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliResult;
use crate::report::Report;
use crate::workspace::Workspace;

#[derive(Parser, Debug)]
#[command(
    name = "hilblat",
    version,
    about = "Exact lattice computations for K3 surfaces and Douady spaces"
)]
struct Cli {
    /// Workspace file (JSON) with named lattices, vectors, sublattices, isometries and groups.
    #[arg(long, global = true, value_name = "FILE")]
    workspace: Option<PathBuf>,

    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature, discriminant and parity of a lattice.
    Signature { lattice: String },
    /// Orthogonal complement and saturation of a sublattice.
    Complement { sublattice: String },
    /// Whether a matrix preserves the form, with the first violated relation.
    IsometryCheck { isometry: String },
    /// The index of an isometry of a Douady lattice and the decomposition of f(e).
    Index { douady: String, isometry: String },
    /// Whether an isometry fixes delta.
    NaturalCheck { douady: String, isometry: String },
    /// Invariant and coinvariant lattices of a finite group.
    Invariant { group: String },
    /// Hyperbolic, parabolic or elliptic type of a lattice or of a sublattice.
    Classify {
        lattice: String,
        sublattice: Option<String>,
    },
    /// Integer solutions of q(e) = lambda^2 q(e) + mu^2 d2 with |lambda|, |mu| <= bound.
    #[command(allow_negative_numbers = true)]
    SolveIndex { n: i64, d2: i64, bound: u64 },
    /// Every applicable check over the whole workspace.
    Report,
}

fn run(cli: &Cli) -> CliResult<Report> {
    let ws = match &cli.workspace {
        Some(path) => Workspace::load(path)?,
        None => Workspace::empty(),
    };
    match &cli.command {
        Command::Signature { lattice } => commands::signature(&ws, lattice),
        Command::Complement { sublattice } => commands::complement(&ws, sublattice),
        Command::IsometryCheck { isometry } => commands::isometry_check(&ws, isometry),
        Command::Index { douady, isometry } => commands::index(&ws, douady, isometry),
        Command::NaturalCheck { douady, isometry } => {
            commands::natural_check(&ws, douady, isometry)
        }
        Command::Invariant { group } => commands::invariant(&ws, group),
        Command::Classify {
            lattice,
            sublattice,
        } => commands::classify(&ws, lattice, sublattice.as_deref()),
        Command::SolveIndex { n, d2, bound } => commands::solve_index(*n, *d2, *bound),
        Command::Report => Ok(commands::report(&ws)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let out = if cli.json {
                report.render_json()
            } else {
                report.render_text()
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("hilblat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
