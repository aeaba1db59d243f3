//! Command-line front end: CSV sweeps for the analytic models and JSON
//! reports for the binning simulator.

pub mod args;
pub mod commands;
pub mod error;
pub mod sweep;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use args::{Cli, Command, ModelKind};
pub use error::{CliError, Result};
pub use sweep::{Scale, SweepSpec, Variable};
pub use table::{format_g12, Cell, Table};

/// What a subcommand produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Table(Table),
    Json(String),
}

impl Output {
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        match self {
            Output::Table(t) => t.write_csv(out),
            Output::Json(s) => {
                writeln!(out, "{s}")?;
                Ok(())
            }
        }
    }
}

/// Evaluates a parsed command line; side notes (analytic values next to a
/// simulation) go to `notes`.
pub fn run(cli: &Cli, notes: &mut dyn Write) -> Result<Output> {
    Ok(match &cli.command {
        Command::Capacity(a) => Output::Table(commands::capacity(cli.model, cli.units, a)?),
        Command::Energy(a) => Output::Table(commands::energy(cli.model, a)?),
        Command::Exponents(a) => Output::Table(commands::exponents(cli.model, cli.units, a)?),
        Command::Tradeoff(a) => Output::Table(commands::tradeoff(cli.units, a)?),
        Command::Simulate(a) => Output::Json(commands::simulate(cli.units, cli.seed, a, notes)?),
    })
}

/// [`run`] followed by writing the result to `--out` or stdout.
pub fn run_and_write(cli: &Cli) -> Result<()> {
    let output = run(cli, &mut io::stderr())?;
    match &cli.out {
        Some(path) => output.write_to(BufWriter::new(File::create(path)?)),
        None => output.write_to(io::stdout().lock()),
    }
}
