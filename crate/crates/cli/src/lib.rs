//! Command-line front end for `qgraph`: graph files, subcommands and their
//! table, CSV and JSON output.
//!
//! Exit codes: 0 on a clean run, 1 on usage, parse or numerical errors, 2 when
//! the run completed but emitted numerical-confidence warnings.

pub mod args;
pub mod commands;
pub mod graph_file;
pub mod render;

use std::io::Write;

use args::{Cli, Command};
use commands::{CliError, Outcome};

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Resonances(a) => commands::resonances(a),
        Command::Tw(a) => commands::tw(a),
        Command::Visibility(a) => commands::visibility(a),
        Command::Basis(a) => commands::basis(a),
    }
}

/// Runs a parsed command line, printing results and warnings; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            for w in &o.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            o.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
