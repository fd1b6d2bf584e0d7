//! Front end for the skew pentagram experiments.
//!
//! Verification commands print a JSON report: a plain-words `about` line
//! naming the statement being checked, the configuration (seed included),
//! and a list of checks with their witnesses. Time series (`degseq` in CSV
//! mode, `heights`) are CSV.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! errors and 3 for anything else that goes wrong.
//!
//! Points in polygon files are `["num/den", "num/den", "num/den"]` over ℚ,
//! `[{"re": "1/2", "im": "3"}, ...]` over ℚ(i) and integers over `F_p`:
//!
//! ```json
//! { "indexing": {"cyclic": 4},
//!   "vertices": [["0","0","1"], ["1","0","1"], ["1","1","1"], ["0","1","1"]] }
//! ```

use std::io::Write;
use std::path::Path;

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

pub use args::{Cli, Command};

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
    /// Extra output for stderr, used when a CSV command fails a check.
    pub diagnostics: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// A configuration that parsed but makes no sense.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub const USAGE_EXIT: i32 = 2;
pub const RUNTIME_EXIT: i32 = 3;

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Iterate(a) => commands::iterate(a),
        Command::Degseq(a) => commands::degseq(a),
        Command::DdEstimate(a) => commands::dd_estimate(a),
        Command::Heights(a) => commands::heights(a),
        Command::OctagonVerify(a) => commands::octagon_verify(a),
        Command::Menelaus(a) => commands::menelaus(a),
        Command::Dskp(a) => commands::dskp(a),
        Command::Dominance(a) => commands::dominance(a),
    }
}

pub fn output_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Iterate(a) => a.output.as_deref(),
        Command::Degseq(a) => a.output.as_deref(),
        Command::DdEstimate(a) => a.output.as_deref(),
        Command::Heights(a) => a.output.as_deref(),
        Command::OctagonVerify(a) => a.output.as_deref(),
        Command::Menelaus(a) => a.output.as_deref(),
        Command::Dskp(a) => a.output.as_deref(),
        Command::Dominance(a) => a.output.as_deref(),
    }
}

/// Runs a parsed command line, writes its output and returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return if e.is::<UsageError>() {
                USAGE_EXIT
            } else {
                RUNTIME_EXIT
            };
        }
    };
    let written = match output_path(cli) {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return RUNTIME_EXIT;
    }
    if let Some(d) = &outcome.diagnostics {
        eprint!("{d}");
    }
    outcome.exit_code()
}
