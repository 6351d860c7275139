//! Command-line front end for `ifsbound`.
//!
//! Data records go to standard output only after a command succeeds;
//! diagnostics go to standard error. Exit status is 0 on success, 1 for
//! domain errors (a collinear trifractal, a ball that fails `verify`, ...)
//! and 2 for usage or input errors.

pub mod commands;
pub mod document;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{Cli, Outcome};
pub use document::{parse_ifs, preset, serialize_ifs, IfsDocument};
pub use error::{CliError, DocumentError};

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            if out.write_all(outcome.stdout.as_bytes()).is_err() {
                let _ = writeln!(err, "error: cannot write to standard output");
                return 1;
            }
            for line in &outcome.diagnostics {
                let _ = writeln!(err, "{line}");
            }
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
