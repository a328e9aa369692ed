//! Library half of the `setmax` binary, so the commands can be driven from
//! tests without spawning a process.

pub mod bench;
pub mod cli;
pub mod error;
pub mod gen;
pub mod solve;

use std::io::Write;
use std::path::Path;

pub use error::{CliError, CliResult};

/// Executes a parsed command line and returns the process exit code.
pub fn run(cli: cli::Cli) -> i32 {
    let outcome = match cli.command {
        cli::Command::Gen(args) => gen::run(args),
        cli::Command::Solve(args) => solve::run(args),
        cli::Command::Bench(args) => bench::run(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("setmax: {e}");
            e.exit_code()
        }
    }
}

/// Writes to `path`, or to standard output when there is none.
pub(crate) fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}
