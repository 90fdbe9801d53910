//! Command-line front end: JSON files in and out, worked examples, SVG.

pub mod commands;
pub mod io;
pub mod svg;

use clap::Parser;

pub use commands::{execute, Cli, Command};
pub use io::{CliError, CliResult};

/// Parses the arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
