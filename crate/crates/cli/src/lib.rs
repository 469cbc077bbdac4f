//! Command-line front end: argument parsing, dispatch and report rendering.

pub mod commands;
pub mod parse;
pub mod report;
pub mod reproduce;

use clap::Parser;

use commands::{Cli, Ctx, FormatArg};
use report::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one invocation. `argv` excludes the program name; the report echoes
/// it verbatim so that rerunning the echo reproduces the report.
pub fn run<S: AsRef<str>>(argv: &[S]) -> (String, i32) {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("kstab".to_string()).chain(argv.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (e.render().to_string(), code);
        }
    };
    let report = Ctx::new(&cli).and_then(|ctx| commands::dispatch(&cli, &ctx, &argv));
    match report {
        Ok(r) => {
            let format = match cli.format {
                FormatArg::Table => Format::Table,
                FormatArg::Json => Format::Json,
            };
            let code = if cli.strict && r.verdict == Some(false) { EXIT_VERDICT } else { EXIT_OK };
            (r.render(format, cli.decimal), code)
        }
        Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
    }
}
