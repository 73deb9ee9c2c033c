pub mod commands;
pub mod doc;
pub mod report;
pub mod suites;
pub mod workspace;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use commands::{execute, Cli, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid: {0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invalid(_) => 1,
        }
    }
}

/// Runs one command line, writing results to `out` and diagnostics to `err`.
/// Returns the exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let (text, code) = match execute(&cli) {
        Ok(Outcome::Document(doc)) => (doc.to_json(), 0),
        Ok(Outcome::Report(r)) => (r.render(cli.json), 0),
        Ok(Outcome::Verification(reports)) => {
            let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
            (report::render_verification(&reports, cli.json), code)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 1;
    }
    code
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
