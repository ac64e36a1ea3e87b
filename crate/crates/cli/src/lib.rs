//! Library side of the `tiltpoly` binary: flag parsing, command dispatch and
//! output rendering, kept free of process-level side effects except `--out`.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs;

use clap::Parser;

pub use config::{Cli, CliError, RunConfig};

/// Exit status plus the text destined for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        status: e.exit_status(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match cfg.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| commands::execute(cfg)),
            Err(e) => Err(CliError::flag("--jobs", e.to_string())),
        },
        None => commands::execute(cfg),
    };
    let rendered = match result {
        Ok(r) => r,
        Err(e) => return failure(&e),
    };
    let mut stderr: String = rendered.notes.iter().map(|n| format!("{n}\n")).collect();
    let stdout = match &cfg.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered.body) {
                let err = CliError::flag("--out", format!("cannot write {}: {e}", path.display()));
                stderr.push_str(&format!("error: {err}\n"));
                return Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr,
                };
            }
            String::new()
        }
        None => rendered.body,
    };
    Outcome {
        status: rendered.status,
        stdout,
        stderr,
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let status = e.exit_code();
            return if status == 0 {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => failure(&e),
    }
}
