use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use isominimal_cli::args::Cli;
use isominimal_cli::render::render;
use isominimal_cli::{run, RunConfig, RunError};

fn execute(cfg: &RunConfig) -> Result<i32, RunError> {
    let report = run(cfg)?;
    let text = render(&report, cfg.format)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let outcome = Cli::parse().into_config().map_err(RunError::from).and_then(|cfg| execute(&cfg));
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("isominimal: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
