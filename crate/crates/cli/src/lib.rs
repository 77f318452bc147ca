//! Batch runner for the orbispec certificates and spectral experiments.

pub mod args;
pub mod commands;

use std::io::Write;
use std::path::Path;

use args::{Cli, Command, Format, THREADS_ENV};
use orbispec::report::{Report, Verdict};
use orbispec::spectra::SpectraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(SpectraError),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Runtime(_) | Self::Io(_) => 1,
        }
    }
}

/// Configures the global thread pool from the environment.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{THREADS_ENV} must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn summary(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.records {
        let tag = match r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Recorded => "INFO",
        };
        out.push_str(&format!("{tag} {}\n", r.check));
    }
    out.push_str(if report.passed() {
        "overall: pass\n"
    } else {
        "overall: fail\n"
    });
    out
}

/// Emits the report for an algebraic command and returns it.
fn emit_report(
    report: Report,
    format: Format,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Report, CliError> {
    if let Some(path) = output {
        write_file(path, &report.to_json())?;
    }
    let text = match format {
        Format::Json => report.to_json() + "\n",
        _ => summary(&report),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(report)
}

/// Emits a spectral command's CSV and report.
fn emit_tables(
    report: Report,
    csv: String,
    format: Format,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Report, CliError> {
    if let Some(path) = output {
        write_file(path, &csv)?;
    }
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match format {
        Format::Json => out
            .write_all((report.to_json() + "\n").as_bytes())
            .map_err(io)?,
        _ if output.is_none() => out.write_all(csv.as_bytes()).map_err(io)?,
        _ => {}
    }
    err.write_all(summary(&report).as_bytes()).map_err(io)?;
    Ok(report)
}

/// Runs a parsed command line, writing results to `out` and summaries to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Report, CliError> {
    match cli.command {
        Command::VerifyAlgebra(a) => {
            a.validate()?;
            emit_report(
                commands::verify_algebra(&a),
                a.format,
                a.output.as_deref(),
                out,
            )
        }
        Command::SingularSet(a) => {
            a.validate()?;
            emit_report(
                commands::singular_set(&a)?,
                a.format,
                a.output.as_deref(),
                out,
            )
        }
        Command::Spectrum(a) => {
            a.validate()?;
            let (report, csv, heat) = commands::spectrum(&a)?;
            if let (Some(path), Some(heat)) = (&a.heat_output, heat) {
                write_file(path, &heat)?;
            }
            emit_tables(report, csv, a.format, a.output.as_deref(), out, err)
        }
        Command::Compare(a) => {
            a.validate()?;
            let (report, csv) = commands::compare(&a)?;
            emit_tables(report, csv, a.format, a.output.as_deref(), out, err)
        }
    }
}
