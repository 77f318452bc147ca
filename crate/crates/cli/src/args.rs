//! Command-line arguments and their validation.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbispec::spectra::Parity;
use orbispec::{parse_rational, Rational};
use serde::Serialize;

use crate::CliError;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "ORBISPEC_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "orbispec",
    version,
    about = "Exact certificates and discrete spectra for a nilmanifold orbifold deformation"
)]
#[command(after_help = "Set ORBISPEC_THREADS to bound the number of worker threads.")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact checks of the group law, the deformation and its witnesses.
    VerifyAlgebra(AlgebraArgs),
    /// Fixed points and isotropy of the orbifold group, plus diagnostics for β.
    SingularSet(SingularArgs),
    /// Low eigenvalues of the grid Laplacian.
    Spectrum(SpectrumArgs),
    /// Eigenvalue gaps across deformation parameters under grid refinement.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parity_arg(s: &str) -> Result<Parity, String> {
    s.parse()
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct AlgebraArgs {
    /// Deformation parameter, exact (`p/q`, integer or decimal).
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    #[serde(serialize_with = "crate::args::display")]
    pub t: Rational,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Lattice box `[−bound, bound]⁶` for the exhaustive suites.
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the JSON report here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SingularArgs {
    #[arg(long, default_value_t = 2)]
    pub bound: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    /// Deformation parameters.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Vec<f64>,
    /// Points per dimension.
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub eigs: usize,
    /// even, odd or full.
    #[arg(long, value_parser = parity_arg, default_value = "full")]
    pub parity: Parity,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Diagonalise densely and return every eigenvalue.
    #[arg(long)]
    pub dense: bool,
    /// Also run the flat-torus calibration at each grid size.
    #[arg(long)]
    pub calibrate: bool,
    /// Heat-trace times.
    #[arg(long, value_delimiter = ',')]
    pub tau: Vec<f64>,
    /// Spectrum CSV; printed to stdout when absent and the format is csv.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Heat-trace CSV.
    #[arg(long)]
    pub heat_output: Option<PathBuf>,
    /// Directory for cached operator matrices.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CompareArgs {
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub t: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub eigs: usize,
    #[arg(long, value_parser = parity_arg, default_value = "even")]
    pub parity: Parity,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest accepted median ratio of fine to coarse gaps.
    #[arg(long, default_value_t = 0.5)]
    pub median_limit: f64,
    /// Run the control family alongside.
    #[arg(long)]
    pub control: bool,
    /// Control parameters.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.25",
        allow_negative_numbers = true
    )]
    pub s: Vec<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

pub(crate) fn display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn check_grids(grid: &[usize], parity: Parity) -> Result<(), CliError> {
    for &n in grid {
        if n < 4 {
            return Err(CliError::Usage(format!(
                "grid size {n} is below the minimum 4"
            )));
        }
        if n % 2 == 1 {
            let need = if parity == Parity::Full {
                "the assembly"
            } else {
                "parity splitting"
            };
            return Err(CliError::Usage(format!(
                "grid size {n} is odd; {need} needs an even grid (try {})",
                n + 1
            )));
        }
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be a positive number, got {v}"
        )))
    }
}

impl AlgebraArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.bound < 0 {
            return Err(CliError::Usage("--bound must be non-negative".into()));
        }
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be positive".into()));
        }
        if self.format == Format::Csv {
            return Err(CliError::Usage(
                "verify-algebra reports as text or json".into(),
            ));
        }
        Ok(())
    }
}

impl SingularArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.bound < 1 {
            return Err(CliError::Usage("--bound must be at least 1".into()));
        }
        if self.format == Format::Csv {
            return Err(CliError::Usage(
                "singular-set reports as text or json".into(),
            ));
        }
        Ok(())
    }
}

impl SpectrumArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        check_grids(&self.grid, self.parity)?;
        check_positive("tol", self.tol)?;
        if self.t.is_empty() && !self.calibrate {
            return Err(CliError::Usage(
                "give --t values, --calibrate, or both".into(),
            ));
        }
        if !self.dense && self.eigs == 0 {
            return Err(CliError::Usage("--eigs must be positive".into()));
        }
        if self.tau.iter().any(|&t| !(t.is_finite() && t >= 0.0)) {
            return Err(CliError::Usage("--tau values must be non-negative".into()));
        }
        if self.format == Format::Text {
            return Err(CliError::Usage("spectrum writes csv or json".into()));
        }
        Ok(())
    }
}

impl CompareArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        check_grids(&self.grid, self.parity)?;
        check_positive("tol", self.tol)?;
        if self.t.len() < 2 {
            return Err(CliError::Usage(
                "compare needs at least two --t values".into(),
            ));
        }
        if self.grid.len() < 2 {
            return Err(CliError::Usage(
                "compare needs at least two --grid sizes".into(),
            ));
        }
        if self.control && self.s.len() < 2 {
            return Err(CliError::Usage(
                "--control needs at least two --s values".into(),
            ));
        }
        if self.eigs == 0 {
            return Err(CliError::Usage("--eigs must be positive".into()));
        }
        if self.format == Format::Text {
            return Err(CliError::Usage("compare writes csv or json".into()));
        }
        Ok(())
    }
}
