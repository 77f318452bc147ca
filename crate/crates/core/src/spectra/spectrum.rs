//! Spectra of assembled operators, by parity, and their heat traces.

use serde::Serialize;

use super::csr::CsrMatrix;
use super::dense::dense_eigenvalues;
use super::eigs::{eigs_smallest, EigenOptions};
use super::operator::{assemble, assemble_scheme, DiscreteOperator, Scheme};
use super::parity::ParityOperator;
use super::SpectraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Full,
}

impl Parity {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Even => "even",
            Self::Odd => "odd",
            Self::Full => "full",
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Self::Even),
            "odd" => Ok(Self::Odd),
            "full" => Ok(Self::Full),
            other => Err(format!(
                "unknown parity `{other}` (expected even, odd or full)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub scheme: Scheme,
    pub n: usize,
    pub parity: Parity,
    /// Ascending.
    pub values: Vec<f64>,
    /// Dimension of the space the operator acts on.
    pub dimension: usize,
    /// Whether `values` is the whole spectrum.
    pub complete: bool,
    pub tol: f64,
    pub seed: u64,
    pub residuals: Vec<f64>,
}

impl SpectrumResult {
    pub fn parameter(&self) -> f64 {
        self.scheme.parameter()
    }
}

fn restricted(op: &DiscreteOperator, parity: Parity) -> Result<CsrMatrix, SpectraError> {
    Ok(match parity {
        Parity::Full => op.to_csr(),
        Parity::Even => ParityOperator::new(*op.grid())?.even_operator(op),
        Parity::Odd => ParityOperator::new(*op.grid())?.odd_operator(op),
    })
}

/// `k` smallest eigenvalues of the operator restricted to a parity subspace.
pub fn eigs_spectrum(
    op: &DiscreteOperator,
    parity: Parity,
    opts: &EigenOptions,
) -> Result<SpectrumResult, SpectraError> {
    let a = restricted(op, parity)?;
    let pairs = eigs_smallest(&a, opts)?;
    Ok(SpectrumResult {
        scheme: op.scheme(),
        n: op.grid().n(),
        parity,
        values: pairs.values,
        dimension: a.dim(),
        complete: false,
        tol: opts.tol,
        seed: opts.seed,
        residuals: pairs.residuals,
    })
}

pub fn dense_parity_spectrum(
    op: &DiscreteOperator,
    parity: Parity,
) -> Result<SpectrumResult, SpectraError> {
    if op.dim() > super::DENSE_LIMIT {
        return Err(SpectraError::TooLargeForDense {
            n: op.dim(),
            limit: super::DENSE_LIMIT,
        });
    }
    let a = restricted(op, parity)?;
    let values = dense_eigenvalues(&a)?;
    Ok(SpectrumResult {
        scheme: op.scheme(),
        n: op.grid().n(),
        parity,
        dimension: a.dim(),
        values,
        complete: true,
        tol: 0.0,
        seed: 0,
        residuals: Vec::new(),
    })
}

pub fn dense_full_spectrum(op: &DiscreteOperator) -> Result<SpectrumResult, SpectraError> {
    dense_parity_spectrum(op, Parity::Full)
}

/// Even-parity spectrum of `Φ_t* g`: the discrete orbifold spectrum.
pub fn orbifold_spectrum(
    t: f64,
    n: usize,
    k: usize,
    tol: f64,
    seed: u64,
) -> Result<SpectrumResult, SpectraError> {
    eigs_spectrum(
        &assemble(t, n)?,
        Parity::Even,
        &EigenOptions::new(k, tol, seed),
    )
}

/// Even-parity spectrum of the control family `Ψ_s* g`.
pub fn control_deformation_spectrum(
    s: f64,
    n: usize,
    k: usize,
    tol: f64,
    seed: u64,
) -> Result<SpectrumResult, SpectraError> {
    eigs_spectrum(
        &assemble_scheme(Scheme::Control { s }, n)?,
        Parity::Even,
        &EigenOptions::new(k, tol, seed),
    )
}

/// Spectrum of the periodic grid Laplacian on `ℝ⁶/ℤ⁶`:
/// `Σ_i 4N² sin²(π m_i / N)`, `m ∈ {0..N−1}⁶`, ascending.
pub fn flat_closed_form(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mode: Vec<f64> = (0..n)
        .map(|m| 4.0 * nf * nf * (std::f64::consts::PI * m as f64 / nf).sin().powi(2))
        .collect();
    let mut out = vec![0.0];
    for _ in 0..6 {
        out = out
            .iter()
            .flat_map(|&s| mode.iter().map(move |&v| s + v))
            .collect();
    }
    out.sort_by(f64::total_cmp);
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeatTrace {
    pub scheme: Scheme,
    pub n: usize,
    pub parity: Parity,
    pub taus: Vec<f64>,
    pub values: Vec<f64>,
    /// `exp(−τ λ_max)·(dim − k)` for truncated spectra, zero for complete ones.
    pub truncation_bounds: Vec<f64>,
    pub included: usize,
}

pub fn heat_trace(spectrum: &SpectrumResult, taus: &[f64]) -> Result<HeatTrace, SpectraError> {
    let lmax = *spectrum.values.last().ok_or(SpectraError::EmptySpectrum)?;
    let missing = spectrum.dimension.saturating_sub(spectrum.values.len());
    let values = taus
        .iter()
        .map(|&tau| spectrum.values.iter().map(|&l| (-tau * l).exp()).sum())
        .collect();
    let truncation_bounds = taus
        .iter()
        .map(|&tau| {
            if spectrum.complete {
                0.0
            } else {
                (-tau * lmax).exp() * missing as f64
            }
        })
        .collect();
    Ok(HeatTrace {
        scheme: spectrum.scheme,
        n: spectrum.n,
        parity: spectrum.parity,
        taus: taus.to_vec(),
        values,
        truncation_bounds,
        included: spectrum.values.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_closed_form_low_end() {
        let v = flat_closed_form(4);
        assert_eq!(v.len(), 4096);
        assert_eq!(v[0], 0.0);
        assert!(v[1..13].iter().all(|x| (x - 32.0).abs() < 1e-12));
        assert!(v[13] > 32.5);
    }

    #[test]
    fn heat_trace_basics() {
        let spectrum = SpectrumResult {
            scheme: Scheme::Flat,
            n: 4,
            parity: Parity::Full,
            values: vec![0.0, 1.0, 2.0],
            dimension: 5,
            complete: false,
            tol: 1e-8,
            seed: 0,
            residuals: vec![],
        };
        let h = heat_trace(&spectrum, &[0.0, 1.0]).unwrap();
        assert_eq!(h.values[0], 3.0);
        assert!(h.values[1] < 3.0);
        assert_eq!(h.truncation_bounds[0], 2.0);
        let empty = SpectrumResult {
            values: vec![],
            ..spectrum
        };
        assert_eq!(
            heat_trace(&empty, &[0.1]).unwrap_err(),
            SpectraError::EmptySpectrum
        );
    }

    #[test]
    fn parity_parse() {
        assert_eq!("even".parse::<Parity>().unwrap(), Parity::Even);
        assert!("both".parse::<Parity>().is_err());
    }
}
