//! Discrete Laplace spectra on the shear-periodic grid, split by the parity
//! of the orbifold involution.

mod cache;
mod compare;
mod csr;
mod dense;
mod eigs;
mod export;
mod grid;
mod operator;
mod parity;
mod spectrum;

pub use cache::{load_operator, operator_cache_path, store_operator, SCHEME_VERSION};
pub use compare::{gap_table, refinement_study, GapRow, GapTable, RefinementRow, RefinementStudy};
pub use csr::CsrMatrix;
pub use dense::{dense_eigenvalues, DENSE_LIMIT};
pub use eigs::{eigs_smallest, EigenOptions, EigenPairs};
pub use export::{heat_trace_csv, spectrum_csv, write_csv};
pub use grid::{canonical_index, reduce_axis, GridIndex, QuotientGrid, Wrap};
pub use operator::{assemble, assemble_scheme, DiscreteOperator, Scheme};
pub use parity::{parity_operator, ParityOperator};
pub use spectrum::{
    control_deformation_spectrum, dense_full_spectrum, dense_parity_spectrum, eigs_spectrum,
    flat_closed_form, heat_trace, orbifold_spectrum, HeatTrace, Parity, SpectrumResult,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("grid size {n} is below the minimum {min}")]
    GridTooSmall { n: usize, min: usize },
    #[error("grid size {0} is odd; the half shift of the involution needs an even N (try {next})", next = .0 + 1)]
    OddGrid(usize),
    #[error("dense diagonalisation limited to {limit} unknowns, got {n}")]
    TooLargeForDense { n: usize, limit: usize },
    #[error("requested {k} eigenvalues from an operator of dimension {n}")]
    TooManyEigenvalues { k: usize, n: usize },
    #[error("eigensolver did not converge in {iterations} iterations ({converged} of {requested} pairs converged)")]
    NotConverged {
        iterations: usize,
        converged: usize,
        requested: usize,
        partial: Box<EigenPairs>,
    },
    #[error("empty spectrum")]
    EmptySpectrum,
    #[error("operator cache: {0}")]
    Cache(String),
    #[error("i/o: {0}")]
    Io(String),
}
