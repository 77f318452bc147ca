//! Full spectra by dense symmetric diagonalisation, for small grids.

use super::csr::CsrMatrix;
use super::SpectraError;

/// Largest dimension accepted by [`dense_eigenvalues`].
pub const DENSE_LIMIT: usize = 20_000;

/// All eigenvalues, ascending.
pub fn dense_eigenvalues(op: &CsrMatrix) -> Result<Vec<f64>, SpectraError> {
    let n = op.dim();
    if n > DENSE_LIMIT {
        return Err(SpectraError::TooLargeForDense {
            n,
            limit: DENSE_LIMIT,
        });
    }
    let mut values = op.to_dense().selfadjoint_eigenvalues(faer::Side::Lower);
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrix() {
        let a = CsrMatrix::from_rows(
            2,
            vec![vec![(0, 2.0), (1, -1.0)], vec![(0, -1.0), (1, 2.0)]],
        );
        let v = dense_eigenvalues(&a).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn size_guard() {
        let big = CsrMatrix::from_row_fn(DENSE_LIMIT + 1, |i, row| row.push((i, 1.0)));
        assert!(matches!(
            dense_eigenvalues(&big),
            Err(SpectraError::TooLargeForDense { .. })
        ));
    }
}
