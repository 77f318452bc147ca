//! Eigenvalue gaps between two spectra and their behaviour under refinement.

use serde::Serialize;

use super::spectrum::SpectrumResult;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub index: usize,
    pub a: f64,
    pub b: f64,
    pub relative_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapTable {
    pub n: usize,
    pub parameter_a: f64,
    pub parameter_b: f64,
    pub rows: Vec<GapRow>,
}

impl GapTable {
    pub fn max_gap(&self) -> f64 {
        self.rows.iter().map(|r| r.relative_gap).fold(0.0, f64::max)
    }
}

/// `|a − b| / max(1, (|a| + |b|)/2)`, the same floor used for residuals so
/// the zero eigenvalue does not divide noise by noise.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / (0.5 * (a.abs() + b.abs())).max(1.0)
}

/// Index-by-index gaps over the common prefix of two spectra.
pub fn gap_table(a: &SpectrumResult, b: &SpectrumResult) -> GapTable {
    assert_eq!(a.n, b.n, "gap tables compare spectra on the same grid");
    let rows = a
        .values
        .iter()
        .zip(&b.values)
        .enumerate()
        .map(|(index, (&x, &y))| GapRow {
            index,
            a: x,
            b: y,
            relative_gap: relative_gap(x, y),
        })
        .collect();
    GapTable {
        n: a.n,
        parameter_a: a.parameter(),
        parameter_b: b.parameter(),
        rows,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinementRow {
    pub index: usize,
    pub coarse_gap: f64,
    pub fine_gap: f64,
    /// `fine/coarse`; 1 when both vanish, infinite when only the coarse one does.
    pub ratio: f64,
    pub shrinks: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinementStudy {
    pub coarse_n: usize,
    pub fine_n: usize,
    pub rows: Vec<RefinementRow>,
    pub all_shrink: bool,
    pub median_ratio: f64,
    pub median_limit: f64,
    pub pass: bool,
}

/// Every gap must shrink strictly and the median ratio must not exceed `median_limit`.
pub fn refinement_study(coarse: &GapTable, fine: &GapTable, median_limit: f64) -> RefinementStudy {
    let rows: Vec<RefinementRow> = coarse
        .rows
        .iter()
        .zip(&fine.rows)
        .map(|(c, f)| {
            let ratio = match (c.relative_gap, f.relative_gap) {
                (0.0, 0.0) => 1.0,
                (0.0, _) => f64::INFINITY,
                (c, f) => f / c,
            };
            RefinementRow {
                index: c.index,
                coarse_gap: c.relative_gap,
                fine_gap: f.relative_gap,
                ratio,
                shrinks: f.relative_gap < c.relative_gap,
            }
        })
        .collect();
    let all_shrink = !rows.is_empty() && rows.iter().all(|r| r.shrinks);
    let median_ratio = median(rows.iter().map(|r| r.ratio).collect());
    RefinementStudy {
        coarse_n: coarse.n,
        fine_n: fine.n,
        all_shrink,
        pass: all_shrink && median_ratio <= median_limit,
        median_ratio,
        median_limit,
        rows,
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{Parity, Scheme};

    fn sample(t: f64, n: usize, values: Vec<f64>) -> SpectrumResult {
        SpectrumResult {
            scheme: Scheme::Deformed { t },
            n,
            parity: Parity::Even,
            values,
            dimension: 100,
            complete: false,
            tol: 1e-8,
            seed: 0,
            residuals: vec![],
        }
    }

    #[test]
    fn identical_spectra_have_zero_gaps() {
        let a = sample(0.0, 6, vec![0.0, 10.0, 20.0]);
        let t = gap_table(&a, &a);
        assert!(t.rows.iter().all(|r| r.relative_gap == 0.0));
        let study = refinement_study(&t, &t, 0.5);
        assert!(!study.all_shrink);
        assert_eq!(study.median_ratio, 1.0);
    }

    #[test]
    fn quartering_gaps_pass() {
        let c = gap_table(
            &sample(0.0, 6, vec![10.0, 20.0]),
            &sample(0.25, 6, vec![10.4, 20.8]),
        );
        let f = gap_table(
            &sample(0.0, 12, vec![10.0, 20.0]),
            &sample(0.25, 12, vec![10.1, 20.2]),
        );
        assert!((c.rows[0].relative_gap - 0.4 / 10.2).abs() < 1e-15);
        let study = refinement_study(&c, &f, 0.5);
        assert!(study.pass);
        assert!((study.median_ratio - 0.25).abs() < 0.01);
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
    }
}
