//! Compressed sparse row storage with a blocked product for row-major
//! multivectors.

use rayon::prelude::*;

/// Rows per parallel work item. Fixed so that every reduction sees the same
/// partition regardless of the thread count.
pub(crate) const CHUNK_ROWS: usize = 2048;

#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from per-row `(column, value)` lists; columns are sorted and
    /// duplicates summed.
    pub fn from_rows(n: usize, rows: Vec<Vec<(usize, f64)>>) -> Self {
        assert_eq!(rows.len(), n);
        assert!(n <= u32::MAX as usize);
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        for mut row in rows {
            merge_row(&mut row);
            for (c, v) in row {
                cols.push(c as u32);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    /// Builds by evaluating `row(i)` for every row, in parallel chunks.
    pub fn from_row_fn<F>(n: usize, row: F) -> Self
    where
        F: Fn(usize, &mut Vec<(usize, f64)>) + Sync,
    {
        let chunks: Vec<(Vec<usize>, Vec<u32>, Vec<f64>)> = (0..n.div_ceil(CHUNK_ROWS))
            .into_par_iter()
            .map(|c| {
                let lo = c * CHUNK_ROWS;
                let hi = (lo + CHUNK_ROWS).min(n);
                let mut lens = Vec::with_capacity(hi - lo);
                let mut cols = Vec::new();
                let mut vals = Vec::new();
                let mut buf = Vec::new();
                for i in lo..hi {
                    buf.clear();
                    row(i, &mut buf);
                    merge_row(&mut buf);
                    lens.push(buf.len());
                    for &(c, v) in &buf {
                        cols.push(c as u32);
                        vals.push(v);
                    }
                }
                (lens, cols, vals)
            })
            .collect();
        let nnz = chunks.iter().map(|c| c.1.len()).sum();
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        for (lens, c, v) in chunks {
            for len in lens {
                row_ptr.push(row_ptr.last().unwrap() + len);
            }
            cols.extend_from_slice(&c);
            vals.extend_from_slice(&v);
        }
        Self {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    pub(crate) fn parts(&self) -> (&[usize], &[u32], &[f64]) {
        (&self.row_ptr, &self.cols, &self.vals)
    }

    pub(crate) fn from_parts(row_ptr: Vec<usize>, cols: Vec<u32>, vals: Vec<f64>) -> Option<Self> {
        let n = row_ptr.len().checked_sub(1)?;
        let ok = row_ptr[0] == 0
            && row_ptr.windows(2).all(|w| w[0] <= w[1])
            && row_ptr[n] == cols.len()
            && cols.len() == vals.len()
            && cols.iter().all(|&c| (c as usize) < n);
        ok.then_some(Self {
            n,
            row_ptr,
            cols,
            vals,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()]
            .iter()
            .map(|&c| c as usize)
            .zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[r.clone()].binary_search(&(j as u32)) {
            Ok(pos) => self.vals[r.start + pos],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    /// `max |A_ij − A_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        (0..self.n)
            .into_par_iter()
            .map(|i| {
                self.row(i)
                    .map(|(j, v)| (v - self.get(j, i)).abs())
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// `max_i |Σ_j A_ij|`.
    pub fn max_row_sum(&self) -> f64 {
        (0..self.n)
            .into_par_iter()
            .map(|i| self.row(i).map(|(_, v)| v).sum::<f64>().abs())
            .reduce(|| 0.0, f64::max)
    }

    /// Gershgorin bound on the largest eigenvalue.
    pub fn gershgorin_upper(&self) -> f64 {
        (0..self.n)
            .into_par_iter()
            .map(|i| {
                self.row(i)
                    .map(|(j, v)| if j == i { v } else { v.abs() })
                    .sum::<f64>()
            })
            .reduce(|| f64::NEG_INFINITY, f64::max)
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        self.matmul_block(x, y, 1);
    }

    /// `Y = A X` for row-major `n × m` blocks.
    pub fn matmul_block(&self, x: &[f64], y: &mut [f64], m: usize) {
        self.matmul_block_fused(x, y, m, |_, acc, out| out.copy_from_slice(acc));
    }

    /// Row-wise fused product: for each row `i`, `finish(i, (A X)_i, Y_i)`.
    pub(crate) fn matmul_block_fused<F>(&self, x: &[f64], y: &mut [f64], m: usize, finish: F)
    where
        F: Fn(usize, &[f64], &mut [f64]) + Sync,
    {
        assert_eq!(x.len(), self.n * m);
        assert_eq!(y.len(), self.n * m);
        y.par_chunks_mut(CHUNK_ROWS * m)
            .enumerate()
            .for_each(|(c, out)| {
                let mut acc = vec![0.0; m];
                for (r, out_row) in out.chunks_mut(m).enumerate() {
                    let i = c * CHUNK_ROWS + r;
                    acc.iter_mut().for_each(|a| *a = 0.0);
                    for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                        let v = self.vals[k];
                        let xr = &x[self.cols[k] as usize * m..][..m];
                        for (a, &xv) in acc.iter_mut().zip(xr) {
                            *a += v * xv;
                        }
                    }
                    finish(i, &acc, out_row);
                }
            });
    }

    pub fn to_dense(&self) -> faer::Mat<f64> {
        let mut d = faer::Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                d.write(i, j, v);
            }
        }
        d
    }
}

fn merge_row(row: &mut Vec<(usize, f64)>) {
    row.sort_by_key(|e| e.0);
    let mut out = 0;
    for k in 0..row.len() {
        if out > 0 && row[out - 1].0 == row[k].0 {
            row[out - 1].1 += row[k].1;
        } else {
            row[out] = row[k];
            out += 1;
        }
    }
    row.truncate(out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_laplacian(n: usize) -> CsrMatrix {
        CsrMatrix::from_row_fn(n, |i, row| {
            row.push((i, 2.0));
            row.push(((i + 1) % n, -1.0));
            row.push(((i + n - 1) % n, -1.0));
        })
    }

    #[test]
    fn duplicates_are_merged_and_sorted() {
        let a = CsrMatrix::from_rows(2, vec![vec![(1, 1.0), (0, 2.0), (1, 3.0)], vec![(0, 4.0)]]);
        assert_eq!(a.row(0).collect::<Vec<_>>(), vec![(0, 2.0), (1, 4.0)]);
        assert_eq!(a.get(1, 1), 0.0);
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn cycle_properties() {
        let a = path_laplacian(5000);
        assert_eq!(a.symmetry_defect(), 0.0);
        assert_eq!(a.max_row_sum(), 0.0);
        assert_eq!(a.gershgorin_upper(), 4.0);
        assert_eq!(a.trace(), 10000.0);
    }

    #[test]
    fn block_product_matches_columnwise() {
        let n = 4100;
        let a = path_laplacian(n);
        let m = 3;
        let x: Vec<f64> = (0..n * m).map(|k| ((k * 7919) % 101) as f64).collect();
        let mut y = vec![0.0; n * m];
        a.matmul_block(&x, &mut y, m);
        for j in 0..m {
            let col: Vec<f64> = (0..n).map(|i| x[i * m + j]).collect();
            let mut out = vec![0.0; n];
            a.matvec(&col, &mut out);
            for i in 0..n {
                assert_eq!(out[i], y[i * m + j]);
            }
        }
    }
}
