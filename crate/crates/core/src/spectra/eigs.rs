//! Smallest eigenpairs of a sparse symmetric positive-semidefinite matrix by
//! Chebyshev-filtered subspace iteration.
//!
//! Each outer iteration applies a degree-`d` scaled Chebyshev filter that
//! damps the interval `[a, b]` (`a` the largest current Ritz value, `b` a
//! Gershgorin bound), re-orthonormalises the block and performs a
//! Rayleigh–Ritz step. Blocks are row-major `n × m` so one pass over the
//! matrix serves every column. All reductions run over fixed row chunks and
//! are combined in chunk order, so results do not depend on the thread count.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::csr::{CsrMatrix, CHUNK_ROWS};
use super::SpectraError;
use crate::sampling;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenOptions {
    pub k: usize,
    /// Residual bound `‖Av − λv‖ ≤ tol·max(1, λ)`.
    pub tol: f64,
    pub seed: u64,
    /// Block width; `None` picks `max(2k, k + 8)`.
    pub block: Option<usize>,
    pub degree: usize,
    pub max_iterations: usize,
}

impl EigenOptions {
    pub fn new(k: usize, tol: f64, seed: u64) -> Self {
        Self {
            k,
            tol,
            seed,
            block: None,
            degree: 16,
            max_iterations: 500,
        }
    }

    fn block_width(&self, n: usize) -> usize {
        self.block.unwrap_or((2 * self.k).max(self.k + 8)).min(n)
    }

    /// Widest block the solver may grow to when convergence stalls.
    fn block_limit(&self, n: usize) -> usize {
        self.block_width(n)
            .max((4 * self.k).max(self.k + 32))
            .min(n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Row-major `n × k`.
    #[serde(skip)]
    pub vectors: Vec<f64>,
    pub iterations: usize,
    pub matvecs: usize,
    /// False when returned as partial output of a failed run.
    pub converged: bool,
}

impl EigenPairs {
    pub fn vector(&self, j: usize) -> Vec<f64> {
        let k = self.values.len();
        self.vectors.iter().skip(j).step_by(k).copied().collect()
    }
}

struct Block {
    n: usize,
    m: usize,
    data: Vec<f64>,
}

impl Block {
    fn zeros(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            data: vec![0.0; n * m],
        }
    }

    /// `Σ_chunks Xᵀ Y` accumulated chunk-wise in a fixed order.
    fn gram(&self, other: &Block) -> Vec<f64> {
        let m = self.m;
        let partials: Vec<Vec<f64>> = self
            .data
            .par_chunks(CHUNK_ROWS * m)
            .zip(other.data.par_chunks(CHUNK_ROWS * m))
            .map(|(xc, yc)| {
                let mut g = vec![0.0; m * m];
                for (xr, yr) in xc.chunks(m).zip(yc.chunks(m)) {
                    for (i, &xi) in xr.iter().enumerate() {
                        let gi = &mut g[i * m..(i + 1) * m];
                        for (gij, &yj) in gi.iter_mut().zip(yr) {
                            *gij += xi * yj;
                        }
                    }
                }
                g
            })
            .collect();
        let mut g = vec![0.0; m * m];
        for p in partials {
            for (a, b) in g.iter_mut().zip(p) {
                *a += b;
            }
        }
        g
    }

    /// `X ← X T` for an `m × m'` row-major `T`; the block width becomes `m'`.
    fn transform(&mut self, t: &[f64], cols: usize) {
        let m = self.m;
        let mut out = vec![0.0; self.n * cols];
        out.par_chunks_mut(CHUNK_ROWS * cols)
            .zip(self.data.par_chunks(CHUNK_ROWS * m))
            .for_each(|(oc, xc)| {
                for (or, xr) in oc.chunks_mut(cols).zip(xc.chunks(m)) {
                    for (i, &xi) in xr.iter().enumerate() {
                        if xi == 0.0 {
                            continue;
                        }
                        for (o, &tij) in or.iter_mut().zip(&t[i * cols..(i + 1) * cols]) {
                            *o += xi * tij;
                        }
                    }
                }
            });
        self.data = out;
        self.m = cols;
    }

    /// Appends `extra` random columns.
    fn widen<R: Rng>(&mut self, extra: usize, rng: &mut R) {
        let m = self.m + extra;
        let mut data = Vec::with_capacity(self.n * m);
        for row in self.data.chunks(self.m) {
            data.extend_from_slice(row);
            data.extend((0..extra).map(|_| rng.gen_range(-1.0..1.0)));
        }
        self.data = data;
        self.m = m;
    }

    fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().skip(j).step_by(self.m).copied()
    }
}

/// Eigen decomposition of a small symmetric row-major matrix, ascending.
fn small_eigh(h: &[f64], m: usize) -> (Vec<f64>, Vec<f64>) {
    let mat = faer::Mat::from_fn(m, m, |i, j| 0.5 * (h[i * m + j] + h[j * m + i]));
    let evd = mat.selfadjoint_eigendecomposition(faer::Side::Lower);
    let s = evd.s().column_vector();
    let u = evd.u();
    let values = (0..m).map(|i| s.read(i)).collect();
    let mut vecs = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            vecs[i * m + j] = u.read(i, j);
        }
    }
    (values, vecs)
}

/// Orthonormalises the block by two passes of eigenvalue-based whitening.
/// Directions whose Gram eigenvalue falls below roundoff are replaced by
/// fresh random vectors.
fn orthonormalise<R: Rng>(x: &mut Block, rng: &mut R) {
    let m = x.m;
    for _pass in 0..3 {
        let g = x.gram(x);
        let (vals, vecs) = small_eigh(&g, m);
        let top = vals.iter().fold(0.0f64, |a, &b| a.max(b));
        let floor = top * 1e-13;
        let mut t = vecs.clone();
        let mut lost = Vec::new();
        for j in 0..m {
            let s = if vals[j] > floor {
                1.0 / vals[j].sqrt()
            } else {
                lost.push(j);
                0.0
            };
            for i in 0..m {
                t[i * m + j] *= s;
            }
        }
        x.transform(&t, m);
        if lost.is_empty() {
            let g = x.gram(x);
            let off = (0..m)
                .flat_map(|i| (0..m).map(move |j| (i, j)))
                .map(|(i, j)| (g[i * m + j] - if i == j { 1.0 } else { 0.0 }).abs())
                .fold(0.0, f64::max);
            if off < 1e-12 {
                return;
            }
            continue;
        }
        for &j in &lost {
            for i in 0..x.n {
                x.data[i * m + j] = rng.gen_range(-1.0..1.0);
            }
        }
    }
}

fn random_block<R: Rng>(n: usize, m: usize, rng: &mut R) -> Block {
    let mut b = Block::zeros(n, m);
    b.data
        .iter_mut()
        .for_each(|v| *v = rng.gen_range(-1.0..1.0));
    b
}

/// Scaled Chebyshev filter of degree `deg` damping `[a, b]`, normalised at `a0 < a`.
fn chebyshev_filter(op: &CsrMatrix, x: Block, deg: usize, a: f64, b: f64, a0: f64) -> Block {
    let (n, m) = (x.n, x.m);
    let e = 0.5 * (b - a);
    let c = 0.5 * (b + a);
    let mut sigma = e / (a0 - c);
    let tau = 2.0 / sigma;
    let mut prev = x;
    let mut cur = Block::zeros(n, m);
    let s1 = sigma / e;
    op.matmul_block_fused(&prev.data, &mut cur.data, m, |i, ax, out| {
        let xr = &prev.data[i * m..(i + 1) * m];
        for ((o, &v), &xv) in out.iter_mut().zip(ax).zip(xr) {
            *o = (v - c * xv) * s1;
        }
    });
    for _ in 1..deg {
        let sigma_new = 1.0 / (tau - sigma);
        let f = 2.0 * sigma_new / e;
        let g = sigma * sigma_new;
        // prev ← f(A − c)cur − g·prev, written in place row by row
        let cur_data = &cur.data;
        op.matmul_block_fused(cur_data, &mut prev.data, m, |i, ax, out| {
            let yr = &cur_data[i * m..(i + 1) * m];
            for ((o, &v), &yv) in out.iter_mut().zip(ax).zip(yr) {
                *o = f * (v - c * yv) - g * *o;
            }
        });
        std::mem::swap(&mut prev, &mut cur);
        sigma = sigma_new;
    }
    cur
}

/// The `k` smallest eigenpairs, ascending.
pub fn eigs_smallest(op: &CsrMatrix, opts: &EigenOptions) -> Result<EigenPairs, SpectraError> {
    let n = op.dim();
    let k = opts.k;
    if k == 0 || k >= n {
        return Err(SpectraError::TooManyEigenvalues { k, n });
    }
    let mut m = opts.block_width(n);
    let limit = opts.block_limit(n);
    let mut rng = sampling::rng(opts.seed);
    let upper = op.gershgorin_upper();

    let mut x = random_block(n, m, &mut rng);
    let mut matvecs = 0;
    let mut theta: Vec<f64> = Vec::new();
    let mut residuals = vec![f64::INFINITY; k];
    let mut w = Block::zeros(n, m);
    let mut checkpoint = f64::INFINITY;
    for iter in 0..=opts.max_iterations {
        if iter > 0 {
            let a = theta[theta.len() - 1];
            let a0 = theta[0].min(a - 1e-12 * upper);
            if a < upper {
                x = chebyshev_filter(op, x, opts.degree, a, upper, a0);
                matvecs += opts.degree * m;
            }
        }
        orthonormalise(&mut x, &mut rng);
        if w.m != m {
            w = Block::zeros(n, m);
        }
        op.matmul_block(&x.data, &mut w.data, m);
        matvecs += m;
        let h = x.gram(&w);
        let (vals, vecs) = small_eigh(&h, m);
        x.transform(&vecs, m);
        w.transform(&vecs, m);
        theta = vals;

        let mut done = true;
        let mut worst = 0.0f64;
        for j in 0..k {
            let r: f64 = x
                .column(j)
                .zip(w.column(j))
                .map(|(xv, wv)| (wv - theta[j] * xv).powi(2))
                .sum::<f64>()
                .sqrt();
            residuals[j] = r;
            let bound = opts.tol * theta[j].abs().max(1.0);
            done &= r <= bound;
            worst = worst.max(r / bound);
        }
        if done {
            return Ok(finish(x, theta, residuals, iter, matvecs, k, true));
        }
        // A cluster straddling the block edge leaves no gap for the filter;
        // widen the block when ten iterations fail to halve the residuals.
        if iter > 0 && iter % 10 == 0 {
            if worst > 0.5 * checkpoint && m < limit {
                let extra = (m / 2).max(8).min(limit - m);
                x.widen(extra, &mut rng);
                m += extra;
            }
            checkpoint = worst;
        }
    }
    let converged = (0..k)
        .filter(|&j| residuals[j] <= opts.tol * theta[j].abs().max(1.0))
        .count();
    Err(SpectraError::NotConverged {
        iterations: opts.max_iterations,
        converged,
        requested: k,
        partial: Box::new(finish(
            x,
            theta,
            residuals,
            opts.max_iterations,
            matvecs,
            k,
            false,
        )),
    })
}

fn finish(
    x: Block,
    theta: Vec<f64>,
    residuals: Vec<f64>,
    iterations: usize,
    matvecs: usize,
    k: usize,
    converged: bool,
) -> EigenPairs {
    let m = x.m;
    let vectors = x
        .data
        .chunks(m)
        .flat_map(|r| r[..k].iter().copied())
        .collect();
    EigenPairs {
        values: theta[..k].to_vec(),
        residuals,
        vectors,
        iterations,
        matvecs,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path graph Laplacian on a cycle of length n: eigenvalues 4 sin²(πm/n).
    fn cycle(n: usize) -> CsrMatrix {
        CsrMatrix::from_row_fn(n, |i, row| {
            row.push((i, 2.0));
            row.push(((i + 1) % n, -1.0));
            row.push(((i + n - 1) % n, -1.0));
        })
    }

    #[test]
    fn cycle_spectrum() {
        let n = 400;
        let a = cycle(n);
        let res = eigs_smallest(&a, &EigenOptions::new(5, 1e-10, 3)).unwrap();
        let mut expect: Vec<f64> = (0..n)
            .map(|m| 4.0 * (std::f64::consts::PI * m as f64 / n as f64).sin().powi(2))
            .collect();
        expect.sort_by(f64::total_cmp);
        for (got, want) in res.values.iter().zip(&expect) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        for j in 0..5 {
            let v = res.vector(j);
            let mut av = vec![0.0; n];
            a.matvec(&v, &mut av);
            let r: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - res.values[j] * y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(r <= 1e-10 * res.values[j].max(1.0));
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let a = cycle(300);
        let opts = EigenOptions::new(4, 1e-9, 11);
        let r1 = eigs_smallest(&a, &opts).unwrap();
        let r2 = eigs_smallest(&a, &opts).unwrap();
        assert_eq!(r1.values, r2.values);
    }

    #[test]
    fn iteration_cap_reports_partial() {
        let a = cycle(2000);
        let mut opts = EigenOptions::new(6, 1e-12, 1);
        opts.max_iterations = 1;
        opts.degree = 2;
        match eigs_smallest(&a, &opts) {
            Err(SpectraError::NotConverged {
                partial, requested, ..
            }) => {
                assert_eq!(requested, 6);
                assert!(!partial.converged);
                assert_eq!(partial.values.len(), 6);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
        assert!(eigs_smallest(&a, &EigenOptions::new(2000, 1e-8, 0)).is_err());
    }
}
