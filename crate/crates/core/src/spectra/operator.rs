//! Flux-form finite differences for `−∂_i(g^{ij} ∂_j ·)` on the quotient grid.
//!
//! The operator is written as a weighted edge Laplacian
//! `(Au)(p) = Σ_d w(p, d)(u(p) − u(p + d)) + w(p − d, d)(u(p) − u(p − d))`.
//! Axis edges carry the half-point average of `g^{ii}`, divided by `h²`.
//! A mixed term `2 g^{ij} ∂_i ∂_j` becomes two diagonal edges `e_i ± e_j`
//! with weights `±g^{ij}/(2h²)`. Inverse metric entries depend on `x` only and
//! the `x` block is the identity, so mixed edges only run along `y` and `z`
//! where the coefficient is constant. Every edge contributes symmetrically,
//! which gives exact symmetry and zero row sums by construction.

use serde::{Deserialize, Serialize};

use super::csr::CsrMatrix;
use super::grid::{GridIndex, QuotientGrid, Wrap};
use super::parity::ParityOperator;
use super::SpectraError;
use crate::geometry::{family_inverse_metric, MetricFamily};

/// Which coefficients the grid operator uses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Scheme {
    /// `Φ_t* g` on Γ\G.
    Deformed { t: f64 },
    /// `Ψ_s* g` on Γ\G.
    Control { s: f64 },
    /// Identity coefficients on the plain torus.
    Flat,
}

impl Scheme {
    pub fn wrap(&self) -> Wrap {
        match self {
            Self::Flat => Wrap::Plain,
            _ => Wrap::Shear,
        }
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            Self::Deformed { t } => t,
            Self::Control { s } => s,
            Self::Flat => 0.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Deformed { .. } => "deformed",
            Self::Control { .. } => "control",
            Self::Flat => "flat",
        }
    }

    pub fn inverse_metric(&self, x1: f64, x2: f64) -> [[f64; 6]; 6] {
        let p = [x1, x2, 0.0, 0.0, 0.0, 0.0];
        match *self {
            Self::Deformed { t } => family_inverse_metric(&MetricFamily::Deformed(t), &p),
            Self::Control { s } => family_inverse_metric(&MetricFamily::Control(s), &p),
            Self::Flat => {
                std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }))
            }
        }
    }
}

/// One edge family of the stencil.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Edge {
    Axis(usize),
    /// `e_i + e_j` (`plus`) or `e_i − e_j`.
    Mixed {
        i: usize,
        j: usize,
        plus: bool,
    },
}

impl Edge {
    fn offset(&self) -> [i64; 6] {
        let mut d = [0; 6];
        match *self {
            Edge::Axis(i) => d[i] = 1,
            Edge::Mixed { i, j, plus } => {
                d[i] = 1;
                d[j] = if plus { 1 } else { -1 };
            }
        }
        d
    }
}

/// Grid operator given by its stencil; rows are generated on demand and
/// [`DiscreteOperator::to_csr`] materialises the matrix.
#[derive(Clone, Debug)]
pub struct DiscreteOperator {
    scheme: Scheme,
    grid: QuotientGrid,
    edges: Vec<Edge>,
    /// Edge weights per `(i1, i2) ∈ {0..N−1}²`, one per entry of `edges`.
    weights: Vec<f64>,
}

pub fn assemble(t: f64, n: usize) -> Result<DiscreteOperator, SpectraError> {
    assemble_scheme(Scheme::Deformed { t }, n)
}

pub fn assemble_scheme(scheme: Scheme, n: usize) -> Result<DiscreteOperator, SpectraError> {
    if n < 4 {
        return Err(SpectraError::GridTooSmall { n, min: 4 });
    }
    if n % 2 == 1 {
        return Err(SpectraError::OddGrid(n));
    }
    DiscreteOperator::new(scheme, QuotientGrid::new(n, scheme.wrap())?)
}

impl DiscreteOperator {
    fn new(scheme: Scheme, grid: QuotientGrid) -> Result<Self, SpectraError> {
        let n = grid.n();
        let h = grid.spacing();
        let coeff = |i1: usize, i2: usize| scheme.inverse_metric(i1 as f64 * h, i2 as f64 * h);
        let table: Vec<[[f64; 6]; 6]> = (0..=n)
            .flat_map(|i1| (0..=n).map(move |i2| (i1, i2)))
            .map(|(a, b)| coeff(a, b))
            .collect();
        let at = |i1: usize, i2: usize| &table[i1 * (n + 1) + i2];
        for g in &table {
            for i in 0..2 {
                for j in 0..6 {
                    assert!(i == j || g[i][j] == 0.0, "x directions must decouple");
                }
            }
        }

        let mut edges: Vec<Edge> = (0..6).map(Edge::Axis).collect();
        for i in 2..6 {
            for j in i + 1..6 {
                if table.iter().any(|g| g[i][j] != 0.0) {
                    edges.push(Edge::Mixed { i, j, plus: true });
                    edges.push(Edge::Mixed { i, j, plus: false });
                }
            }
        }

        let inv_h2 = 1.0 / (h * h);
        let mut weights = Vec::with_capacity(n * n * edges.len());
        for i1 in 0..n {
            for i2 in 0..n {
                let g = at(i1, i2);
                for e in &edges {
                    let w = match *e {
                        Edge::Axis(0) => 0.5 * (g[0][0] + at(i1 + 1, i2)[0][0]) * inv_h2,
                        Edge::Axis(1) => 0.5 * (g[1][1] + at(i1, i2 + 1)[1][1]) * inv_h2,
                        Edge::Axis(i) => g[i][i] * inv_h2,
                        Edge::Mixed { i, j, plus } => {
                            let w = 0.5 * g[i][j] * inv_h2;
                            if plus {
                                w
                            } else {
                                -w
                            }
                        }
                    };
                    weights.push(w);
                }
            }
        }
        Ok(Self {
            scheme,
            grid,
            edges,
            weights,
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn grid(&self) -> &QuotientGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    fn edge_weights(&self, idx: GridIndex) -> &[f64] {
        let k = self.edges.len();
        let base = (idx[0] * self.grid.n() + idx[1]) * k;
        &self.weights[base..base + k]
    }

    /// Appends the `(column, value)` entries of row `p` (unmerged).
    pub fn row_into(&self, p: usize, row: &mut Vec<(usize, f64)>) {
        let idx = self.grid.decode(p);
        let signed = idx.map(|i| i as i64);
        let forward = self.edge_weights(idx);
        let mut diag = 0.0;
        for (e, edge) in self.edges.iter().enumerate() {
            let d = edge.offset();
            let ahead = self
                .grid
                .canonical(std::array::from_fn(|k| signed[k] + d[k]));
            let behind = self
                .grid
                .canonical(std::array::from_fn(|k| signed[k] - d[k]));
            let wf = forward[e];
            let wb = self.edge_weights(behind)[e];
            diag += wf + wb;
            row.push((self.grid.linear(ahead), -wf));
            row.push((self.grid.linear(behind), -wb));
        }
        row.push((p, diag));
    }

    /// Row `p` with columns sorted and duplicates merged.
    pub fn row(&self, p: usize) -> Vec<(usize, f64)> {
        let mut row = Vec::new();
        self.row_into(p, &mut row);
        row.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged
    }

    pub fn to_csr(&self) -> CsrMatrix {
        CsrMatrix::from_row_fn(self.dim(), |p, row| self.row_into(p, row))
    }

    /// `max |A[Up][Uq] − A[p][q]|` over all stored entries, computed row by row
    /// without materialising the matrix.
    pub fn commutator_max(&self, parity: &ParityOperator) -> f64 {
        use rayon::prelude::*;
        assert_eq!(parity.grid().n(), self.grid.n());
        (0..self.dim())
            .into_par_iter()
            .map(|p| {
                let mine = self.row(p);
                let image = self.row(parity.apply_index(p));
                let mut worst = 0.0f64;
                for &(q, v) in &mine {
                    let uq = parity.apply_index(q);
                    let w = image.iter().find(|e| e.0 == uq).map_or(0.0, |e| e.1);
                    worst = worst.max((v - w).abs());
                }
                if mine.len() != image.len() {
                    worst = f64::INFINITY;
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(assemble(0.0, 5).unwrap_err(), SpectraError::OddGrid(5));
        assert!(matches!(
            assemble(0.0, 2),
            Err(SpectraError::GridTooSmall { .. })
        ));
    }

    #[test]
    fn stencil_width() {
        // 6 axis edges and 4 mixed pairs (y1z1, y2z1, y2z2, z1z2), both directions
        let op = assemble(0.25, 4).unwrap();
        assert_eq!(op.edges.len(), 14);
        assert_eq!(op.row(17).len(), 29);
        let control = assemble_scheme(Scheme::Control { s: 0.25 }, 4).unwrap();
        assert_eq!(control.edges.len(), 6 + 2 * 5);
        assert_eq!(assemble_scheme(Scheme::Flat, 4).unwrap().edges.len(), 6);
    }

    #[test]
    fn constants_in_kernel_and_symmetric() {
        for scheme in [
            Scheme::Deformed { t: 0.25 },
            Scheme::Control { s: 0.25 },
            Scheme::Flat,
        ] {
            let a = assemble_scheme(scheme, 4).unwrap().to_csr();
            assert!(a.max_row_sum() < 1e-9, "{scheme:?}");
            assert!(a.symmetry_defect() <= 1e-12, "{scheme:?}");
        }
    }

    #[test]
    fn diagonal_matches_coefficients() {
        // at x = 0 with t = 0: g^{ii} all 1 except none; axis x-edges average to 1
        let op = assemble(0.0, 4).unwrap();
        let n2 = 16.0;
        let d = op.row(0).iter().find(|e| e.0 == 0).unwrap().1;
        // 2·(1+1+1+1+1+1)·N²
        assert!((d - 12.0 * n2).abs() < 1e-12);
    }
}
