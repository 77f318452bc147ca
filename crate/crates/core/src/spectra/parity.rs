//! The involution induced by α on grid functions, and the operators it
//! induces on its even and odd subspaces.
//!
//! α acts by `(x, y, z) ↦ (x, −y, −z1, −z2 + 1/2)`, which on indices is
//! `(i1, i2, −j1, −j2, −l1, −l2 + N/2)` followed by canonicalisation.
//! The even subspace has the orthonormal basis `c_o Σ_{p∈o} δ_p` over orbits
//! `o` of the involution (`c_o = 1/√2` for pairs, 1 for fixed points); the odd
//! subspace has `(δ_p − δ_{Up})/√2` over pairs with `p < Up`.

use super::csr::CsrMatrix;
use super::grid::QuotientGrid;
use super::operator::DiscreteOperator;
use super::SpectraError;

#[derive(Clone, Debug)]
pub struct ParityOperator {
    grid: QuotientGrid,
    image: Vec<u32>,
    /// Orbit representatives (smaller index of each orbit), ascending.
    reps: Vec<u32>,
    orbit_of: Vec<u32>,
    /// Index of the pair among size-two orbits, `u32::MAX` for fixed points.
    odd_of: Vec<u32>,
    odd_reps: Vec<u32>,
}

/// The involution on the shear-periodic grid with `n` points per dimension.
pub fn parity_operator(n: usize) -> Result<ParityOperator, SpectraError> {
    if n % 2 == 1 {
        return Err(SpectraError::OddGrid(n));
    }
    ParityOperator::new(QuotientGrid::new(n, super::grid::Wrap::Shear)?)
}

impl ParityOperator {
    pub fn new(grid: QuotientGrid) -> Result<Self, SpectraError> {
        let n = grid.n();
        if n % 2 == 1 {
            return Err(SpectraError::OddGrid(n));
        }
        let half = (n / 2) as i64;
        let image: Vec<u32> = (0..grid.len())
            .map(|p| {
                let [i1, i2, j1, j2, l1, l2] = grid.decode(p).map(|i| i as i64);
                grid.linear(grid.canonical([i1, i2, -j1, -j2, -l1, -l2 + half])) as u32
            })
            .collect();
        let mut reps = Vec::new();
        let mut odd_reps = Vec::new();
        let mut orbit_of = vec![0u32; grid.len()];
        let mut odd_of = vec![u32::MAX; grid.len()];
        for p in 0..grid.len() {
            let q = image[p] as usize;
            if q < p {
                orbit_of[p] = orbit_of[q];
                odd_of[p] = odd_of[q];
                continue;
            }
            orbit_of[p] = reps.len() as u32;
            reps.push(p as u32);
            if q != p {
                odd_of[p] = odd_reps.len() as u32;
                odd_reps.push(p as u32);
            }
        }
        Ok(Self {
            grid,
            image,
            reps,
            orbit_of,
            odd_of,
            odd_reps,
        })
    }

    pub fn grid(&self) -> &QuotientGrid {
        &self.grid
    }

    pub fn apply_index(&self, p: usize) -> usize {
        self.image[p] as usize
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; u.len()];
        for (p, &q) in self.image.iter().enumerate() {
            v[q as usize] = u[p];
        }
        v
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(p, &q)| self.image[q as usize] as usize == p)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(|(p, &q)| *p == q as usize)
            .map(|(p, _)| p)
    }

    pub fn even_dim(&self) -> usize {
        self.reps.len()
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_reps.len()
    }

    fn weight(&self, o: usize) -> f64 {
        let p = self.reps[o] as usize;
        if self.image[p] as usize == p {
            1.0
        } else {
            std::f64::consts::FRAC_1_SQRT_2
        }
    }

    /// The operator on the even subspace in the orthonormal orbit basis:
    /// `R[o][o'] = |o| c_o c_o' Σ_{q∈o'} A[rep_o][q]`.
    pub fn even_operator(&self, op: &DiscreteOperator) -> CsrMatrix {
        CsrMatrix::from_row_fn(self.even_dim(), |o, row| {
            let p = self.reps[o] as usize;
            let scale = if self.image[p] as usize == p {
                1.0
            } else {
                std::f64::consts::SQRT_2
            };
            for (q, v) in op.row(p) {
                let o2 = self.orbit_of[q] as usize;
                row.push((o2, scale * self.weight(o2) * v));
            }
        })
    }

    /// The operator on the odd subspace: `R[o][o'] = A[p][p'] − A[p][Up']`.
    pub fn odd_operator(&self, op: &DiscreteOperator) -> CsrMatrix {
        CsrMatrix::from_row_fn(self.odd_dim(), |o, row| {
            let p = self.odd_reps[o] as usize;
            for (q, v) in op.row(p) {
                let o2 = self.odd_of[q];
                if o2 == u32::MAX {
                    continue;
                }
                let sign = if self.odd_reps[o2 as usize] as usize == q {
                    1.0
                } else {
                    -1.0
                };
                row.push((o2 as usize, sign * v));
            }
        })
    }

    /// Grid function of an even-subspace coordinate vector.
    pub fn lift_even(&self, v: &[f64]) -> Vec<f64> {
        (0..self.grid.len())
            .map(|p| {
                let o = self.orbit_of[p] as usize;
                self.weight(o) * v[o]
            })
            .collect()
    }

    /// Grid function of an odd-subspace coordinate vector.
    pub fn lift_odd(&self, v: &[f64]) -> Vec<f64> {
        (0..self.grid.len())
            .map(|p| match self.odd_of[p] {
                u32::MAX => 0.0,
                o => {
                    let sign = if self.odd_reps[o as usize] as usize == p {
                        1.0
                    } else {
                        -1.0
                    };
                    sign * std::f64::consts::FRAC_1_SQRT_2 * v[o as usize]
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::grid::Wrap;
    use crate::spectra::operator::assemble;

    #[test]
    fn involution_and_dimensions_at_n4() {
        let u = ParityOperator::new(QuotientGrid::new(4, Wrap::Shear).unwrap()).unwrap();
        assert!(u.is_involution());
        let fixed = u.fixed_points().count();
        // fixed iff 2j ≡ 0, 2l1 ≡ 0, 2l2 ≡ N/2 mod N for the x-independent part;
        // counted independently in the integration tests, here only the bookkeeping
        assert_eq!(u.even_dim(), fixed + (4096 - fixed) / 2);
        assert_eq!(u.odd_dim(), (4096 - fixed) / 2);
        assert!(ParityOperator::new(QuotientGrid::new(5, Wrap::Shear).unwrap()).is_err());
    }

    #[test]
    fn reduced_operators_match_projection() {
        let op = assemble(0.25, 4).unwrap();
        let a = op.to_csr();
        let u = ParityOperator::new(*op.grid()).unwrap();
        let even = u.even_operator(&op);
        let odd = u.odd_operator(&op);
        // e_o' lifted, multiplied by A, compared with the lifted reduced column
        for (reduced, dim, lift) in [
            (
                &even,
                u.even_dim(),
                &(|v: &[f64]| u.lift_even(v)) as &dyn Fn(&[f64]) -> Vec<f64>,
            ),
            (&odd, u.odd_dim(), &|v: &[f64]| u.lift_odd(v)),
        ] {
            for o in [0, 1, dim / 3, dim - 1] {
                let mut e = vec![0.0; dim];
                e[o] = 1.0;
                let mut av = vec![0.0; a.dim()];
                a.matvec(&lift(&e), &mut av);
                let col: Vec<f64> = (0..dim).map(|r| reduced.get(r, o)).collect();
                let expect = lift(&col);
                for (x, y) in av.iter().zip(&expect) {
                    assert!((x - y).abs() < 1e-9);
                }
            }
        }
    }
}
