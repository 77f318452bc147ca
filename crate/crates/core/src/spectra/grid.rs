//! Grid on the fundamental domain `[0, 1)⁶` of Γ\G with shear-periodic
//! identifications.
//!
//! A grid index `(i1, i2, j1, j2, l1, l2)` is the point `(i1, i2, j1, j2, l1, l2)/N`.
//! Leaving the domain in `x1` by one period is undone by left multiplication
//! with the inverse of a lattice generator, which shears the central
//! coordinates: `l1 ← l1 − j1`, `l2 ← l2 − j2`. Leaving in `x2` gives
//! `l1 ← l1 − j2`. The `y` and `z` directions wrap plainly.

use super::SpectraError;

/// How the grid identifies opposite faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wrap {
    /// Identifications `x ∼ γ·x` by the integer lattice.
    Shear,
    /// Plain torus `ℝ⁶/ℤ⁶`.
    Plain,
}

pub type GridIndex = [usize; 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuotientGrid {
    n: usize,
    wrap: Wrap,
}

impl QuotientGrid {
    pub fn new(n: usize, wrap: Wrap) -> Result<Self, SpectraError> {
        if n < 2 {
            return Err(SpectraError::GridTooSmall { n, min: 2 });
        }
        Ok(Self { n, wrap })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn wrap(&self) -> Wrap {
        self.wrap
    }

    /// Number of grid points, `N⁶`.
    pub fn len(&self) -> usize {
        self.n.pow(6)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Row-major linear index, `l2` fastest.
    pub fn linear(&self, idx: GridIndex) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn decode(&self, mut lin: usize) -> GridIndex {
        let mut idx = [0; 6];
        for slot in idx.iter_mut().rev() {
            *slot = lin % self.n;
            lin /= self.n;
        }
        idx
    }

    pub fn canonical(&self, idx: [i64; 6]) -> GridIndex {
        match self.wrap {
            Wrap::Shear => canonical_index(idx, self.n),
            Wrap::Plain => idx.map(|i| i.rem_euclid(self.n as i64) as usize),
        }
    }

    pub fn position(&self, idx: GridIndex) -> [f64; 6] {
        idx.map(|i| i as f64 / self.n as f64)
    }
}

/// Applies the lattice generator reduction along one axis, without reducing
/// the other coordinates. `x` axes shift the central indices by the current
/// (unreduced) `y` indices.
pub fn reduce_axis(mut idx: [i64; 6], axis: usize, n: usize) -> [i64; 6] {
    let n = n as i64;
    let q = idx[axis].div_euclid(n);
    idx[axis] -= q * n;
    match axis {
        0 => {
            idx[4] -= q * idx[2];
            idx[5] -= q * idx[3];
        }
        1 => idx[4] -= q * idx[3],
        _ => {}
    }
    idx
}

/// Canonical representative in `{0, …, N−1}⁶` of an arbitrary integer index
/// under the shear-periodic identifications.
pub fn canonical_index(idx: [i64; 6], n: usize) -> GridIndex {
    let idx = reduce_axis(reduce_axis(idx, 0, n), 1, n);
    idx.map(|i| i.rem_euclid(n as i64) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn in_range_is_unchanged() {
        assert_eq!(canonical_index([1, 2, 3, 0, 5, 4], 6), [1, 2, 3, 0, 5, 4]);
    }

    #[test]
    fn x1_wrap_shears_both_central_indices() {
        let n = 6;
        let (k1, k2, l1, l2) = (2, 5, 1, 3);
        assert_eq!(
            canonical_index([n as i64, 0, k1, k2, l1, l2], n),
            [
                0,
                0,
                k1 as usize,
                k2 as usize,
                (l1 - k1).rem_euclid(6) as usize,
                (l2 - k2).rem_euclid(6) as usize
            ]
        );
        // x2 wrap only touches l1
        assert_eq!(
            canonical_index([0, n as i64, k1, k2, l1, l2], n),
            [0, 0, 2, 5, 2, 3]
        );
    }

    #[test]
    fn reductions_commute_exhaustively_at_n2() {
        let n = 2usize;
        let range = -(n as i64)..2 * n as i64;
        for a in range.clone() {
            for b in range.clone() {
                for k1 in range.clone() {
                    for k2 in range.clone() {
                        let idx = [a, b, k1, k2, 1, 0];
                        let xy = reduce_axis(reduce_axis(idx, 0, n), 1, n);
                        let yx = reduce_axis(reduce_axis(idx, 1, n), 0, n);
                        let norm = |v: [i64; 6]| v.map(|i| i.rem_euclid(n as i64));
                        assert_eq!(norm(xy), norm(yx));
                        // reducing y first (plainly) gives the same representative too
                        let y_first = reduce_axis(reduce_axis(idx, 2, n), 3, n);
                        assert_eq!(canonical_index(y_first, n), canonical_index(idx, n));
                        let c = canonical_index(idx, n);
                        assert_eq!(canonical_index(c.map(|i| i as i64), n), c);
                    }
                }
            }
        }
    }

    #[test]
    fn linear_roundtrip() {
        let g = QuotientGrid::new(4, Wrap::Shear).unwrap();
        for lin in [0, 1, 17, 4095] {
            assert_eq!(g.linear(g.decode(lin)), lin);
        }
        assert!(QuotientGrid::new(1, Wrap::Plain).is_err());
    }
}
