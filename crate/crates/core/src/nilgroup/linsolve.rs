//! Exact Gauss–Jordan elimination for small affine systems.

use crate::scalar::Scalar;

/// Solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineSolution<S> {
    Inconsistent,
    /// `particular + span(directions)`. The particular solution has every free
    /// variable set to zero; `directions[k]` is the kernel vector obtained by
    /// setting the `k`-th free variable to one.
    Affine {
        particular: Vec<S>,
        directions: Vec<Vec<S>>,
        pivots: Vec<usize>,
    },
}

impl<S: Scalar> AffineSolution<S> {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Self::Affine { .. })
    }

    pub fn particular(&self) -> Option<&[S]> {
        match self {
            Self::Affine { particular, .. } => Some(particular),
            Self::Inconsistent => None,
        }
    }
}

/// Reduced row echelon form of the augmented matrix `[A | b]`, pivoting on
/// columns in increasing order. Returns the reduced rows and pivot columns.
pub fn rref<S: Scalar>(rows: &[Vec<S>]) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut a: Vec<Vec<S>> = rows.to_vec();
    let width = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    // last column is the right-hand side
    for col in 0..width.saturating_sub(1) {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pv = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v = v.clone() / pv.clone();
        }
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for c in 0..width {
                let d = a[r][c].clone() * factor.clone();
                a[i][c] = a[i][c].clone() - d;
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (a, pivots)
}

/// Solves `A x = b` exactly. `a` is row-major with `unknowns` columns.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S], unknowns: usize) -> AffineSolution<S> {
    let rows: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            debug_assert_eq!(row.len(), unknowns);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    if rows.is_empty() {
        return AffineSolution::Affine {
            particular: vec![S::zero(); unknowns],
            directions: (0..unknowns).map(|k| unit(unknowns, k)).collect(),
            pivots: Vec::new(),
        };
    }
    let (red, pivots) = rref(&rows);
    if red
        .iter()
        .skip(pivots.len())
        .any(|row| !row[unknowns].is_zero())
    {
        return AffineSolution::Inconsistent;
    }
    let mut particular = vec![S::zero(); unknowns];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = red[row][unknowns].clone();
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = unit(unknowns, f);
            for (row, &p) in pivots.iter().enumerate() {
                d[p] = -red[row][f].clone();
            }
            d
        })
        .collect();
    AffineSolution::Affine {
        particular,
        directions,
        pivots,
    }
}

fn unit<S: Scalar>(n: usize, k: usize) -> Vec<S> {
    (0..n)
        .map(|i| if i == k { S::one() } else { S::zero() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn solves_underdetermined_system() {
        // x + 2y = 3, z free
        let a = vec![vec![rat(1, 1), rat(2, 1), rat(0, 1)]];
        let sol = solve(&a, &[rat(3, 1)], 3);
        let AffineSolution::Affine {
            particular,
            directions,
            pivots,
        } = sol
        else {
            panic!()
        };
        assert_eq!(pivots, vec![0]);
        assert_eq!(particular, vec![rat(3, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(directions.len(), 2);
        assert_eq!(directions[0], vec![rat(-2, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn detects_inconsistency() {
        let a: Vec<Vec<Rational>> = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(2, 1)]];
        assert_eq!(
            solve(&a, &[rat(1, 1), rat(3, 1)], 2),
            AffineSolution::Inconsistent
        );
        let zero: Vec<Vec<Rational>> = vec![vec![rat(0, 1)]];
        assert_eq!(solve(&zero, &[rat(1, 1)], 1), AffineSolution::Inconsistent);
    }
}
