//! Small fixed-size linear algebra over any [`Scalar`].

use crate::scalar::Scalar;

pub type Vec6<S> = [S; 6];
pub type Mat6<S> = [[S; 6]; 6];

pub fn zero_vec<S: Scalar>() -> Vec6<S> {
    std::array::from_fn(|_| S::zero())
}

pub fn basis<S: Scalar>(i: usize) -> Vec6<S> {
    std::array::from_fn(|k| if k == i { S::one() } else { S::zero() })
}

pub fn zero<S: Scalar>() -> Mat6<S> {
    std::array::from_fn(|_| zero_vec())
}

pub fn identity<S: Scalar>() -> Mat6<S> {
    std::array::from_fn(basis)
}

pub fn diagonal<S: Scalar>(d: [i64; 6]) -> Mat6<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { S::from_int(d[i]) } else { S::zero() })
    })
}

pub fn transpose<S: Scalar>(m: &Mat6<S>) -> Mat6<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn mul<S: Scalar>(a: &Mat6<S>, b: &Mat6<S>) -> Mat6<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..6)
                .filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero())
                .fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

pub fn apply<S: Scalar>(m: &Mat6<S>, v: &Vec6<S>) -> Vec6<S> {
    std::array::from_fn(|i| {
        (0..6)
            .filter(|&k| !m[i][k].is_zero() && !v[k].is_zero())
            .fold(S::zero(), |acc, k| acc + m[i][k].clone() * v[k].clone())
    })
}

pub fn add_vec<S: Scalar>(a: &Vec6<S>, b: &Vec6<S>) -> Vec6<S> {
    std::array::from_fn(|i| a[i].clone() + b[i].clone())
}

pub fn sub_vec<S: Scalar>(a: &Vec6<S>, b: &Vec6<S>) -> Vec6<S> {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

pub fn sub<S: Scalar>(a: &Mat6<S>, b: &Mat6<S>) -> Mat6<S> {
    std::array::from_fn(|i| sub_vec(&a[i], &b[i]))
}

/// `Jᵀ M J`, the pullback of a bilinear form through a linear map.
pub fn congruence<S: Scalar>(j: &Mat6<S>, m: &Mat6<S>) -> Mat6<S> {
    mul(&transpose(j), &mul(m, j))
}

pub fn determinant<S: Scalar>(m: &Mat6<S>) -> S {
    let mut a = m.clone();
    let mut det = S::one();
    for col in 0..6 {
        let Some(pivot) = (col..6).find(|&r| !a[r][col].is_zero()) else {
            return S::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..6 {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            for c in col..6 {
                let v = a[col][c].clone() * factor.clone();
                a[r][c] = a[r][c].clone() - v;
            }
        }
    }
    det
}

/// Inverse by Gauss–Jordan elimination; `None` when singular.
pub fn inverse<S: Scalar>(m: &Mat6<S>) -> Option<Mat6<S>> {
    let mut a = m.clone();
    let mut inv = identity::<S>();
    for col in 0..6 {
        let pivot = (col..6).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..6 {
            a[col][c] = a[col][c].clone() / p.clone();
            inv[col][c] = inv[col][c].clone() / p.clone();
        }
        for r in 0..6 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..6 {
                let va = a[col][c].clone() * factor.clone();
                let vi = inv[col][c].clone() * factor.clone();
                a[r][c] = a[r][c].clone() - va;
                inv[r][c] = inv[r][c].clone() - vi;
            }
        }
    }
    Some(inv)
}

pub fn is_symmetric<S: Scalar>(m: &Mat6<S>) -> bool {
    (0..6).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn is_unit_lower_triangular<S: Scalar>(m: &Mat6<S>) -> bool {
    (0..6).all(|i| m[i][i].is_one() && (i + 1..6).all(|j| m[i][j].is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn inverse_and_determinant_agree() {
        let mut m = identity::<Rational>();
        m[4][2] = rat(-3, 2);
        m[5][3] = rat(1, 3);
        m[0][1] = rat(2, 1);
        m[2][2] = rat(-1, 1);
        assert_eq!(determinant(&m), rat(-1, 1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mul(&m, &inv), identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = diagonal::<Rational>([1, 1, 0, 1, 1, 1]);
        assert!(inverse(&m).is_none());
        assert_eq!(determinant(&m), rat(0, 1));
    }
}
