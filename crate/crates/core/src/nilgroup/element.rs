use std::fmt;
use std::ops::Mul;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::mat6::{self, Mat6, Vec6};
use crate::scalar::{Rational, Scalar};

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const Y1: usize = 2;
pub const Y2: usize = 3;
pub const Z1: usize = 4;
pub const Z2: usize = 5;

/// A point of the group, in coordinates `(x1, x2, y1, y2, z1, z2)`.
///
/// Multiplication is
/// `(x, y, z)(x', y', z') = (x + x', y + y', z1 + z1' + x1 y1' + x2 y2', z2 + z2' + x1 y2')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement<S> {
    coords: Vec6<S>,
}

/// The bilinear correction `B(a, b)` in `a·b = a + b + B(a, b)`.
pub fn quadratic_term<S: Scalar>(a: &Vec6<S>, b: &Vec6<S>) -> Vec6<S> {
    let mut out = mat6::zero_vec();
    out[Z1] = a[X1].clone() * b[Y1].clone() + a[X2].clone() * b[Y2].clone();
    out[Z2] = a[X1].clone() * b[Y2].clone();
    out
}

/// Matrix of the linear map `v ↦ B(a, v)`.
pub fn quadratic_term_matrix<S: Scalar>(a: &Vec6<S>) -> Mat6<S> {
    let mut m = mat6::zero();
    m[Z1][Y1] = a[X1].clone();
    m[Z1][Y2] = a[X2].clone();
    m[Z2][Y2] = a[X1].clone();
    m
}

impl<S: Scalar> GroupElement<S> {
    pub fn new(coords: Vec6<S>) -> Self {
        Self { coords }
    }

    pub fn identity() -> Self {
        Self::new(mat6::zero_vec())
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        Self::new(c.map(S::from_int))
    }

    /// The central element `(0, 0, 0, 0, z1, z2)`.
    pub fn central(z1: S, z2: S) -> Self {
        let mut c = mat6::zero_vec();
        c[Z1] = z1;
        c[Z2] = z2;
        Self::new(c)
    }

    pub fn coords(&self) -> &Vec6<S> {
        &self.coords
    }

    pub fn into_coords(self) -> Vec6<S> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &S {
        &self.coords[i]
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Elements with vanishing `x` and `y` coordinates form the center.
    pub fn is_central(&self) -> bool {
        self.coords[..4].iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let sum = mat6::add_vec(&self.coords, &other.coords);
        Self::new(mat6::add_vec(
            &sum,
            &quadratic_term(&self.coords, &other.coords),
        ))
    }

    pub fn inverse(&self) -> Self {
        let c = &self.coords;
        Self::new([
            -c[X1].clone(),
            -c[X2].clone(),
            -c[Y1].clone(),
            -c[Y2].clone(),
            -c[Z1].clone() + c[X1].clone() * c[Y1].clone() + c[X2].clone() * c[Y2].clone(),
            -c[Z2].clone() + c[X1].clone() * c[Y2].clone(),
        ])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GroupElement<T> {
        GroupElement::new(std::array::from_fn(|i| f(&self.coords[i])))
    }

    pub fn to_f64(&self) -> GroupElement<f64> {
        self.map(|c| c.to_f64())
    }

    pub fn squared_norm(&self) -> S {
        self.coords
            .iter()
            .fold(S::zero(), |acc, c| acc + c.clone() * c.clone())
    }
}

impl<S: Scalar> Mul for &GroupElement<S> {
    type Output = GroupElement<S>;

    fn mul(self, rhs: Self) -> GroupElement<S> {
        GroupElement::mul(self, rhs)
    }
}

impl<S: Scalar> fmt::Display for GroupElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<S: Scalar> Serialize for GroupElement<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        let mut seq = serializer.serialize_seq(Some(6))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// `a x a⁻¹`. Only the central coordinates change:
/// `z1 += a1 y1 + a2 y2 − x1 b1 − x2 b2`, `z2 += a1 y2 − x1 b2`, with `a = (a1, a2, b1, b2, ·, ·)`.
pub fn conjugate<S: Scalar>(a: &GroupElement<S>, x: &GroupElement<S>) -> GroupElement<S> {
    let (a, c) = (&a.coords, &x.coords);
    let mut out = c.clone();
    out[Z1] = c[Z1].clone() + a[X1].clone() * c[Y1].clone() + a[X2].clone() * c[Y2].clone()
        - c[X1].clone() * a[Y1].clone()
        - c[X2].clone() * a[Y2].clone();
    out[Z2] = c[Z2].clone() + a[X1].clone() * c[Y2].clone() - c[X1].clone() * a[Y2].clone();
    GroupElement::new(out)
}

/// The deformation automorphism: shifts `z2` by `t·y2`.
pub fn phi_t<S: Scalar>(t: &S, x: &GroupElement<S>) -> GroupElement<S> {
    let mut c = x.coords.clone();
    c[Z2] = c[Z2].clone() + t.clone() * c[Y2].clone();
    GroupElement::new(c)
}

/// An element of the integer lattice Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeElement(pub [i64; 6]);

impl LatticeElement {
    pub const IDENTITY: Self = Self([0; 6]);

    pub fn generator(i: usize) -> Self {
        let mut c = [0; 6];
        c[i] = 1;
        Self(c)
    }

    pub fn coords(&self) -> [i64; 6] {
        self.0
    }

    pub fn element<S: Scalar>(&self) -> GroupElement<S> {
        GroupElement::from_ints(self.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.0, other.0);
        Self([
            a[0] + b[0],
            a[1] + b[1],
            a[2] + b[2],
            a[3] + b[3],
            a[4] + b[4] + a[0] * b[2] + a[1] * b[3],
            a[5] + b[5] + a[0] * b[3],
        ])
    }

    pub fn inverse(&self) -> Self {
        let c = self.0;
        Self([
            -c[0],
            -c[1],
            -c[2],
            -c[3],
            -c[4] + c[0] * c[2] + c[1] * c[3],
            -c[5] + c[0] * c[3],
        ])
    }

    /// Recovers a lattice element from an exact point, if all coordinates are integers.
    pub fn from_element(x: &GroupElement<Rational>) -> Option<Self> {
        let mut c = [0i64; 6];
        for (slot, v) in c.iter_mut().zip(x.coords()) {
            *slot = crate::scalar::to_i64(v)?;
        }
        Some(Self(c))
    }

    /// Every lattice element with all coordinates in `[-bound, bound]`, in lexicographic order.
    pub fn boxed(bound: i64) -> impl Iterator<Item = Self> {
        let side = (2 * bound + 1) as u64;
        (0..side.pow(6)).map(move |mut code| {
            let mut c = [0i64; 6];
            for slot in c.iter_mut().rev() {
                *slot = (code % side) as i64 - bound;
                code /= side;
            }
            Self(c)
        })
    }
}

impl Serialize for LatticeElement {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        self.0.serialize(serializer)
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        write!(
            f,
            "({}, {}, {}, {}, {}, {})",
            c[0], c[1], c[2], c[3], c[4], c[5]
        )
    }
}
