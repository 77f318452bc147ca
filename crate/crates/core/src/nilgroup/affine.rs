use super::element::{quadratic_term_matrix, GroupElement, X1, X2};
use super::linear_map::LinearCoordinateMap;
use super::linsolve::{self, AffineSolution};
use crate::mat6::{self, Mat6, Vec6};
use crate::scalar::Scalar;

/// An element `(φ, w)` of `Aut(G) ⋉ G`, acting by `h ↦ w·φ(h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineIsometry<S> {
    pub linear: LinearCoordinateMap<S>,
    pub translation: GroupElement<S>,
}

impl<S: Scalar> AffineIsometry<S> {
    pub fn new(linear: LinearCoordinateMap<S>, translation: GroupElement<S>) -> Self {
        Self {
            linear,
            translation,
        }
    }

    pub fn identity() -> Self {
        Self::new(LinearCoordinateMap::identity(), GroupElement::identity())
    }

    pub fn left_translation(g: GroupElement<S>) -> Self {
        Self::new(LinearCoordinateMap::identity(), g)
    }

    pub fn apply(&self, h: &GroupElement<S>) -> GroupElement<S> {
        self.translation.mul(&self.linear.apply(h))
    }

    /// `(φ, w)(φ', w') = (φφ', w·φ(w'))`. Agrees with composition of maps
    /// whenever `φ` is an automorphism.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            self.linear.compose(&other.linear),
            self.translation.mul(&self.linear.apply(&other.translation)),
        )
    }

    /// `(φ⁻¹, φ⁻¹(w⁻¹))`.
    pub fn inverse(&self) -> Self {
        let inv = self.linear.inverse();
        let w = inv.apply(&self.translation.inverse());
        Self::new(inv, w)
    }

    pub fn is_identity(&self) -> bool {
        self.linear == LinearCoordinateMap::identity() && self.translation.is_identity()
    }

    /// The same map written as `x ↦ M x + c` in coordinates.
    pub fn to_coordinate_map(&self) -> AffineCoordinateMap<S> {
        // w·φ(x) = w + φx + B(w, φx)
        let w = self.translation.coords();
        let phi = self.linear.matrix();
        let correction = mat6::mul(&quadratic_term_matrix(w), phi);
        let matrix = std::array::from_fn(|i| mat6::add_vec(&phi[i], &correction[i]));
        AffineCoordinateMap {
            matrix,
            offset: w.clone(),
        }
    }
}

/// A coordinate-affine map `x ↦ M x + c`. Every left translation and every
/// `(φ, w)` is of this form, and so are maps like β whose linear part is not
/// an automorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCoordinateMap<S> {
    pub matrix: Mat6<S>,
    pub offset: Vec6<S>,
}

impl<S: Scalar> AffineCoordinateMap<S> {
    pub fn identity() -> Self {
        Self {
            matrix: mat6::identity(),
            offset: mat6::zero_vec(),
        }
    }

    pub fn left_translation(g: &GroupElement<S>) -> Self {
        AffineIsometry::left_translation(g.clone()).to_coordinate_map()
    }

    pub fn apply(&self, x: &GroupElement<S>) -> GroupElement<S> {
        GroupElement::new(mat6::add_vec(
            &mat6::apply(&self.matrix, x.coords()),
            &self.offset,
        ))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: mat6::mul(&self.matrix, &other.matrix),
            offset: mat6::add_vec(&mat6::apply(&self.matrix, &other.offset), &self.offset),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = mat6::inverse(&self.matrix)?;
        let offset = mat6::apply(&inv, &self.offset).map(|v| -v);
        Some(Self {
            matrix: inv,
            offset,
        })
    }

    /// `Some(g)` iff this map equals the left translation `L_g`.
    pub fn as_left_translation(&self) -> Option<GroupElement<S>> {
        let g = GroupElement::new(self.offset.clone());
        (*self == Self::left_translation(&g)).then_some(g)
    }

    /// Exact solution of `M x + c = x`.
    pub fn fixed_points(&self) -> FixedPointSolution<S> {
        let lhs: Vec<Vec<S>> = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        let delta = if i == j { S::one() } else { S::zero() };
                        delta - self.matrix[i][j].clone()
                    })
                    .collect()
            })
            .collect();
        match linsolve::solve(&lhs, &self.offset, 6) {
            AffineSolution::Inconsistent => FixedPointSolution::Empty,
            AffineSolution::Affine {
                particular,
                directions,
                ..
            } => FixedPointSolution::Affine {
                base: GroupElement::new(to_vec6(particular)),
                directions: directions.into_iter().map(to_vec6).collect(),
            },
        }
    }
}

fn to_vec6<S: Scalar>(v: Vec<S>) -> Vec6<S> {
    v.try_into()
        .unwrap_or_else(|_| unreachable!("six unknowns"))
}

/// Fixed-point set of a map: empty, or `base + span(directions)`.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedPointSolution<S> {
    Empty,
    Affine {
        base: GroupElement<S>,
        directions: Vec<Vec6<S>>,
    },
}

impl<S: Scalar> FixedPointSolution<S> {
    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }

    pub fn dimension(&self) -> Option<usize> {
        match self {
            Self::Empty => None,
            Self::Affine { directions, .. } => Some(directions.len()),
        }
    }

    /// For an `{x1, x2 free; y1, y2, z1, z2 fixed}` plane, the fixed values `(y1, y2, z1, z2)`.
    pub fn x_plane_constants(&self) -> Option<[S; 4]> {
        let Self::Affine { base, directions } = self else {
            return None;
        };
        let spans_x = directions.len() == 2
            && directions[0] == mat6::basis(X1)
            && directions[1] == mat6::basis(X2);
        let c = base.coords();
        (spans_x && c[X1].is_zero() && c[X2].is_zero())
            .then(|| [c[2].clone(), c[3].clone(), c[4].clone(), c[5].clone()])
    }

    /// The point `base + Σ params[k]·directions[k]`.
    pub fn sample(&self, params: &[S]) -> Option<GroupElement<S>> {
        let Self::Affine { base, directions } = self else {
            return None;
        };
        let mut p = base.coords().clone();
        for (d, s) in directions.iter().zip(params) {
            for i in 0..6 {
                p[i] = p[i].clone() + d[i].clone() * s.clone();
            }
        }
        Some(GroupElement::new(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn e(c: [i64; 6]) -> GroupElement<Rational> {
        GroupElement::from_ints(c)
    }

    #[test]
    fn coordinate_form_agrees_with_action() {
        let iso = AffineIsometry::new(
            LinearCoordinateMap::phi_t(&rat(1, 3)),
            e([2, -1, 3, 1, 0, 5]),
        );
        let map = iso.to_coordinate_map();
        for x in [e([1, 2, 3, 4, 5, 6]), e([-3, 0, 2, -1, 7, 1])] {
            assert_eq!(map.apply(&x), iso.apply(&x));
        }
    }

    #[test]
    fn semidirect_composition_matches_map_composition() {
        let a = AffineIsometry::new(LinearCoordinateMap::phi_alpha(), e([1, 0, 2, -1, 3, 0]));
        let b = AffineIsometry::new(
            LinearCoordinateMap::phi_t(&rat(2, 5)),
            e([0, 3, 1, 1, -2, 4]),
        );
        let x = e([5, -2, 1, 3, 0, 2]);
        assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
        assert_eq!(a.compose(&a.inverse()).apply(&x), x);
        assert!(b.compose(&b.inverse()).is_identity());
    }

    #[test]
    fn left_translation_detection() {
        let g = e([1, 2, 0, -1, 4, 3]);
        assert_eq!(
            AffineCoordinateMap::left_translation(&g).as_left_translation(),
            Some(g)
        );
        let alpha_like =
            AffineIsometry::new(LinearCoordinateMap::phi_alpha(), e([0; 6])).to_coordinate_map();
        assert_eq!(alpha_like.as_left_translation(), None);
    }

    #[test]
    fn nontrivial_translation_is_free() {
        let map = AffineCoordinateMap::left_translation(&e([0, 0, 0, 0, 0, 1]));
        assert!(map.fixed_points().is_empty());
        assert_eq!(
            AffineCoordinateMap::<Rational>::identity()
                .fixed_points()
                .dimension(),
            Some(6)
        );
    }
}
