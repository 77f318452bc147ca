//! The two-coset group Π = Γ ∪ αΓ and the auxiliary map β.

use serde::Serialize;

use super::affine::{AffineCoordinateMap, AffineIsometry};
use super::element::{phi_t, GroupElement, LatticeElement, Z2};
use super::linear_map::LinearCoordinateMap;
use crate::mat6;
use crate::scalar::{Rational, Scalar};

/// α: `(x1, x2, y1, y2, z1, z2) ↦ (x1, x2, −y1, −y2, −z1, −z2 + 1/2)`.
pub fn alpha<S: Scalar>() -> AffineIsometry<S> {
    AffineIsometry::new(
        LinearCoordinateMap::phi_alpha(),
        GroupElement::central(S::zero(), S::from_ratio(1, 2)),
    )
}

/// β: `(x1, x2, y1, y2, z1, z2) ↦ (x1, x2, y1, y2, −z1, z2 + 1/2)`.
///
/// Its linear part is not an automorphism, so β is kept as a plain
/// coordinate map rather than an element of `Aut(G) ⋉ G`.
pub fn beta<S: Scalar>() -> AffineCoordinateMap<S> {
    let mut offset = mat6::zero_vec::<S>();
    offset[Z2] = S::from_ratio(1, 2);
    AffineCoordinateMap {
        matrix: mat6::diagonal([1, 1, 1, 1, -1, 1]),
        offset,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coset {
    Gamma,
    AlphaGamma,
}

/// An element of Π: either `L_γ` or `α ∘ L_γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PiElement {
    pub coset: Coset,
    pub lattice: LatticeElement,
}

impl PiElement {
    pub fn translation(lattice: LatticeElement) -> Self {
        Self {
            coset: Coset::Gamma,
            lattice,
        }
    }

    pub fn twisted(lattice: LatticeElement) -> Self {
        Self {
            coset: Coset::AlphaGamma,
            lattice,
        }
    }

    pub fn isometry<S: Scalar>(&self) -> AffineIsometry<S> {
        let lt = AffineIsometry::left_translation(self.lattice.element());
        match self.coset {
            Coset::Gamma => lt,
            Coset::AlphaGamma => alpha().compose(&lt),
        }
    }

    /// The extension Φ̃_t: `L_γ ↦ L_{Φ_t(γ)}`, `α L_γ ↦ α L_{Φ_t(γ)}`.
    pub fn extended_phi<S: Scalar>(&self, t: &S) -> AffineIsometry<S> {
        let lt = AffineIsometry::left_translation(phi_t(t, &self.lattice.element()));
        match self.coset {
            Coset::Gamma => lt,
            Coset::AlphaGamma => alpha().compose(&lt),
        }
    }

    /// Every Π element whose isometry has translation part in `[-bound, bound]⁶`.
    ///
    /// For `α L_γ` the translation part is `(γ1, γ2, −γ3, −γ4, −γ5, 1/2 − γ6)`,
    /// so its last coordinate ranges over the half-odd values in the box.
    pub fn twisted_with_translation_in_box(bound: i64) -> impl Iterator<Item = Self> {
        LatticeElement::boxed(bound)
            .filter(move |g| {
                // 1/2 − γ6 ∈ [−bound, bound]
                let c = g.0[5];
                c > -bound && c <= bound
            })
            .map(Self::twisted)
    }
}

/// Exact structural checks on Π over a box of lattice elements.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiStructure {
    pub bound: i64,
    pub alpha_squared_is_identity: bool,
    pub alpha_is_self_inverse: bool,
    pub conjugates_checked: usize,
    /// Number of boxed γ for which `α L_γ α⁻¹ = L_{φ_α(γ)}` with `φ_α(γ) ∈ Γ`.
    pub conjugates_in_lattice: usize,
}

impl PiStructure {
    pub fn holds(&self) -> bool {
        self.alpha_squared_is_identity
            && self.alpha_is_self_inverse
            && self.conjugates_in_lattice == self.conjugates_checked
    }
}

pub fn pi_structure(bound: i64) -> PiStructure {
    let a = alpha::<Rational>();
    let a_map = a.to_coordinate_map();
    let alpha_squared_is_identity =
        a.compose(&a).is_identity() && a_map.compose(&a_map) == AffineCoordinateMap::identity();
    let alpha_is_self_inverse = a.inverse() == a;
    let phi_alpha = LinearCoordinateMap::<Rational>::phi_alpha();
    let mut checked = 0;
    let mut ok = 0;
    for g in LatticeElement::boxed(bound) {
        checked += 1;
        let conj = a_map
            .compose(&AffineCoordinateMap::left_translation(&g.element()))
            .compose(&a_map);
        let expected = phi_alpha.apply(&g.element());
        if conj.as_left_translation().as_ref() == Some(&expected)
            && LatticeElement::from_element(&expected).is_some()
        {
            ok += 1;
        }
    }
    PiStructure {
        bound,
        alpha_squared_is_identity,
        alpha_is_self_inverse,
        conjugates_checked: checked,
        conjugates_in_lattice: ok,
    }
}

/// `Φ_t(α(x)) = α(Φ_t(x))`.
pub fn alpha_commutes_with_phi<S: Scalar>(t: &S, x: &GroupElement<S>) -> bool {
    let a = alpha::<S>();
    phi_t(t, &a.apply(x)) == a.apply(&phi_t(t, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn alpha_formula() {
        let x = GroupElement::<Rational>::new([
            rat(1, 3),
            rat(2, 1),
            rat(1, 2),
            rat(-1, 1),
            rat(3, 1),
            rat(1, 5),
        ]);
        let ax = alpha::<Rational>().apply(&x);
        assert_eq!(
            ax,
            GroupElement::new([
                rat(1, 3),
                rat(2, 1),
                rat(-1, 2),
                rat(1, 1),
                rat(-3, 1),
                rat(3, 10)
            ])
        );
    }

    #[test]
    fn pi_structure_on_small_box() {
        let s = pi_structure(1);
        assert!(s.holds(), "{s:?}");
        assert_eq!(s.conjugates_checked, 729);
    }

    #[test]
    fn beta_squares_to_central_translation() {
        let b = beta::<Rational>();
        assert_eq!(
            b.compose(&b),
            AffineCoordinateMap::left_translation(&GroupElement::central(rat(0, 1), rat(1, 1)))
        );
    }

    #[test]
    fn twisted_box_enumeration_has_half_odd_last_translation() {
        let n = PiElement::twisted_with_translation_in_box(1).count();
        assert_eq!(n, 3usize.pow(5) * 2);
        for p in PiElement::twisted_with_translation_in_box(1).take(50) {
            let w = p.isometry::<Rational>().translation;
            assert!(crate::scalar::is_half_odd(w.coord(Z2)));
        }
    }
}
