//! Computed diagnostics for β and the group Γ ∪ βΓ.
//!
//! Nothing here asserts that β generates an isometry group; the verdicts are
//! recorded as computed.

use serde::Serialize;

use super::affine::AffineCoordinateMap;
use super::element::{GroupElement, LatticeElement};
use super::linear_map::{is_automorphism, AutomorphismCertificate, LinearCoordinateMap};
use super::pi::beta;
use super::NilgroupError;
use crate::scalar::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaDiagnostics {
    pub bound: i64,
    /// β∘β equals left translation by `(0, 0, 0, 0, 0, 1)`.
    pub square_is_central_translation: bool,
    pub elements_checked: usize,
    /// Number of boxed γ for which `x ↦ β(γ·x)` has a fixed point.
    pub elements_with_fixed_points: usize,
    pub fixed_point_free: bool,
    pub automorphism: AutomorphismCertificate,
    /// Number of boxed γ for which `β ∘ L_γ ∘ β⁻¹` is a left translation.
    pub closure_left_translations: usize,
    pub closure_failures: usize,
    /// Verdict for `γ = (1, 0, 0, 0, 0, 0)`.
    pub closure_example_is_left_translation: bool,
}

pub fn beta_diagnostics(bound: i64) -> Result<BetaDiagnostics, NilgroupError> {
    if bound < 1 {
        return Err(NilgroupError::InvalidBound);
    }
    let b = beta::<Rational>();
    let b_inv = b.inverse().expect("β is invertible");
    let shift = GroupElement::central(rat(0, 1), rat(1, 1));
    let square_is_central_translation =
        b.compose(&b) == AffineCoordinateMap::left_translation(&shift);

    let mut checked = 0;
    let mut with_fixed = 0;
    let mut closure_ok = 0;
    for g in LatticeElement::boxed(bound) {
        checked += 1;
        let lg = AffineCoordinateMap::left_translation(&g.element());
        if !b.compose(&lg).fixed_points().is_empty() {
            with_fixed += 1;
        }
        if b.compose(&lg)
            .compose(&b_inv)
            .as_left_translation()
            .is_some()
        {
            closure_ok += 1;
        }
    }
    let example = AffineCoordinateMap::left_translation(&LatticeElement::generator(0).element());
    let closure_example_is_left_translation = b
        .compose(&example)
        .compose(&b_inv)
        .as_left_translation()
        .is_some();

    Ok(BetaDiagnostics {
        bound,
        square_is_central_translation,
        elements_checked: checked,
        elements_with_fixed_points: with_fixed,
        fixed_point_free: with_fixed == 0,
        automorphism: is_automorphism(&LinearCoordinateMap::<Rational>::phi_beta())?,
        closure_left_translations: closure_ok,
        closure_failures: checked - closure_ok,
        closure_example_is_left_translation,
    })
}
