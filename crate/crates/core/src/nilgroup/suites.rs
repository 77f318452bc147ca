//! Randomized and exhaustive exact suites over the group, the deformation
//! and the orbifold group.

use rand::Rng;

use super::affine::AffineIsometry;
use super::element::{phi_t, GroupElement, LatticeElement};
use super::pi::{alpha, alpha_commutes_with_phi};
use super::witness::{almost_inner_witness, reverify, reverify_twisted, twisted_witness};
use crate::check::CheckVerdict;
use crate::sampling;
use crate::scalar::{small_rational, Rational, Scalar};

/// Largest box bound handled by the fixed-width fast path.
const SMALL_BOUND: i64 = 1 << 10;

/// Associativity, identity and inverses on random triples.
pub fn group_axioms_check<R: Rng>(trials: usize, rng: &mut R) -> CheckVerdict {
    let mut v = CheckVerdict::new("group_axioms");
    let e = GroupElement::<Rational>::identity();
    for _ in 0..trials {
        let (x, y, z) = (
            sampling::element(rng),
            sampling::element(rng),
            sampling::element(rng),
        );
        let ok = x.mul(&y).mul(&z) == x.mul(&y.mul(&z))
            && x.mul(&e) == x
            && e.mul(&x) == x
            && x.mul(&x.inverse()).is_identity()
            && x.inverse().mul(&x).is_identity();
        v.record(ok, || format!("x = {x}, y = {y}, z = {z}"));
    }
    v
}

/// `Φ_t(xy) = Φ_t(x) Φ_t(y)`.
pub fn homomorphism_check<R: Rng>(t: &Rational, trials: usize, rng: &mut R) -> CheckVerdict {
    let mut v = CheckVerdict::new("phi_homomorphism");
    for _ in 0..trials {
        let (x, y) = (sampling::element(rng), sampling::element(rng));
        v.record(
            phi_t(t, &x.mul(&y)) == phi_t(t, &x).mul(&phi_t(t, &y)),
            || format!("x = {x}, y = {y}"),
        );
    }
    v
}

/// `α(α(x)) = x` pointwise.
pub fn alpha_involution_check<R: Rng>(trials: usize, rng: &mut R) -> CheckVerdict {
    let mut v = CheckVerdict::new("alpha_squared_identity");
    let a = alpha::<Rational>();
    for _ in 0..trials {
        let x = sampling::element(rng);
        v.record(a.apply(&a.apply(&x)) == x, || format!("x = {x}"));
    }
    v
}

/// `α L_γ α⁻¹` is left translation by a lattice element, for random γ.
pub fn alpha_normalises_lattice_check<R: Rng>(
    trials: usize,
    bound: i64,
    rng: &mut R,
) -> CheckVerdict {
    let mut v = CheckVerdict::new("alpha_normalises_lattice");
    let a = alpha::<Rational>();
    let a_inv = a.inverse();
    for _ in 0..trials {
        let g = sampling::lattice_element(rng, bound);
        let conj = a
            .compose(&AffineIsometry::left_translation(g.element()))
            .compose(&a_inv);
        let ok = conj.linear.matrix() == AffineIsometry::<Rational>::identity().linear.matrix()
            && LatticeElement::from_element(&conj.translation).is_some();
        v.record(ok, || format!("γ = {g}"));
    }
    v
}

/// `Φ_t ∘ α = α ∘ Φ_t` pointwise.
pub fn alpha_phi_commutation_check<R: Rng>(
    t: &Rational,
    trials: usize,
    rng: &mut R,
) -> CheckVerdict {
    let mut v = CheckVerdict::new("alpha_phi_commute");
    for _ in 0..trials {
        let x = sampling::element(rng);
        v.record(alpha_commutes_with_phi(t, &x), || format!("x = {x}"));
    }
    v
}

/// Almost-inner witnesses for every γ in `[−bound, bound]⁶`, each re-verified
/// by conjugation.
///
/// Small `t` and `bound` run over [`SmallRational`], everything else over
/// arbitrary precision.
pub fn witness_box_check(t: &Rational, bound: i64) -> CheckVerdict {
    match small_rational(t).filter(|_| bound <= SMALL_BOUND) {
        Some(ts) => witness_box_generic(&ts, bound),
        None => witness_box_generic(t, bound),
    }
}

fn witness_box_generic<S: Scalar>(t: &S, bound: i64) -> CheckVerdict {
    let mut v = CheckVerdict::new("almost_inner_witness");
    for g in LatticeElement::boxed(bound) {
        let w = almost_inner_witness(t, g);
        v.record(w.verified && reverify(&w), || format!("γ = {g}"));
    }
    v
}

/// Twisted witnesses `Φ̃_t(αγ) = L_a (αγ) L_a⁻¹` over the same box.
pub fn twisted_witness_box_check(t: &Rational, bound: i64) -> CheckVerdict {
    match small_rational(t).filter(|_| bound <= SMALL_BOUND) {
        Some(ts) => twisted_box_generic(&ts, bound),
        None => twisted_box_generic(t, bound),
    }
}

fn twisted_box_generic<S: Scalar>(t: &S, bound: i64) -> CheckVerdict {
    let mut v = CheckVerdict::new("twisted_witness");
    for g in LatticeElement::boxed(bound) {
        let ok = twisted_witness(t, g)
            .map(|w| w.verified && reverify_twisted(&w))
            .unwrap_or(false);
        v.record(ok, || format!("γ = {g}"));
    }
    v
}

/// `Φ_t(Γ) = Φ_{t−⌊t⌋}(Γ)`: `Φ_{⌊t⌋}` maps each boxed γ into Γ.
pub fn integer_shift_check(t: &Rational, bound: i64) -> CheckVerdict {
    let mut v = CheckVerdict::new("integer_shift_preserves_lattice");
    let k = t.floor();
    let frac = t - &k;
    for g in LatticeElement::boxed(bound) {
        let e = g.element::<Rational>();
        let shifted = phi_t(&k, &e);
        let ok = LatticeElement::from_element(&shifted).is_some()
            && phi_t(t, &e) == phi_t(&frac, &shifted);
        v.record(ok, || format!("γ = {g}"));
    }
    v
}
