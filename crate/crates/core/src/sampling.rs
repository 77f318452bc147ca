//! Seeded pseudorandom exact inputs for the randomized certificate suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::nilgroup::{GroupElement, LatticeElement};
use crate::scalar::{rat, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| ≤ 24`, `1 ≤ q ≤ 12`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-24..=24), rng.gen_range(1..=12))
}

pub fn element<R: Rng>(rng: &mut R) -> GroupElement<Rational> {
    GroupElement::new(std::array::from_fn(|_| rational(rng)))
}

pub fn central_element<R: Rng>(rng: &mut R) -> GroupElement<Rational> {
    GroupElement::central(rational(rng), rational(rng))
}

pub fn lattice_element<R: Rng>(rng: &mut R, bound: i64) -> LatticeElement {
    LatticeElement(std::array::from_fn(|_| rng.gen_range(-bound..=bound)))
}
