//! Exact arithmetic on the group `G ≅ ℝ⁶`, its integer lattice Γ, the
//! automorphism families acting on it, and the two-coset extension Π.
//!
//! Everything here is evaluated over [`Rational`](crate::Rational) when used as a
//! certificate; the generic code also runs over floats for the discretisation.

mod affine;
mod beta;
mod element;
mod linear_map;
pub mod linsolve;
mod pi;
mod singular;
mod suites;
mod witness;

use thiserror::Error;

pub use affine::{AffineCoordinateMap, AffineIsometry, FixedPointSolution};
pub use beta::{beta_diagnostics, BetaDiagnostics};
pub use element::{
    conjugate, phi_t, quadratic_term, quadratic_term_matrix, GroupElement, LatticeElement, X1, X2,
    Y1, Y2, Z1, Z2,
};
pub use linear_map::{is_automorphism, AutomorphismCertificate, BasisDefect, LinearCoordinateMap};
pub use pi::{alpha, alpha_commutes_with_phi, beta, pi_structure, Coset, PiElement, PiStructure};
pub use singular::{
    fixed_points, isotropy_bruteforce, isotropy_candidate, isotropy_elements, isotropy_group,
    singular_set_report, SingularSetReport,
};
pub use suites::{
    alpha_involution_check, alpha_normalises_lattice_check, alpha_phi_commutation_check,
    group_axioms_check, homomorphism_check, integer_shift_check, twisted_witness_box_check,
    witness_box_check,
};
pub use witness::{
    almost_inner_witness, conjugation_witness, not_inner_certificate, reverify, reverify_twisted,
    twisted_witness, witness_for_map, ForcedOffset, NonInnerCertificate, WitnessCertificate,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilgroupError {
    #[error("linear coordinate map is singular")]
    Singular,
    #[error("linear map is not an automorphism (defect at basis pair {0:?})")]
    NotAutomorphism(Option<(usize, usize)>),
    #[error("unsolvable: {0}")]
    Unsolvable(String),
    #[error("t = 0 gives the identity map, which is inner")]
    TrivialDeformation,
    #[error("box bound must be at least 1")]
    InvalidBound,
}
