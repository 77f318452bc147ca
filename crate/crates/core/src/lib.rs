//! Exact certificates and discrete Laplace spectra for an isospectral
//! deformation of metrics on an orbifold quotient of a six-dimensional
//! 2-step nilmanifold.
//!
//! * [`nilgroup`]: exact group law, lattice, automorphisms, witnesses, fixed points.
//! * [`geometry`]: the left-invariant metric, its deformations and invariance checks.
//! * [`spectra`]: shear-periodic discretisation, parity splitting, eigensolvers, heat traces.
//! * [`report`]: JSON report records shared with the command-line runner.

pub mod check;
pub mod geometry;
mod mat6;
pub mod nilgroup;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod spectra;

pub use mat6::{Mat6, Vec6};
pub use scalar::{parse_rational, rat, small_rational, Rational, Scalar, SmallRational};

/// Group element with exact rational coordinates.
pub type ExactElement = nilgroup::GroupElement<Rational>;
/// Group element with `f64` coordinates.
pub type FloatElement = nilgroup::GroupElement<f64>;
pub type ExactIsometry = nilgroup::AffineIsometry<Rational>;
pub type ExactLinearMap = nilgroup::LinearCoordinateMap<Rational>;
pub type ExactWitness = nilgroup::WitnessCertificate<Rational>;
pub type ExactCoframe = geometry::Coframe<Rational>;
pub type FloatCoframe = geometry::Coframe<f64>;
