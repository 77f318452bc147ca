//! The left-invariant metric on G and its pullbacks by the deformation and
//! control automorphisms.
//!
//! The coframe rows are, in coordinate order,
//! `dx1, dx2, dy1, dy2, dz1 − x1 dy1 − x2 dy2, dz2 + (t − x1) dy2`.
//! At `t = 0` these are the left-invariant one-forms dual to the standard
//! basis at the identity; for `t ≠ 0` the last row is the pullback by Φ_t.
//! The control family replaces the last row with `dz2 + s dy1 − x1 dy2`.

use rand::Rng;

pub use crate::check::CheckVerdict;
use crate::mat6::{self, Mat6};
use crate::nilgroup::{
    almost_inner_witness, alpha, conjugate, phi_t, quadratic_term_matrix, GroupElement,
    LatticeElement, LinearCoordinateMap, X1, X2, Y1, Y2, Z1, Z2,
};
use crate::sampling;
use crate::scalar::{Rational, Scalar};

/// Which one-parameter family of metrics.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricFamily<S> {
    /// `Φ_t* g`, the almost-inner deformation.
    Deformed(S),
    /// `Ψ_s* g` with `Ψ_s: z2 ↦ z2 + s·y1`, an automorphism that is not almost inner.
    Control(S),
}

impl<S: Scalar> MetricFamily<S> {
    pub fn parameter(&self) -> &S {
        match self {
            Self::Deformed(p) | Self::Control(p) => p,
        }
    }

    /// The automorphism the base metric is pulled back by.
    pub fn automorphism(&self) -> LinearCoordinateMap<S> {
        match self {
            Self::Deformed(t) => LinearCoordinateMap::phi_t(t),
            Self::Control(s) => LinearCoordinateMap::control(s),
        }
    }
}

/// Unit lower triangular coframe matrix; rows are one-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Coframe<S> {
    pub rows: Mat6<S>,
}

impl<S: Scalar> Coframe<S> {
    /// The strictly lower part `N`; it satisfies `N² = 0`, so `C⁻¹ = I − N`.
    fn strict_part(&self) -> Mat6<S> {
        let mut n = self.rows.clone();
        for (i, row) in n.iter_mut().enumerate() {
            row[i] = S::zero();
        }
        n
    }

    pub fn inverse(&self) -> Mat6<S> {
        mat6::sub(&mat6::identity(), &self.strict_part())
    }

    pub fn determinant(&self) -> S {
        (0..6).fold(S::one(), |acc, i| acc * self.rows[i][i].clone())
    }
}

pub fn family_coframe<S: Scalar>(family: &MetricFamily<S>, p: &[S; 6]) -> Coframe<S> {
    let mut c = mat6::identity::<S>();
    c[Z1][Y1] = -p[X1].clone();
    c[Z1][Y2] = -p[X2].clone();
    match family {
        MetricFamily::Deformed(t) => c[Z2][Y2] = t.clone() - p[X1].clone(),
        MetricFamily::Control(s) => {
            c[Z2][Y1] = s.clone();
            c[Z2][Y2] = -p[X1].clone();
        }
    }
    Coframe { rows: c }
}

pub fn coframe<S: Scalar>(t: &S, p: &[S; 6]) -> Coframe<S> {
    family_coframe(&MetricFamily::Deformed(t.clone()), p)
}

/// `g = Cᵀ C`.
pub fn family_metric<S: Scalar>(family: &MetricFamily<S>, p: &[S; 6]) -> Mat6<S> {
    let c = family_coframe(family, p).rows;
    mat6::mul(&mat6::transpose(&c), &c)
}

/// `g⁻¹ = C⁻¹ C⁻ᵀ`.
pub fn family_inverse_metric<S: Scalar>(family: &MetricFamily<S>, p: &[S; 6]) -> Mat6<S> {
    let ci = family_coframe(family, p).inverse();
    mat6::mul(&ci, &mat6::transpose(&ci))
}

pub fn metric<S: Scalar>(t: &S, p: &[S; 6]) -> Mat6<S> {
    family_metric(&MetricFamily::Deformed(t.clone()), p)
}

pub fn inverse_metric<S: Scalar>(t: &S, p: &[S; 6]) -> Mat6<S> {
    family_inverse_metric(&MetricFamily::Deformed(t.clone()), p)
}

/// Jacobian of `h ↦ a·h`: `I + B_a`, unit lower triangular.
pub fn left_translation_jacobian<S: Scalar>(a: &GroupElement<S>) -> Mat6<S> {
    let b = quadratic_term_matrix(a.coords());
    std::array::from_fn(|i| mat6::add_vec(&mat6::identity::<S>()[i], &b[i]))
}

/// `J_Lᵀ g(a·p) J_L = g(p)` at random rational `a`, `p`.
pub fn left_invariance_check<R: Rng>(
    family: &MetricFamily<Rational>,
    trials: usize,
    rng: &mut R,
) -> CheckVerdict {
    let mut v = CheckVerdict::new("left_invariance");
    for _ in 0..trials {
        let a = sampling::element(rng);
        let p = sampling::element(rng);
        let jl = left_translation_jacobian(&a);
        let lhs = mat6::congruence(&jl, &family_metric(family, a.mul(&p).coords()));
        let ok = lhs == family_metric(family, p.coords());
        v.record(ok, || format!("a = {a}, p = {p}"));
    }
    v
}

/// `Jᵀ g(m(p)) J = g(p)` for a coordinate-affine map `m` with constant Jacobian `J`.
pub fn isometry_check<R: Rng>(
    name: &str,
    family: &MetricFamily<Rational>,
    jacobian: &Mat6<Rational>,
    map: impl Fn(&GroupElement<Rational>) -> GroupElement<Rational>,
    trials: usize,
    rng: &mut R,
) -> CheckVerdict {
    let mut v = CheckVerdict::new(name);
    for _ in 0..trials {
        let p = sampling::element(rng);
        let lhs = mat6::congruence(jacobian, &family_metric(family, map(&p).coords()));
        v.record(lhs == family_metric(family, p.coords()), || {
            format!("p = {p}")
        });
    }
    v
}

/// α is an isometry of every metric in the family.
pub fn alpha_isometry_check<R: Rng>(
    family: &MetricFamily<Rational>,
    trials: usize,
    rng: &mut R,
) -> CheckVerdict {
    let a = alpha::<Rational>();
    let jac = a.to_coordinate_map().matrix;
    isometry_check("alpha_isometry", family, &jac, |p| a.apply(p), trials, rng)
}

/// The same check with β's Jacobian; expected to fail.
pub fn beta_isometry_check<R: Rng>(
    family: &MetricFamily<Rational>,
    trials: usize,
    rng: &mut R,
) -> CheckVerdict {
    let b = crate::nilgroup::beta::<Rational>();
    let jac = b.matrix.clone();
    isometry_check("beta_isometry", family, &jac, |p| b.apply(p), trials, rng)
}

/// `g_t(p) = J_Φᵀ g_0(Φ_t(p)) J_Φ`.
pub fn pullback_consistency_check<R: Rng>(trials: usize, rng: &mut R) -> CheckVerdict {
    let mut v = CheckVerdict::new("pullback_consistency");
    let zero = Rational::from_int(0);
    for _ in 0..trials {
        let t = sampling::rational(rng);
        let p = sampling::element(rng);
        let phi = LinearCoordinateMap::phi_t(&t);
        let pulled = mat6::congruence(phi.matrix(), &metric(&zero, phi.apply(&p).coords()));
        v.record(pulled == metric(&t, p.coords()), || {
            format!("t = {t}, p = {p}")
        });
    }
    v
}

/// Coordinate-norm displacement `|ξ(x⁻¹ γ x)|`.
pub fn displacement(gamma: &GroupElement<f64>, x: &GroupElement<f64>) -> f64 {
    x.inverse().mul(gamma).mul(x).squared_norm().sqrt()
}

/// Exact squared displacement.
pub fn displacement_squared<S: Scalar>(gamma: &GroupElement<S>, x: &GroupElement<S>) -> S {
    x.inverse().mul(gamma).mul(x).squared_norm()
}

/// Checks `ξ(x⁻¹ Φ_t(γ) x) = ξ((a⁻¹x)⁻¹ γ (a⁻¹x))` with `a` the almost-inner witness.
pub fn displacement_equivariance(
    t: &Rational,
    gamma: LatticeElement,
    x: &GroupElement<Rational>,
) -> bool {
    let w = almost_inner_witness(t, gamma);
    if !w.verified {
        return false;
    }
    let g = gamma.element::<Rational>();
    let lhs = x.inverse().mul(&phi_t(t, &g)).mul(x);
    let y = w.a.inverse().mul(x);
    let rhs = y.inverse().mul(&g).mul(&y);
    // conjugate() is an independent evaluation path of the same identity
    lhs == rhs && conjugate(&x.inverse(), &phi_t(t, &g)) == lhs
}

pub fn displacement_equivariance_check<R: Rng>(
    t: &Rational,
    trials: usize,
    box_bound: i64,
    rng: &mut R,
) -> CheckVerdict {
    let mut v = CheckVerdict::new("displacement_equivariance");
    for _ in 0..trials {
        let gamma = sampling::lattice_element(rng, box_bound);
        let x = sampling::element(rng);
        v.record(displacement_equivariance(t, gamma, &x), || {
            format!("γ = {gamma}, x = {x}")
        });
    }
    v
}

/// Positive definiteness via the factor `C` itself: unit diagonal, so `g = CᵀC` is SPD.
pub fn metric_is_positive_definite<S: Scalar>(family: &MetricFamily<S>, p: &[S; 6]) -> bool {
    let c = family_coframe(family, p);
    let g = family_metric(family, p);
    mat6::is_unit_lower_triangular(&c.rows)
        && mat6::is_symmetric(&g)
        && mat6::mul(&mat6::transpose(&c.rows), &c.rows) == family_metric(family, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn origin() -> [Rational; 6] {
        std::array::from_fn(|_| rat(0, 1))
    }

    #[test]
    fn coframe_examples() {
        assert_eq!(coframe(&rat(0, 1), &origin()).rows, mat6::identity());
        let c = coframe(&rat(1, 2), &origin()).rows;
        let mut expected = mat6::identity::<Rational>();
        expected[Z2][Y2] = rat(1, 2);
        assert_eq!(c, expected);
        let mut p = origin();
        p[X1] = rat(1, 1);
        let c = coframe(&rat(0, 1), &p).rows;
        assert_eq!(c[Z1][Y1], rat(-1, 1));
        assert_eq!(c[Z2][Y2], rat(-1, 1));
        assert_eq!(c[Z1][Y2], rat(0, 1));
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric(&rat(0, 1), &origin()), mat6::identity());
        let g = metric(&rat(1, 2), &origin());
        let mut expected = mat6::identity::<Rational>();
        expected[Y2][Y2] = rat(5, 4);
        expected[Y2][Z2] = rat(1, 2);
        expected[Z2][Y2] = rat(1, 2);
        assert_eq!(g, expected);
        let gi = inverse_metric(&rat(1, 2), &origin());
        assert_eq!(mat6::mul(&g, &gi), mat6::identity());
    }

    #[test]
    fn metric_is_unimodular_and_symmetric() {
        let mut r = sampling::rng(3);
        for _ in 0..100 {
            let t = sampling::rational(&mut r);
            let p = sampling::element(&mut r);
            let g = metric(&t, p.coords());
            assert_eq!(mat6::determinant(&g), rat(1, 1));
            assert!(mat6::is_symmetric(&g));
            assert_eq!(
                mat6::mul(&g, &inverse_metric(&t, p.coords())),
                mat6::identity()
            );
            assert!(metric_is_positive_definite(
                &MetricFamily::Deformed(t),
                p.coords()
            ));
        }
    }

    #[test]
    fn left_invariance_holds_for_deformed_and_control() {
        let mut r = sampling::rng(11);
        let trivial = left_translation_jacobian(&GroupElement::<Rational>::identity());
        assert_eq!(trivial, mat6::identity());
        for fam in [
            MetricFamily::Deformed(rat(0, 1)),
            MetricFamily::Deformed(rat(1, 4)),
            MetricFamily::Control(rat(1, 4)),
        ] {
            assert!(left_invariance_check(&fam, 100, &mut r).passed());
        }
    }

    #[test]
    fn left_translations_preserve_volume() {
        let mut r = sampling::rng(5);
        for _ in 0..50 {
            let j = left_translation_jacobian(&sampling::element(&mut r));
            assert!(mat6::is_unit_lower_triangular(&j));
            assert_eq!(mat6::determinant(&j), rat(1, 1));
        }
    }

    #[test]
    fn alpha_preserves_every_deformed_metric_but_beta_does_not() {
        let mut r = sampling::rng(7);
        for t in [rat(0, 1), rat(1, 4), rat(-2, 3)] {
            assert!(alpha_isometry_check(&MetricFamily::Deformed(t), 100, &mut r).passed());
        }
        assert!(alpha_isometry_check(&MetricFamily::Control(rat(1, 4)), 100, &mut r).passed());
        let b = beta_isometry_check(&MetricFamily::Deformed(rat(0, 1)), 20, &mut r);
        assert!(b.failures > 0);
    }

    #[test]
    fn pullback_defines_the_deformed_metric() {
        assert!(pullback_consistency_check(100, &mut sampling::rng(13)).passed());
    }

    #[test]
    fn displacement_equivariance_examples() {
        let t = rat(1, 4);
        let x = GroupElement::from_ints([1, 1, 1, 1, 0, 0]);
        assert!(displacement_equivariance(
            &t,
            LatticeElement([0, 0, 0, 1, 0, 0]),
            &x
        ));
        // y2 = 0: witness is the identity
        let g = LatticeElement([2, -1, 3, 0, 1, 0]);
        assert!(almost_inner_witness(&t, g).a.is_identity());
        assert!(displacement_equivariance(&t, g, &x));
        assert!(
            displacement_equivariance_check(&rat(1, 3), 200, 3, &mut sampling::rng(17)).passed()
        );
    }

    #[test]
    fn displacement_proxy_basics() {
        let x = GroupElement::<f64>::from_ints([1, 2, 0, 1, 3, 1]);
        assert_eq!(displacement(&GroupElement::identity(), &x), 0.0);
        let g = LatticeElement([0, 0, 0, 1, 0, 0]);
        let t = rat(1, 4);
        let a = almost_inner_witness(&t, g).a;
        let xr = GroupElement::<Rational>::from_ints([1, 2, 0, 1, 3, 1]);
        let lhs = displacement_squared(&phi_t(&t, &g.element()), &xr);
        let rhs = displacement_squared(&g.element(), &a.inverse().mul(&xr));
        assert_eq!(lhs, rhs);
        assert!(displacement(&g.element(), &x) > 0.0);
    }
}
