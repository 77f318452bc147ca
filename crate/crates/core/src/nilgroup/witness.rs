//! Witnesses for almost-innerness: for each γ an `a` with `Φ(γ) = a γ a⁻¹`.

use serde::Serialize;

use super::affine::AffineCoordinateMap;
use super::element::{conjugate, phi_t, GroupElement, LatticeElement, X1, X2, Y1, Y2, Z1, Z2};
use super::linear_map::LinearCoordinateMap;
use super::linsolve::{self, AffineSolution};
use super::pi::alpha;
use super::NilgroupError;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCertificate<S> {
    pub gamma: LatticeElement,
    pub t: S,
    pub a: GroupElement<S>,
    pub verified: bool,
}

impl<S: Scalar> Serialize for WitnessCertificate<S> {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("WitnessCertificate", 4)?;
        st.serialize_field("gamma", &self.gamma)?;
        st.serialize_field("t", &self.t.to_string())?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("verified", &self.verified)?;
        st.end()
    }
}

/// The linear system in the conjugation offsets `(a1, a2, b1, b2)` for
/// `a x a⁻¹ = target`: `a1 y1 + a2 y2 − x1 b1 − x2 b2 = Δz1`, `a1 y2 − x1 b2 = Δz2`.
fn offset_system<S: Scalar>(x: &GroupElement<S>) -> Vec<Vec<S>> {
    let c = x.coords();
    vec![
        vec![c[Y1].clone(), c[Y2].clone(), -c[X1].clone(), -c[X2].clone()],
        vec![c[Y2].clone(), S::zero(), S::zero(), -c[X1].clone()],
    ]
}

/// Finds `a` with `a x a⁻¹ = target`, preferring the solution with the free
/// offsets (in the order `a1, a2, b1, b2`) set to zero.
pub fn conjugation_witness<S: Scalar>(
    target: &GroupElement<S>,
    x: &GroupElement<S>,
) -> Result<GroupElement<S>, NilgroupError> {
    if target.coords()[..4] != x.coords()[..4] {
        return Err(NilgroupError::Unsolvable(
            "conjugation cannot change x or y coordinates".into(),
        ));
    }
    let rhs = [
        target.coord(Z1).clone() - x.coord(Z1).clone(),
        target.coord(Z2).clone() - x.coord(Z2).clone(),
    ];
    match linsolve::solve(&offset_system(x), &rhs, 4) {
        AffineSolution::Inconsistent => Err(NilgroupError::Unsolvable(format!(
            "offset equations for {x} have no solution (Δz = ({}, {}))",
            rhs[0], rhs[1]
        ))),
        AffineSolution::Affine { particular, .. } => {
            let mut a = crate::mat6::zero_vec::<S>();
            a[..4].clone_from_slice(&particular);
            Ok(GroupElement::new(a))
        }
    }
}

/// Witness for `F(γ) = a γ a⁻¹` for an arbitrary linear map `F`.
pub fn witness_for_map<S: Scalar>(
    map: &LinearCoordinateMap<S>,
    gamma: LatticeElement,
    t: S,
) -> Result<WitnessCertificate<S>, NilgroupError> {
    let g = gamma.element::<S>();
    let target = map.apply(&g);
    let a = conjugation_witness(&target, &g)?;
    let verified = a.mul(&g).mul(&a.inverse()) == target;
    Ok(WitnessCertificate {
        gamma,
        t,
        a,
        verified,
    })
}

/// Almost-inner witness for Φ_t. For `y2 = 0` this is the identity, otherwise
/// `a = (t, −t y1 / y2, 0, 0, 0, 0)`.
pub fn almost_inner_witness<S: Scalar>(t: &S, gamma: LatticeElement) -> WitnessCertificate<S> {
    witness_for_map(&LinearCoordinateMap::phi_t(t), gamma, t.clone())
        .expect("Φ_t is almost inner: the offset system is always solvable")
}

/// Witness for the twisted coset: `a` with `α L_{Φ_t(γ)} = L_a ∘ α L_γ ∘ L_a⁻¹`.
///
/// Closed form `a = (t, 0, 0, 0, t·y1/2, 0)`, checked by composing the three
/// coordinate maps.
pub fn twisted_witness<S: Scalar>(
    t: &S,
    gamma: LatticeElement,
) -> Result<WitnessCertificate<S>, NilgroupError> {
    let g = gamma.element::<S>();
    let mut a = crate::mat6::zero_vec::<S>();
    a[X1] = t.clone();
    a[Z1] = t.clone() * g.coord(Y1).clone() / S::from_int(2);
    let a = GroupElement::new(a);

    let alpha_map = alpha::<S>().to_coordinate_map();
    let source = alpha_map.compose(&AffineCoordinateMap::left_translation(&g));
    let target = alpha_map.compose(&AffineCoordinateMap::left_translation(&phi_t(t, &g)));
    let conjugated = AffineCoordinateMap::left_translation(&a)
        .compose(&source)
        .compose(&AffineCoordinateMap::left_translation(&a.inverse()));
    if conjugated != target {
        return Err(NilgroupError::Unsolvable(format!(
            "twisted witness fails for {gamma}"
        )));
    }
    Ok(WitnessCertificate {
        gamma,
        t: t.clone(),
        a,
        verified: true,
    })
}

/// Re-checks a certificate through [`conjugate`], independently of the solver.
pub fn reverify<S: Scalar>(cert: &WitnessCertificate<S>) -> bool {
    conjugate(&cert.a, &cert.gamma.element()) == phi_t(&cert.t, &cert.gamma.element())
}

/// Re-checks a twisted certificate pointwise. Both sides are affine in the
/// coordinates, so agreement at the origin and the six basis points suffices.
pub fn reverify_twisted<S: Scalar>(cert: &WitnessCertificate<S>) -> bool {
    let a = alpha::<S>();
    let g = cert.gamma.element::<S>();
    let moved = phi_t(&cert.t, &g);
    let a_inv = cert.a.inverse();
    (0..=6).all(|k| {
        let mut c = crate::mat6::zero_vec::<S>();
        if k < 6 {
            c[k] = S::one();
        }
        let x = GroupElement::new(c);
        cert.a.mul(&a.apply(&g.mul(&a_inv.mul(&x)))) == a.apply(&moved.mul(&x))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForcedOffset {
    pub gamma: LatticeElement,
    /// The value of `a1` forced by the offset equations of this γ alone.
    pub a1: String,
}

/// Certificate that Φ_t is not conjugation by one fixed element.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonInnerCertificate {
    pub t: String,
    pub constraints: Vec<ForcedOffset>,
    /// The two offset systems stacked together have no common solution.
    pub stacked_inconsistent: bool,
}

impl NonInnerCertificate {
    pub fn holds(&self) -> bool {
        self.stacked_inconsistent
            && self.constraints.len() == 2
            && self.constraints[0].a1 != self.constraints[1].a1
    }
}

fn forced_a1(rows: &[Vec<Rational>]) -> Option<Rational> {
    let (red, _) = linsolve::rref(rows);
    red.iter()
        .find(|row| {
            row[0] == Rational::from_int(1) && row[1..4].iter().all(|v| v == &Rational::from_int(0))
        })
        .map(|row| row[4].clone())
}

/// Shows that no single `a` conjugates every γ to `Φ_t(γ)`: the witness
/// equations for `(0,0,0,1,0,0)` force `a1 = t` while those for
/// `(0,0,1,0,0,0)` force `a1 = 0`.
pub fn not_inner_certificate(t: &Rational) -> Result<NonInnerCertificate, NilgroupError> {
    if t == &Rational::from_int(0) {
        return Err(NilgroupError::TrivialDeformation);
    }
    let gammas = [LatticeElement::generator(Y2), LatticeElement::generator(Y1)];
    let mut stacked = Vec::new();
    let mut constraints = Vec::new();
    for gamma in gammas {
        let g = gamma.element::<Rational>();
        let target = phi_t(t, &g);
        let rhs = [
            target.coord(Z1) - g.coord(Z1),
            target.coord(Z2) - g.coord(Z2),
        ];
        let rows: Vec<Vec<Rational>> = offset_system(&g)
            .into_iter()
            .zip(rhs)
            .map(|(mut r, b)| {
                r.push(b);
                r
            })
            .collect();
        let a1 = forced_a1(&rows)
            .ok_or_else(|| NilgroupError::Unsolvable(format!("a1 not forced by {gamma}")))?;
        constraints.push(ForcedOffset {
            gamma,
            a1: a1.to_string(),
        });
        stacked.extend(rows);
    }
    let (lhs, rhs): (Vec<Vec<Rational>>, Vec<Rational>) = stacked
        .into_iter()
        .map(|mut r| {
            let b = r.pop().expect("augmented row");
            (r, b)
        })
        .unzip();
    let stacked_inconsistent = !linsolve::solve(&lhs, &rhs, 4).is_consistent();
    Ok(NonInnerCertificate {
        t: t.to_string(),
        constraints,
        stacked_inconsistent,
    })
}
