use serde::Serialize;

use super::element::{GroupElement, Y1, Y2, Z2};
use super::NilgroupError;
use crate::mat6::{self, Mat6};
use crate::scalar::Scalar;

/// A linear map on coordinates, `x ↦ M x`.
///
/// The `automorphism_verified` flag is only ever set by
/// [`LinearCoordinateMap::into_verified`], after the basis-pair certificate
/// succeeds.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCoordinateMap<S> {
    matrix: Mat6<S>,
    automorphism_verified: bool,
}

/// Outcome of the 36 basis-pair test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AutomorphismCertificate {
    pub is_automorphism: bool,
    pub pairs_checked: usize,
    /// First basis pair `(i, j)` with `F(e_i e_j) ≠ F(e_i) F(e_j)`, and the defect.
    pub defect: Option<BasisDefect>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisDefect {
    pub i: usize,
    pub j: usize,
    pub defect: Vec<String>,
}

impl<S: Scalar> LinearCoordinateMap<S> {
    /// Rejects singular matrices.
    pub fn new(matrix: Mat6<S>) -> Result<Self, NilgroupError> {
        if mat6::determinant(&matrix).is_zero() {
            return Err(NilgroupError::Singular);
        }
        Ok(Self {
            matrix,
            automorphism_verified: false,
        })
    }

    fn known(matrix: Mat6<S>) -> Self {
        Self {
            matrix,
            automorphism_verified: false,
        }
    }

    pub fn identity() -> Self {
        Self::known(mat6::identity())
    }

    /// Φ_t: `z2 ↦ z2 + t·y2`.
    pub fn phi_t(t: &S) -> Self {
        let mut m = mat6::identity::<S>();
        m[Z2][Y2] = t.clone();
        Self::known(m)
    }

    /// Linear part of the involution α: `diag(1, 1, −1, −1, −1, −1)`.
    pub fn phi_alpha() -> Self {
        Self::known(mat6::diagonal([1, 1, -1, -1, -1, -1]))
    }

    /// Linear part of β: `diag(1, 1, 1, 1, −1, 1)`. Not an automorphism.
    pub fn phi_beta() -> Self {
        Self::known(mat6::diagonal([1, 1, 1, 1, -1, 1]))
    }

    /// Control deformation Ψ_s: `z2 ↦ z2 + s·y1`. An automorphism, but not almost-inner.
    pub fn control(s: &S) -> Self {
        let mut m = mat6::identity::<S>();
        m[Z2][Y1] = s.clone();
        Self::known(m)
    }

    pub fn matrix(&self) -> &Mat6<S> {
        &self.matrix
    }

    pub fn automorphism_verified(&self) -> bool {
        self.automorphism_verified
    }

    pub fn apply(&self, x: &GroupElement<S>) -> GroupElement<S> {
        GroupElement::new(mat6::apply(&self.matrix, x.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: mat6::mul(&self.matrix, &other.matrix),
            automorphism_verified: self.automorphism_verified && other.automorphism_verified,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = mat6::inverse(&self.matrix).expect("linear coordinate maps are invertible");
        Self {
            matrix: inv,
            automorphism_verified: self.automorphism_verified,
        }
    }

    pub fn determinant(&self) -> S {
        mat6::determinant(&self.matrix)
    }

    /// Runs [`is_automorphism`] and sets the verified flag, or fails.
    pub fn into_verified(mut self) -> Result<Self, NilgroupError> {
        let cert = is_automorphism(&self)?;
        if !cert.is_automorphism {
            return Err(NilgroupError::NotAutomorphism(
                cert.defect.map(|d| (d.i, d.j)),
            ));
        }
        self.automorphism_verified = true;
        Ok(self)
    }
}

/// Decides whether `F(a·b) = F(a)·F(b)` for all `a, b`.
///
/// The defect `F(ab) − F(a)F(b) = F(B(a, b)) − B(Fa, Fb)` is bilinear for a
/// linear `F`, so it vanishes identically iff it vanishes on the 36 pairs of
/// standard basis vectors.
pub fn is_automorphism<S: Scalar>(
    f: &LinearCoordinateMap<S>,
) -> Result<AutomorphismCertificate, NilgroupError> {
    if f.determinant().is_zero() {
        return Err(NilgroupError::Singular);
    }
    let mut checked = 0;
    for i in 0..6 {
        for j in 0..6 {
            checked += 1;
            let (ei, ej) = (
                GroupElement::new(mat6::basis(i)),
                GroupElement::new(mat6::basis(j)),
            );
            let lhs = f.apply(&ei.mul(&ej));
            let rhs = f.apply(&ei).mul(&f.apply(&ej));
            if lhs != rhs {
                let defect = mat6::sub_vec(lhs.coords(), rhs.coords());
                return Ok(AutomorphismCertificate {
                    is_automorphism: false,
                    pairs_checked: checked,
                    defect: Some(BasisDefect {
                        i,
                        j,
                        defect: defect.iter().map(|d| d.to_string()).collect(),
                    }),
                });
            }
        }
    }
    Ok(AutomorphismCertificate {
        is_automorphism: true,
        pairs_checked: checked,
        defect: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::element::{X1, Z1};
    use crate::scalar::{rat, Rational};

    #[test]
    fn deformation_family_is_automorphic() {
        for t in [rat(0, 1), rat(1, 4), rat(-7, 3), rat(5, 4)] {
            let cert = is_automorphism(&LinearCoordinateMap::phi_t(&t)).unwrap();
            assert!(cert.is_automorphism);
            assert_eq!(cert.pairs_checked, 36);
        }
        assert!(
            is_automorphism(&LinearCoordinateMap::<Rational>::phi_alpha())
                .unwrap()
                .is_automorphism
        );
        assert!(
            is_automorphism(&LinearCoordinateMap::control(&rat(1, 4)))
                .unwrap()
                .is_automorphism
        );
    }

    #[test]
    fn beta_linear_part_fails_on_x1_y1() {
        let cert = is_automorphism(&LinearCoordinateMap::<Rational>::phi_beta()).unwrap();
        assert!(!cert.is_automorphism);
        let d = cert.defect.unwrap();
        assert_eq!((d.i, d.j), (X1, Y1));
        assert_eq!(d.defect[Z1], "-2");
    }

    #[test]
    fn singular_maps_are_rejected() {
        let m = mat6::diagonal::<Rational>([1, 1, 1, 0, 1, 1]);
        assert_eq!(LinearCoordinateMap::new(m), Err(NilgroupError::Singular));
    }

    #[test]
    fn verified_flag_requires_certificate() {
        let phi = LinearCoordinateMap::phi_t(&rat(1, 3));
        assert!(!phi.automorphism_verified());
        assert!(phi.into_verified().unwrap().automorphism_verified());
        assert_eq!(
            LinearCoordinateMap::<Rational>::phi_beta().into_verified(),
            Err(NilgroupError::NotAutomorphism(Some((X1, Y1))))
        );
    }
}
