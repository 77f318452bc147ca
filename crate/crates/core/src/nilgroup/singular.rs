//! Fixed points of Π acting on G, isotropy groups and the singular set.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::affine::{AffineIsometry, FixedPointSolution};
use super::element::{GroupElement, LatticeElement, Y1, Y2, Z1, Z2};
use super::pi::{alpha, PiElement};
use super::NilgroupError;
use crate::scalar::{is_half_odd, is_integer, rat, Rational, Scalar};

/// Exact fixed-point set of `h ↦ w·φ(h)`.
pub fn fixed_points(m: &AffineIsometry<Rational>) -> FixedPointSolution<Rational> {
    m.to_coordinate_map().fixed_points()
}

fn two() -> Rational {
    Rational::from_int(2)
}

/// The only possible nontrivial stabiliser of `x` in Π:
/// `(φ_α, (0, 0, 2y1, 2y2, 2z1, 2z2))`, as the Π element `α L_γ`.
pub fn isotropy_candidate(x: &GroupElement<Rational>) -> Option<PiElement> {
    let c = x.coords();
    let doubled = [Y1, Y2, Z1, Z2].map(|i| &c[i] * two());
    if !(doubled[..3].iter().all(is_integer) && is_half_odd(&doubled[3])) {
        return None;
    }
    // α L_γ has translation (γ1, γ2, −γ3, −γ4, −γ5, 1/2 − γ6)
    let half = rat(1, 2);
    let gamma = GroupElement::new([
        Rational::from_int(0),
        Rational::from_int(0),
        -&doubled[0],
        -&doubled[1],
        -&doubled[2],
        &half - &doubled[3],
    ]);
    LatticeElement::from_element(&gamma).map(PiElement::twisted)
}

/// Stabiliser of `x` in Π, identity first. Size 1 or 2.
pub fn isotropy_elements(x: &GroupElement<Rational>) -> Vec<PiElement> {
    let mut out = vec![PiElement::translation(LatticeElement::IDENTITY)];
    if let Some(p) = isotropy_candidate(x) {
        debug_assert_eq!(p.isometry::<Rational>().apply(x), *x);
        out.push(p);
    }
    out
}

pub fn isotropy_group(x: &GroupElement<Rational>) -> Vec<AffineIsometry<Rational>> {
    isotropy_elements(x)
        .iter()
        .map(PiElement::isometry)
        .collect()
}

/// Brute-force stabiliser over all Π elements with lattice part in `[-bound, bound]⁶`.
pub fn isotropy_bruteforce(x: &GroupElement<Rational>, bound: i64) -> Vec<PiElement> {
    LatticeElement::boxed(bound)
        .flat_map(|g| [PiElement::translation(g), PiElement::twisted(g)])
        .filter(|p| p.isometry::<Rational>().apply(x) == *x)
        .collect()
}

/// Bidirectional comparison of the computed fixed-point planes with the
/// characterisation `y1, y2, z1 ∈ ½ℤ`, `z2 ∈ ½ℤ + 1/4`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularSetReport {
    pub bound: i64,
    pub elements_enumerated: usize,
    pub elements_with_fixed_points: usize,
    pub distinct_planes: usize,
    /// Admissible `(w3, w4, w5, w6)` with `w3, w4, w5 ∈ ℤ ∩ [−b, b]`, `w6 ∈ (ℤ + ½) ∩ [−b, b]`.
    pub expected_planes: usize,
    /// Every computed fixed set is an `x`-plane satisfying the characterisation.
    pub forward_ok: bool,
    /// Every characterised plane in range arises from some enumerated element.
    pub backward_ok: bool,
    /// Histogram of isotropy group orders over sampled points (on and off the planes).
    pub isotropy_orders: BTreeMap<usize, usize>,
    pub stabilisers_are_involutions: bool,
    pub closed_form_matches_bruteforce: bool,
    pub alpha_fixes_quarter_point: bool,
    pub pass: bool,
}

fn characterised(consts: &[Rational; 4]) -> bool {
    let doubled: Vec<Rational> = consts.iter().map(|c| c * two()).collect();
    doubled[..3].iter().all(is_integer) && is_half_odd(&doubled[3])
}

pub fn singular_set_report(bound: i64) -> Result<SingularSetReport, NilgroupError> {
    if bound < 1 {
        return Err(NilgroupError::InvalidBound);
    }
    let mut enumerated = 0;
    let mut with_fixed = 0;
    let mut forward_ok = true;
    let mut planes: HashSet<[Rational; 4]> = HashSet::new();
    for p in PiElement::twisted_with_translation_in_box(bound) {
        enumerated += 1;
        let sol = fixed_points(&p.isometry());
        if sol.is_empty() {
            continue;
        }
        with_fixed += 1;
        match sol.x_plane_constants() {
            Some(c) if characterised(&c) => {
                planes.insert(c);
            }
            _ => forward_ok = false,
        }
    }

    let mut expected = 0;
    let mut backward_ok = true;
    for w3 in -bound..=bound {
        for w4 in -bound..=bound {
            for w5 in -bound..=bound {
                // w6 = m + 1/2 ∈ [−b, b]  ⇔  m ∈ [−b, b − 1]
                for m in -bound..bound {
                    expected += 1;
                    let consts = [rat(w3, 2), rat(w4, 2), rat(w5, 2), rat(2 * m + 1, 4)];
                    backward_ok &= planes.contains(&consts);
                }
            }
        }
    }

    let mut orders = BTreeMap::new();
    let mut involutions = true;
    let mut matches_bruteforce = true;
    let samples = [(rat(0, 1), rat(0, 1)), (rat(1, 3), rat(-2, 5))];
    for (k, consts) in planes.iter().enumerate() {
        for (x1, x2) in &samples {
            let x = GroupElement::new([
                x1.clone(),
                x2.clone(),
                consts[0].clone(),
                consts[1].clone(),
                consts[2].clone(),
                consts[3].clone(),
            ]);
            let iso = isotropy_group(&x);
            *orders.entry(iso.len()).or_insert(0) += 1;
            for g in &iso {
                involutions &= g.compose(g).is_identity();
                involutions &= g.apply(&x) == x;
            }
            // off-plane control: shifting y1 by 1/3 leaves ½ℤ
            let mut off = x.coords().clone();
            off[Y1] = &off[Y1] + rat(1, 3);
            *orders
                .entry(isotropy_group(&GroupElement::new(off)).len())
                .or_insert(0) += 1;
        }
        // the closed form against exhaustive search, on a thinned sample
        if k % 97 == 0 {
            let x = GroupElement::new([
                rat(0, 1),
                rat(0, 1),
                consts[0].clone(),
                consts[1].clone(),
                consts[2].clone(),
                consts[3].clone(),
            ]);
            let search_bound = 2 * bound.max(1);
            let brute: Vec<PiElement> = isotropy_bruteforce_twisted(&x, search_bound);
            let closed: Vec<PiElement> = isotropy_elements(&x).into_iter().skip(1).collect();
            matches_bruteforce &= brute == closed;
        }
    }

    let quarter = GroupElement::central(rat(0, 1), rat(1, 4));
    let alpha_fixes_quarter_point = alpha::<Rational>().apply(&quarter) == quarter;
    let orders_ok = orders.keys().all(|&k| k == 1 || k == 2);
    let pass = forward_ok
        && backward_ok
        && planes.len() == expected
        && orders_ok
        && involutions
        && matches_bruteforce
        && alpha_fixes_quarter_point;
    Ok(SingularSetReport {
        bound,
        elements_enumerated: enumerated,
        elements_with_fixed_points: with_fixed,
        distinct_planes: planes.len(),
        expected_planes: expected,
        forward_ok,
        backward_ok,
        isotropy_orders: orders,
        stabilisers_are_involutions: involutions,
        closed_form_matches_bruteforce: matches_bruteforce,
        alpha_fixes_quarter_point,
        pass,
    })
}

/// Twisted-coset stabilisers of `x` whose lattice part satisfies
/// `γ1 = γ2 = 0` and lies in `[-bound, bound]`; the translation coset never
/// fixes anything but the identity, and `γ1, γ2 ≠ 0` moves `x1, x2`.
fn isotropy_bruteforce_twisted(x: &GroupElement<Rational>, bound: i64) -> Vec<PiElement> {
    let side = 2 * bound + 1;
    let mut out = Vec::new();
    for code in 0..side.pow(4) {
        let mut c = code;
        let mut tail = [0i64; 4];
        for slot in tail.iter_mut().rev() {
            *slot = c % side - bound;
            c /= side;
        }
        let p = PiElement::twisted(LatticeElement([0, 0, tail[0], tail[1], tail[2], tail[3]]));
        if p.isometry::<Rational>().apply(x) == *x {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::affine::AffineIsometry;
    use crate::nilgroup::linear_map::LinearCoordinateMap;

    #[test]
    fn alpha_fixes_a_plane() {
        let sol = fixed_points(&alpha());
        assert_eq!(
            sol.x_plane_constants(),
            Some([rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 4)])
        );
    }

    #[test]
    fn translations_are_free() {
        for g in LatticeElement::boxed(1).filter(|g| *g != LatticeElement::IDENTITY) {
            assert!(fixed_points(&AffineIsometry::left_translation(g.element())).is_empty());
        }
    }

    #[test]
    fn shifted_involution_plane() {
        let m = AffineIsometry::new(
            LinearCoordinateMap::phi_alpha(),
            GroupElement::new([
                rat(0, 1),
                rat(0, 1),
                rat(1, 1),
                rat(0, 1),
                rat(0, 1),
                rat(1, 2),
            ]),
        );
        assert_eq!(
            fixed_points(&m).x_plane_constants(),
            Some([rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 4)])
        );
        let moving_x = AffineIsometry::new(
            LinearCoordinateMap::phi_alpha(),
            GroupElement::from_ints([1, 0, 0, 0, 0, 0]),
        );
        assert!(fixed_points(&moving_x).is_empty());
    }

    #[test]
    fn isotropy_examples() {
        let q = GroupElement::central(rat(0, 1), rat(1, 4));
        let iso = isotropy_group(&q);
        assert_eq!(iso.len(), 2);
        assert_eq!(iso[1], alpha());

        let off = GroupElement::new([
            rat(0, 1),
            rat(0, 1),
            rat(1, 3),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ]);
        assert_eq!(isotropy_group(&off).len(), 1);

        for (x1, x2) in [(rat(0, 1), rat(0, 1)), (rat(7, 3), rat(-1, 9))] {
            let x = GroupElement::new([x1, x2, rat(1, 2), rat(1, 2), rat(1, 2), rat(3, 4)]);
            let iso = isotropy_group(&x);
            assert_eq!(iso.len(), 2);
            assert_eq!(iso[1].linear, LinearCoordinateMap::phi_alpha());
            assert_eq!(
                iso[1].translation,
                GroupElement::new([
                    rat(0, 1),
                    rat(0, 1),
                    rat(1, 1),
                    rat(1, 1),
                    rat(1, 1),
                    rat(3, 2)
                ])
            );
        }
    }

    #[test]
    fn closed_form_isotropy_matches_full_search() {
        let points = [
            GroupElement::central(rat(0, 1), rat(1, 4)),
            GroupElement::new([
                rat(1, 2),
                rat(0, 1),
                rat(-1, 2),
                rat(0, 1),
                rat(1, 2),
                rat(-1, 4),
            ]),
            GroupElement::new([
                rat(0, 1),
                rat(0, 1),
                rat(1, 3),
                rat(0, 1),
                rat(0, 1),
                rat(1, 4),
            ]),
        ];
        for x in points {
            let mut closed = isotropy_elements(&x);
            closed.sort();
            assert_eq!(isotropy_bruteforce(&x, 1), closed);
        }
    }

    #[test]
    fn singular_set_small_bounds() {
        let r1 = singular_set_report(1).unwrap();
        assert!(r1.pass, "{r1:?}");
        assert_eq!(r1.distinct_planes, 27 * 2);
        let r2 = singular_set_report(2).unwrap();
        assert!(r2.pass);
        assert_eq!(r2.distinct_planes, 125 * 4);
        assert!(r1.distinct_planes < r2.distinct_planes);
        assert_eq!(singular_set_report(0), Err(NilgroupError::InvalidBound));
    }
}
