//! Membership of curvature 2-forms in the instanton subalgebras
//! su(3) ⊂ so(6), g2 ⊂ so(7), spin(7) ⊂ so(8).

use num_traits::Zero;

use crate::connection::CurvatureTensor;
use crate::error::{GeomError, Result};
use crate::form::{Endomorphism, KForm};
use crate::scalar::{rat, Scalar};
use crate::structures::GStructure;

/// `Σ_{m<n} α_{mn} β_{mn p}` for a 2-form against a 3-form, as a 1-form.
fn contract_two_three(alpha: &KForm, beta: &KForm) -> KForm {
    let n = alpha.dim();
    let mut out = KForm::zero(n, 1);
    for p in 1..=n {
        let mut acc = Scalar::zero();
        for (idx, c) in alpha.terms() {
            let v = beta.coeff(&[idx[0], idx[1], p]);
            if !v.is_zero() {
                acc += c.clone() * v;
            }
        }
        out.add_term(&[p], acc);
    }
    out
}

/// `Σ_{p<q} α_{pq} β_{pq mn}` for a 2-form against a 4-form, as a 2-form.
fn contract_two_four(alpha: &KForm, beta: &KForm) -> KForm {
    let n = alpha.dim();
    let mut out = KForm::zero(n, 2);
    for m in 1..=n {
        for q in (m + 1)..=n {
            let mut acc = Scalar::zero();
            for (idx, c) in alpha.terms() {
                let v = beta.coeff(&[idx[0], idx[1], m, q]);
                if !v.is_zero() {
                    acc += c.clone() * v;
                }
            }
            out.add_term(&[m, q], acc);
        }
    }
    out
}

/// su(3) membership for a 2-form in dimension 6: invariance under the
/// almost complex structure together with a vanishing trace against `F`.
pub fn two_form_in_su3(alpha: &KForm, f: &KForm, j: &Endomorphism) -> Result<bool> {
    if alpha.degree() != 2 {
        return Err(GeomError::DegreeMismatch(alpha.degree(), 2));
    }
    Ok(alpha.pullback(j)? == *alpha && alpha.inner(f)?.is_zero())
}

/// g2 membership for a 2-form in dimension 7: `*(α ∧ ω) = -α`.
/// The equivalent coefficient conditions `α_{mn} ω^{mn}{}_p = 0` and
/// `α_{mn} = -½ α_{pq} (*ω)^{pq}{}_{mn}` are evaluated alongside; a
/// disagreement is an internal-consistency error.
pub fn two_form_in_g2(alpha: &KForm, omega: &KForm) -> Result<bool> {
    if alpha.degree() != 2 {
        return Err(GeomError::DegreeMismatch(alpha.degree(), 2));
    }
    let star_route = alpha.wedge(omega)?.hodge_star() == alpha.neg();
    let contraction_route = contract_two_three(alpha, omega).is_zero();
    let coefficient_route =
        contract_two_four(alpha, &omega.hodge_star()).scale(&rat(-1, 1)) == *alpha;
    if star_route != contraction_route || star_route != coefficient_route {
        return Err(GeomError::Inconsistency(format!(
            "g2 membership routes disagree on {alpha}"
        )));
    }
    Ok(star_route)
}

/// spin(7) membership for a 2-form in dimension 8: `*(α ∧ Φ) = -α`,
/// cross-checked against `α_{mn} = -½ α_{pq} Φ^{pq}{}_{mn}`.
pub fn two_form_in_spin7(alpha: &KForm, phi: &KForm) -> Result<bool> {
    if alpha.degree() != 2 {
        return Err(GeomError::DegreeMismatch(alpha.degree(), 2));
    }
    let star_route = alpha.wedge(phi)?.hodge_star() == alpha.neg();
    let coefficient_route = contract_two_four(alpha, phi).scale(&rat(-1, 1)) == *alpha;
    if star_route != coefficient_route {
        return Err(GeomError::Inconsistency(format!(
            "spin(7) membership routes disagree on {alpha}"
        )));
    }
    Ok(star_route)
}

/// Membership of a single 2-form in the subalgebra of the given structure.
pub fn instanton_check_form(alpha: &KForm, structure: &GStructure) -> Result<bool> {
    match structure {
        GStructure::Su3(s) => {
            if alpha.dim() != s.dim() {
                return Err(GeomError::DimensionMismatch(alpha.dim(), s.dim()));
            }
            two_form_in_su3(alpha, &s.f, &s.j)
        }
        GStructure::G2(s) => {
            if alpha.dim() != s.dim() {
                return Err(GeomError::DimensionMismatch(alpha.dim(), s.dim()));
            }
            two_form_in_g2(alpha, &s.omega)
        }
        GStructure::Spin7(s) => {
            if alpha.dim() != s.dim() {
                return Err(GeomError::DimensionMismatch(alpha.dim(), s.dim()));
            }
            two_form_in_spin7(alpha, &s.phi)
        }
        GStructure::Contact(_) => Err(GeomError::Unsupported(
            "no instanton subalgebra for an almost contact structure".into(),
        )),
    }
}

/// Instanton test for a curvature tensor: every 2-form slot
/// `R(·,·,e_k,e_l)` must lie in the stated subalgebra.
pub fn instanton_check(r: &CurvatureTensor, structure: &GStructure) -> Result<bool> {
    let n = r.dim();
    for k in 1..=n {
        for l in (k + 1)..=n {
            let slot = r.two_form_slot(k, l);
            if slot.is_zero() {
                continue;
            }
            if !instanton_check_form(&slot, structure)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hermitian variant used where only `(F, J)` are available.
pub fn instanton_check_hermitian(
    r: &CurvatureTensor,
    f: &KForm,
    j: &Endomorphism,
) -> Result<bool> {
    let n = r.dim();
    for k in 1..=n {
        for l in (k + 1)..=n {
            let slot = r.two_form_slot(k, l);
            if !slot.is_zero() && !two_form_in_su3(&slot, f, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::structures::{canonical, canonical_omega, canonical_phi, StructureKind};

    #[test]
    fn zero_form_is_always_a_member() {
        let su3 = canonical(StructureKind::Su3, 6).unwrap();
        assert!(instanton_check_form(&KForm::zero(6, 2), &su3).unwrap());
        let g2 = canonical(StructureKind::G2, 7).unwrap();
        assert!(instanton_check_form(&KForm::zero(7, 2), &g2).unwrap());
        let spin7 = canonical(StructureKind::Spin7, 8).unwrap();
        assert!(instanton_check_form(&KForm::zero(8, 2), &spin7).unwrap());
    }

    #[test]
    fn kaehler_form_is_not_in_su3() {
        let su3 = canonical(StructureKind::Su3, 6).unwrap();
        let GStructure::Su3(s) = &su3 else { unreachable!() };
        // J-invariant but with trace (F,F) = 3
        assert!(!instanton_check_form(&s.f, &su3).unwrap());
    }

    #[test]
    fn g2_eigenspace_split() {
        let omega = canonical_omega();
        // ι_{e7}ω = e12 + e34 + e56 lies in the 7-dimensional eigenspace
        let mut seven = KForm::zero(7, 2);
        seven.add_term(&[1, 2], int(1));
        seven.add_term(&[3, 4], int(1));
        seven.add_term(&[5, 6], int(1));
        assert_eq!(seven.wedge(&omega).unwrap().hodge_star(), seven.scale(&int(2)));
        assert!(!two_form_in_g2(&seven, &omega).unwrap());
        // e12 - e34 is orthogonal to every ι_v ω, hence in g2
        let mut member = KForm::zero(7, 2);
        member.add_term(&[1, 2], int(1));
        member.add_term(&[3, 4], int(-1));
        assert!(two_form_in_g2(&member, &omega).unwrap());
    }

    #[test]
    fn spin7_membership_example() {
        let phi = canonical_phi();
        let mut member = KForm::zero(8, 2);
        member.add_term(&[1, 2], int(1));
        member.add_term(&[3, 4], int(-1));
        assert!(two_form_in_spin7(&member, &phi).unwrap());
        // e12 + e34 + e56 has a component in the complementary eigenspace
        let mut seven_part = KForm::zero(8, 2);
        seven_part.add_term(&[1, 2], int(1));
        seven_part.add_term(&[3, 4], int(1));
        seven_part.add_term(&[5, 6], int(1));
        assert!(!two_form_in_spin7(&seven_part, &phi).unwrap());
    }
}
