//! G2-structures with totally skew torsion, and the lift of an admissible
//! SU(3)-structure to the product with a line.

use crate::error::{GeomError, Result};
use crate::form::KForm;
use crate::frame::{product_with_line, FrameSpace};
use crate::scalar::{int, rat, Scalar};
use crate::structures::{G2Structure, SU3Structure};

/// Lee form `θ⁷ = -⅓ *(*dω ∧ ω)`.
pub fn lee_form7(s: &G2Structure, space: &FrameSpace) -> Result<KForm> {
    let d_omega = space.d(&s.omega)?;
    let inner = d_omega.hodge_star().wedge(&s.omega)?;
    Ok(inner.hodge_star().scale(&rat(-1, 3)))
}

/// Torsion data of a G2-structure solving the existence condition
/// `d*ω = θ⁷ ∧ *ω`.
#[derive(Debug)]
pub struct G2Torsion {
    pub torsion: KForm,
    pub lee_form: KForm,
    /// `(dω, *ω)` under the increasing-tuple pairing.
    pub pairing: Scalar,
}

/// Whether `d*ω = θ⁷ ∧ *ω` holds exactly.
pub fn g2_condition_holds(s: &G2Structure, space: &FrameSpace) -> Result<bool> {
    let star_omega = s.star_omega();
    let d_star_omega = space.d(&star_omega)?;
    let theta = lee_form7(s, space)?;
    Ok(d_star_omega == theta.wedge(&star_omega)?)
}

/// Characteristic torsion
/// `T = ⅙ (dω, *ω) ω - *dω + *(θ⁷ ∧ ω)`; fails with a not-admissible error
/// when the existence condition does not hold.
pub fn g2_torsion(s: &G2Structure, space: &FrameSpace) -> Result<G2Torsion> {
    if !g2_condition_holds(s, space)? {
        return Err(GeomError::NotAdmissible {
            condition: "d*ω ≠ θ⁷ ∧ *ω".into(),
        });
    }
    let d_omega = space.d(&s.omega)?;
    let star_omega = s.star_omega();
    let theta = lee_form7(s, space)?;
    let pairing = d_omega.inner(&star_omega)?;
    let torsion = s
        .omega
        .scale(&(rat(1, 6) * pairing.clone()))
        .sub(&d_omega.hodge_star())
        .add(&theta.wedge(&s.omega)?.hodge_star());
    Ok(G2Torsion { torsion, lee_form: theta, pairing })
}

/// Result of lifting an admissible SU(3)-structure to `M⁶ × ℝ`.
#[derive(Debug)]
pub struct Su3Lift {
    pub structure: G2Structure,
    pub space: FrameSpace,
    /// Lee form of the lifted structure, computed on the product.
    pub theta7: KForm,
    /// `(dω, *ω)` on the product.
    pub pairing: Scalar,
    /// Torsion of the lifted structure.
    pub torsion: KForm,
}

/// `ω = -F ∧ e_{n+1} - Ψ+` on the product with a line. The output is
/// checked to satisfy the G2 existence condition; an admissibility failure
/// of the input therefore propagates. On model backends the differentials
/// of `F`, `Ψ+`, `Ψ-` and `*F` must be declared.
pub fn lift_su3_to_g2(s: &SU3Structure, space: &FrameSpace) -> Result<Su3Lift> {
    let n6 = s.dim();
    let n7 = n6 + 1;
    if space.dim() != n6 {
        return Err(GeomError::DimensionMismatch(space.dim(), n6));
    }
    let e_new = KForm::basis(n7, &[n7]);
    let omega = s
        .f
        .embed(n7)?
        .wedge(&e_new)?
        .neg()
        .sub(&s.psi_plus.embed(n7)?);

    let d_f = space.d(&s.f)?;
    let d_psi_plus = space.d(&s.psi_plus)?;
    let d_psi_minus = space.d(&s.psi_minus)?;
    let star6_f = s.f.hodge_star();
    let d_star6_f = space.d(&star6_f)?;

    let lifted = match product_with_line(space) {
        FrameSpace::Lie(f) => FrameSpace::Lie(f),
        FrameSpace::Model(mut m) => {
            // dω = -dF ∧ e_{n+1} - dΨ+
            let d_omega = d_f
                .embed(n7)?
                .wedge(&e_new)?
                .neg()
                .sub(&d_psi_plus.embed(n7)?);
            m.declare_d(omega.clone(), d_omega);
            // *⁷ω = -*⁶F - Ψ- ∧ e_{n+1}, so
            // d(*⁷ω) = -d(*⁶F) - dΨ- ∧ e_{n+1}
            let star7_omega = star6_f
                .embed(n7)?
                .neg()
                .sub(&s.psi_minus.embed(n7)?.wedge(&e_new)?);
            if star7_omega != omega.hodge_star() {
                return Err(GeomError::Inconsistency(
                    "product Hodge star disagrees with the split formula".into(),
                ));
            }
            let d_star7_omega = d_star6_f
                .embed(n7)?
                .neg()
                .sub(&d_psi_minus.embed(n7)?.wedge(&e_new)?);
            m.declare_d(star7_omega, d_star7_omega);
            FrameSpace::Model(m)
        }
    };

    let structure = G2Structure::new(omega)?;
    let data = g2_torsion(&structure, &lifted)?;
    Ok(Su3Lift {
        structure,
        space: lifted,
        theta7: data.lee_form,
        pairing: data.pairing,
        torsion: data.torsion,
    })
}

/// Scalar-curvature expression for G2-structures with skew torsion:
/// `s = 1/18 (dω,*ω)² + 2‖θ⁷‖² - 1/12 ‖T‖² + 3 δθ⁷` with full-contraction
/// norms. The `‖θ⁷‖²` coefficient is the one under which the expression
/// reduces exactly to the six-dimensional formula on products.
pub fn scal1_formula(
    pairing: &Scalar,
    theta7: &KForm,
    torsion: &KForm,
    delta_theta: &Scalar,
) -> Scalar {
    rat(1, 18) * pairing.clone() * pairing.clone() + int(2) * theta7.full_norm_sq()
        - rat(1, 12) * torsion.full_norm_sq()
        + int(3) * delta_theta.clone()
}

/// Scalar curvature of solutions with dilaton:
/// `s = 8‖dφ‖² - 1/12 ‖T‖² + 6 δdφ`.
pub fn dilaton_scal_formula(dphi: &KForm, torsion: &KForm, delta_dphi: &Scalar) -> Scalar {
    int(8) * dphi.full_norm_sq() - rat(1, 12) * torsion.full_norm_sq()
        + int(6) * delta_dphi.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::LieFrame;
    use crate::models::nil6_frame;
    use crate::structures::{canonical, canonical_omega, GStructure, StructureKind};

    fn canonical_su3() -> SU3Structure {
        match canonical(StructureKind::Su3, 6).unwrap() {
            GStructure::Su3(s) => s,
            _ => unreachable!(),
        }
    }

    #[test]
    fn lift_of_canonical_su3_is_canonical_omega() {
        let space = FrameSpace::Lie(LieFrame::flat(6));
        let lift = lift_su3_to_g2(&canonical_su3(), &space).unwrap();
        assert_eq!(lift.structure.omega, canonical_omega());
        assert!(lift.torsion.is_zero());
        assert!(lift.theta7.is_zero());
        assert_eq!(lift.pairing, int(0));
    }

    #[test]
    fn lift_of_nil6_carries_six_dimensional_torsion() {
        let space = FrameSpace::Lie(nil6_frame());
        let lift = lift_su3_to_g2(&canonical_su3(), &space).unwrap();
        let mut t6 = KForm::zero(7, 3);
        t6.add_term(&[1, 4, 5], int(-2));
        t6.add_term(&[1, 3, 6], int(1));
        t6.add_term(&[2, 3, 5], int(1));
        t6.add_term(&[2, 4, 6], int(-1));
        assert_eq!(lift.torsion, t6);
        assert_eq!(lift.pairing, int(0));
        // θ⁷ = θ⁶ - ¼(N,Ψ-) e7 with (N,Ψ-) = -4
        assert_eq!(lift.theta7, KForm::basis(7, &[7]));
    }

    #[test]
    fn flat_seven_frame_is_torsion_free() {
        let s = G2Structure::new(canonical_omega()).unwrap();
        let space = FrameSpace::Lie(LieFrame::flat(7));
        let data = g2_torsion(&s, &space).unwrap();
        assert!(data.torsion.is_zero());
        assert!(data.lee_form.is_zero());
    }
}
