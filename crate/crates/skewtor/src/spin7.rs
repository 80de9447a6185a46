//! Spin(7)-structures with skew torsion and the lift from dimension 7.

use crate::error::{GeomError, Result};
use crate::form::KForm;
use crate::frame::{product_with_line, FrameSpace};
use crate::g2::{g2_torsion, G2Torsion};
use crate::scalar::{rat, Scalar};
use crate::structures::{G2Structure, Spin7Structure};

/// Lee form `θ⁸ = -1/7 *(*dΦ ∧ Φ)`.
pub fn lee_form8(s: &Spin7Structure, space: &FrameSpace) -> Result<KForm> {
    let d_phi = space.d(&s.phi)?;
    let inner = d_phi.hodge_star().wedge(&s.phi)?;
    Ok(inner.hodge_star().scale(&rat(-1, 7)))
}

/// Torsion data of a Spin(7)-structure. Every Spin(7)-structure admits a
/// unique connection with totally skew torsion.
#[derive(Debug)]
pub struct Spin7Torsion {
    pub torsion: KForm,
    pub lee_form: KForm,
}

/// Characteristic torsion `T = *dΦ - 7/6 *(θ⁸ ∧ Φ)`. The 7/6 factor pairs
/// with the 1/7 normalization of `θ⁸`; it is the coefficient under which
/// the dilaton form of the flux (`T = *dΦ - 2*(dφ∧Φ)`, `θ⁸ = 12/7 dφ`)
/// is reproduced and products with a line keep their 7-dimensional torsion.
pub fn spin7_torsion(s: &Spin7Structure, space: &FrameSpace) -> Result<Spin7Torsion> {
    let d_phi = space.d(&s.phi)?;
    let lee_form = lee_form8(s, space)?;
    let torsion = d_phi
        .hodge_star()
        .sub(&lee_form.wedge(&s.phi)?.hodge_star().scale(&rat(7, 6)));
    Ok(Spin7Torsion { torsion, lee_form })
}

/// Result of lifting a G2-structure solving `d*ω = θ⁷ ∧ *ω` to `N⁷ × ℝ`.
#[derive(Debug)]
pub struct G2Lift {
    pub structure: Spin7Structure,
    pub space: FrameSpace,
    pub theta8: KForm,
    /// Torsion of the lifted structure; equals the base torsion.
    pub torsion: KForm,
    /// Torsion data of the base structure, for comparison.
    pub base: G2Torsion,
}

/// `Φ = ω ∧ e_{n+1} + *⁷ω` on the product with a line. Verifies
/// `θ⁸ = 6/7 θ⁷ + 1/7 (dω, *ω) e_{n+1}` and `T⁸ = T⁷` exactly.
pub fn lift_g2_to_spin7(s: &G2Structure, space: &FrameSpace) -> Result<G2Lift> {
    let n7 = s.dim();
    let n8 = n7 + 1;
    if space.dim() != n7 {
        return Err(GeomError::DimensionMismatch(space.dim(), n7));
    }
    let base = g2_torsion(s, space)?;
    let e_new = KForm::basis(n8, &[n8]);
    let star7_omega = s.star_omega();
    let phi = s
        .omega
        .embed(n8)?
        .wedge(&e_new)?
        .add(&star7_omega.embed(n8)?);

    let d_omega = space.d(&s.omega)?;
    let d_star7_omega = space.d(&star7_omega)?;

    let lifted = match product_with_line(space) {
        FrameSpace::Lie(f) => FrameSpace::Lie(f),
        FrameSpace::Model(mut m) => {
            // dΦ = dω ∧ e_{n+1} + d(*⁷ω)
            let d_phi = d_omega
                .embed(n8)?
                .wedge(&e_new)?
                .add(&d_star7_omega.embed(n8)?);
            m.declare_d(phi.clone(), d_phi);
            FrameSpace::Model(m)
        }
    };

    let structure = Spin7Structure::new(phi)?;
    let data = spin7_torsion(&structure, &lifted)?;

    let expected_theta8 = base
        .lee_form
        .embed(n8)?
        .scale(&rat(6, 7))
        .add(&e_new.scale(&(rat(1, 7) * base.pairing.clone())));
    if data.lee_form != expected_theta8 {
        return Err(GeomError::Inconsistency(format!(
            "lifted Lee form {} differs from 6/7 θ⁷ + 1/7 (dω,*ω) e{n8}",
            data.lee_form
        )));
    }
    if data.torsion != base.torsion.embed(n8)? {
        return Err(GeomError::Inconsistency(format!(
            "lifted torsion {} differs from the base torsion {}",
            data.torsion, base.torsion
        )));
    }
    Ok(G2Lift {
        structure,
        space: lifted,
        theta8: data.lee_form,
        torsion: data.torsion,
        base,
    })
}

/// One-form relation `θ⁸ = 12/7 dφ` solved for the dilaton differential.
pub fn dilaton_from_theta8(theta8: &KForm) -> KForm {
    theta8.scale(&rat(7, 12))
}

/// One-form relation `θ⁷ = 2 dφ` solved for the dilaton differential.
pub fn dilaton_from_theta7(theta7: &KForm) -> KForm {
    theta7.scale(&rat(1, 2))
}

/// One-form relation `θ⁶ = 2 dφ` (machinery normalization) solved for the
/// dilaton differential.
pub fn dilaton_from_theta6_machinery(theta6: &KForm) -> KForm {
    theta6.scale(&rat(1, 2))
}

/// `(dω, *ω)` of a G2-structure, the pairing entering the torsion and
/// scalar-curvature formulas.
pub fn g2_pairing(s: &G2Structure, space: &FrameSpace) -> Result<Scalar> {
    space.d(&s.omega)?.inner(&s.star_omega())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::LieFrame;
    use crate::scalar::int;
    use crate::structures::{canonical_omega, canonical_phi};

    #[test]
    fn lift_of_canonical_omega_is_canonical_phi() {
        let s = G2Structure::new(canonical_omega()).unwrap();
        let space = FrameSpace::Lie(LieFrame::flat(7));
        let lift = lift_g2_to_spin7(&s, &space).unwrap();
        assert_eq!(lift.structure.phi, canonical_phi());
        assert!(lift.torsion.is_zero());
        assert!(lift.theta8.is_zero());
    }

    #[test]
    fn flat_eight_frame_is_torsion_free() {
        let s = Spin7Structure::new(canonical_phi()).unwrap();
        let space = FrameSpace::Lie(LieFrame::flat(8));
        let data = spin7_torsion(&s, &space).unwrap();
        assert!(data.torsion.is_zero());
        assert!(data.lee_form.is_zero());
    }

    #[test]
    fn dilaton_relations() {
        let theta = KForm::basis(8, &[8]).scale(&int(-12));
        assert_eq!(dilaton_from_theta8(&theta), KForm::basis(8, &[8]).scale(&int(-7)));
    }
}
