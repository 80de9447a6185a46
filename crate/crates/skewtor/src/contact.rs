//! Sasakian 5-structures lifted to locally conformally Kähler hermitian
//! data on the product with a line.

use crate::error::{GeomError, Result};
use crate::form::{Endomorphism, KForm};
use crate::frame::{express_in_span, product_with_line, FrameSpace};
use crate::scalar::{int, rat};
use crate::structures::ContactStructure;
use crate::su3::lee_form_machinery;

/// Hermitian data induced on `M⁵ × ℝ` by a Sasakian structure.
#[derive(Debug)]
pub struct HermitianLift {
    pub space: FrameSpace,
    pub f6: KForm,
    pub j6: Endomorphism,
    /// Lee form extracted from `dF⁶ = θ ∧ F⁶`; coincides with the
    /// conformally normalized `½ δF(J·)`.
    pub theta6: KForm,
    /// Bismut torsion `T⁶ = -dF⁶(J·,J·,J·)`; equals the Sasakian torsion.
    pub t6: KForm,
    pub dt6: KForm,
    pub df6: KForm,
}

/// Builds `F⁶ = F⁵ + e5 ∧ e6` on the product, requiring the Sasakian
/// condition `dη = 2F⁵`. The lift verifies that the structure is locally
/// conformally Kähler (`dF⁶ = θ ∧ F⁶`) and that the torsion of its unique
/// hermitian skew-torsion connection equals `T⁵ = 2η ∧ F⁵`.
pub fn lift_contact_to_hermitian(
    c: &ContactStructure,
    space: &FrameSpace,
) -> Result<HermitianLift> {
    let n5 = c.dim();
    let n6 = n5 + 1;
    if space.dim() != n5 {
        return Err(GeomError::DimensionMismatch(space.dim(), n5));
    }
    let d_eta = space.d(&c.eta)?;
    if d_eta != c.f5.scale(&int(2)) {
        return Err(GeomError::NotAdmissible {
            condition: "dη ≠ 2F⁵: the structure is not Sasakian in the adapted frame".into(),
        });
    }
    let d_f5 = space.d(&c.f5)?;

    let e_new = KForm::basis(n6, &[n6]);
    let f6 = c
        .f5
        .embed(n6)?
        .add(&c.eta.embed(n6)?.wedge(&e_new)?);
    // dF⁶ = dF⁵ + dη ∧ e6
    let df6 = d_f5.embed(n6)?.add(&d_eta.embed(n6)?.wedge(&e_new)?);

    let lifted = match product_with_line(space) {
        FrameSpace::Lie(f) => FrameSpace::Lie(f),
        FrameSpace::Model(mut m) => {
            m.declare_d(f6.clone(), df6.clone());
            // *F⁶ = ½ F⁶ ∧ F⁶ for this structure, so d*F⁶ = dF⁶ ∧ F⁶
            let star_f6 = f6.hodge_star();
            if star_f6 != f6.wedge(&f6)?.scale(&rat(1, 2)) {
                return Err(GeomError::Inconsistency(
                    "*F⁶ is not ½ F⁶∧F⁶ on this lift".into(),
                ));
            }
            m.declare_d(star_f6, df6.wedge(&f6)?);
            let t6_form = c.eta.embed(n6)?.wedge(&c.f5.embed(n6)?)?.scale(&int(2));
            let dt6_form = d_eta.embed(n6)?.wedge(&c.f5.embed(n6)?)?.scale(&int(2));
            m.declare_d(t6_form, dt6_form);
            FrameSpace::Model(m)
        }
    };

    let j6 = Endomorphism::from_two_form(&f6)?;
    if !j6.is_almost_complex() {
        return Err(GeomError::Inconsistency("F⁶ does not induce J with J² = -Id".into()));
    }

    // Lee form from the locally conformally Kähler relation dF = θ ∧ F
    let gens: Vec<KForm> = (1..=n6)
        .map(|b| KForm::basis(n6, &[b]).wedge(&f6).expect("same frame"))
        .collect();
    let coeffs = express_in_span(&df6, &gens).ok_or_else(|| GeomError::NotAdmissible {
        condition: "dF⁶ is not of the form θ ∧ F⁶".into(),
    })?;
    let mut theta6 = KForm::zero(n6, 1);
    for (b, v) in coeffs.iter().enumerate() {
        theta6.add_term(&[b as u8 + 1], v.clone());
    }
    // the conformal Lee form ½ δF(J·) must agree with the extracted factor
    let theta_machinery = lee_form_machinery(&f6, &j6, &lifted)?;
    if theta_machinery.scale(&rat(1, 2)) != theta6 {
        return Err(GeomError::Inconsistency(format!(
            "Lee form routes disagree: ½δF(J·) = {}, conformal factor = {theta6}",
            theta_machinery.scale(&rat(1, 2))
        )));
    }

    // Bismut torsion T = -dF(J·,J·,J·) (the Nijenhuis tensor vanishes)
    let t6 = df6.pullback(&j6)?.neg();
    let t5 = c.eta.embed(n6)?.wedge(&c.f5.embed(n6)?)?.scale(&int(2));
    if t6 != t5 {
        return Err(GeomError::Inconsistency(format!(
            "Bismut torsion {t6} differs from the Sasakian torsion {t5}"
        )));
    }
    let dt6 = lifted.d(&t6)?;
    Ok(HermitianLift { space: lifted, f6, j6, theta6, t6, dt6, df6 })
}
