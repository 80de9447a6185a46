//! Lee-form dispatcher over the structure kinds.

use crate::error::{GeomError, Result};
use crate::form::KForm;
use crate::frame::FrameSpace;
use crate::structures::GStructure;

/// Lee form of a structure over a backend: `½ δF(J·)` in dimension 6,
/// `-⅓ *(*dω∧ω)` in dimension 7, `-1/7 *(*dΦ∧Φ)` in dimension 8. Model
/// backends must carry the needed exterior derivatives.
pub fn lee_form(structure: &GStructure, space: &FrameSpace) -> Result<KForm> {
    match structure {
        GStructure::Su3(s) => crate::su3::lee_form6(&s.f, &s.j, space),
        GStructure::G2(s) => crate::g2::lee_form7(s, space),
        GStructure::Spin7(s) => crate::spin7::lee_form8(s, space),
        GStructure::Contact(_) => Err(GeomError::Unsupported(
            "the Lee form is defined for the lifted hermitian data, not the contact structure"
                .into(),
        )),
    }
}
