//! G-structures encoded by their defining forms.

use crate::error::{GeomError, Result};
use crate::form::{Endomorphism, KForm};
use crate::scalar::{int, Scalar};

/// SU(3)-structure in dimension 6: fundamental 2-form and the real and
/// imaginary parts of the (3,0)-form. `J` is always derived from `F` via
/// `F(X,Y) = g(X, JY)`, so the pair cannot fall out of sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SU3Structure {
    pub f: KForm,
    pub psi_plus: KForm,
    pub psi_minus: KForm,
    pub j: Endomorphism,
}

impl SU3Structure {
    pub fn new(f: KForm, psi_plus: KForm, psi_minus: KForm) -> Result<Self> {
        let j = Endomorphism::from_two_form(&f)?;
        if !j.is_almost_complex() {
            return Err(GeomError::NotAdmissible {
                condition: "F does not square to an almost complex structure".into(),
            });
        }
        if !f.wedge(&psi_plus)?.is_zero() || !f.wedge(&psi_minus)?.is_zero() {
            return Err(GeomError::NotAdmissible {
                condition: "F ∧ Ψ must vanish for an SU(3)-structure".into(),
            });
        }
        if psi_plus.inner(&psi_plus)? != psi_minus.inner(&psi_minus)? {
            return Err(GeomError::NotAdmissible {
                condition: "Ψ+ and Ψ- must have equal norms".into(),
            });
        }
        Ok(SU3Structure { f, psi_plus, psi_minus, j })
    }

    pub fn dim(&self) -> u8 {
        self.f.dim()
    }
}

/// G2-structure in dimension 7, determined by the fundamental 3-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Structure {
    pub omega: KForm,
}

impl G2Structure {
    pub fn new(omega: KForm) -> Result<Self> {
        if omega.degree() != 3 {
            return Err(GeomError::DegreeMismatch(omega.degree(), 3));
        }
        Ok(G2Structure { omega })
    }

    pub fn dim(&self) -> u8 {
        self.omega.dim()
    }

    pub fn star_omega(&self) -> KForm {
        self.omega.hodge_star()
    }
}

/// Spin(7)-structure in dimension 8, determined by the self-dual 4-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spin7Structure {
    pub phi: KForm,
}

impl Spin7Structure {
    pub fn new(phi: KForm) -> Result<Self> {
        if phi.degree() != 4 {
            return Err(GeomError::DegreeMismatch(phi.degree(), 4));
        }
        if phi.hodge_star() != phi {
            return Err(GeomError::NotAdmissible { condition: "Φ must be self-dual".into() });
        }
        Ok(Spin7Structure { phi })
    }

    pub fn dim(&self) -> u8 {
        self.phi.dim()
    }
}

/// Almost contact metric structure on an odd-dimensional frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStructure {
    pub eta: KForm,
    pub f5: KForm,
    pub psi: Endomorphism,
    pub xi: u8,
}

impl ContactStructure {
    pub fn new(eta: KForm, f5: KForm, xi: u8) -> Result<Self> {
        let psi = Endomorphism::from_two_form(&f5)?;
        let dim = f5.dim();
        // ψ(ξ) = 0
        if psi.apply_basis(xi).iter().any(|v| !num_traits::Zero::is_zero(v)) {
            return Err(GeomError::NotAdmissible { condition: "ψ(ξ) must vanish".into() });
        }
        // ψ² = -Id + η⊗ξ
        let psi2 = psi.compose(&psi)?;
        let mut expect = Endomorphism::identity(dim).scale(&int(-1));
        for j in 1..=dim {
            let eta_j = eta.coeff(&[j]);
            if !num_traits::Zero::is_zero(&eta_j) {
                expect.set(xi, j, expect.entry(xi, j) + eta_j);
            }
        }
        if psi2 != expect {
            return Err(GeomError::NotAdmissible {
                condition: "ψ² must equal -Id + η⊗ξ".into(),
            });
        }
        Ok(ContactStructure { eta, f5, psi, xi })
    }

    pub fn dim(&self) -> u8 {
        self.f5.dim()
    }
}

/// Dilaton 1-form data; the Lee form of the ambient structure is
/// proportional to `dφ` (`θ⁶ = 2dφ`, `θ⁷ = 2dφ`, `θ⁸ = (12/7)dφ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilatonData {
    pub dphi: KForm,
}

/// Tagged union of the supported structures.
#[derive(Clone, Debug)]
pub enum GStructure {
    Su3(SU3Structure),
    G2(G2Structure),
    Spin7(Spin7Structure),
    Contact(ContactStructure),
}

/// Structure kinds addressable by `canonical`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Su3,
    G2,
    Spin7,
    Sasaki,
}

/// The canonical fundamental form `F = -e12 - e34 - e56`.
pub fn canonical_f(dim: u8) -> KForm {
    let mut f = KForm::zero(dim, 2);
    f.add_term(&[1, 2], int(-1));
    f.add_term(&[3, 4], int(-1));
    f.add_term(&[5, 6], int(-1));
    f
}

/// `Ψ+ = -e135 + e236 + e146 + e245`.
pub fn canonical_psi_plus(dim: u8) -> KForm {
    let mut p = KForm::zero(dim, 3);
    p.add_term(&[1, 3, 5], int(-1));
    p.add_term(&[2, 3, 6], int(1));
    p.add_term(&[1, 4, 6], int(1));
    p.add_term(&[2, 4, 5], int(1));
    p
}

/// `Ψ- = -e136 - e145 - e235 + e246`.
pub fn canonical_psi_minus(dim: u8) -> KForm {
    let mut p = KForm::zero(dim, 3);
    p.add_term(&[1, 3, 6], int(-1));
    p.add_term(&[1, 4, 5], int(-1));
    p.add_term(&[2, 3, 5], int(-1));
    p.add_term(&[2, 4, 6], int(1));
    p
}

/// `ω = e127 - e236 + e347 + e567 - e146 - e245 + e135`.
pub fn canonical_omega() -> KForm {
    let mut w = KForm::zero(7, 3);
    w.add_term(&[1, 2, 7], int(1));
    w.add_term(&[2, 3, 6], int(-1));
    w.add_term(&[3, 4, 7], int(1));
    w.add_term(&[5, 6, 7], int(1));
    w.add_term(&[1, 4, 6], int(-1));
    w.add_term(&[2, 4, 5], int(-1));
    w.add_term(&[1, 3, 5], int(1));
    w
}

/// The canonical self-dual 4-form on the 8-frame, realized as
/// `Φ = ω ∧ e8 + *ω` with the product direction appended last.
pub fn canonical_phi() -> KForm {
    let omega = canonical_omega();
    let omega8 = omega.embed(8).expect("embed");
    let star8 = omega.hodge_star().embed(8).expect("embed");
    omega8.wedge(&KForm::basis(8, &[8])).expect("wedge").add(&star8)
}

/// Canonical structure of the requested kind. `Φ ∧ Φ = 14 vol` with these
/// normalizations; `(ω, ω) = 7`.
pub fn canonical(kind: StructureKind, dim: u8) -> Result<GStructure> {
    match (kind, dim) {
        (StructureKind::Su3, 6) => Ok(GStructure::Su3(SU3Structure::new(
            canonical_f(6),
            canonical_psi_plus(6),
            canonical_psi_minus(6),
        )?)),
        (StructureKind::G2, 7) => Ok(GStructure::G2(G2Structure::new(canonical_omega())?)),
        (StructureKind::Spin7, 8) => Ok(GStructure::Spin7(Spin7Structure::new(canonical_phi())?)),
        (StructureKind::Sasaki, 5) => {
            let eta = KForm::basis(5, &[5]);
            let mut f5 = KForm::zero(5, 2);
            f5.add_term(&[1, 2], int(1));
            f5.add_term(&[3, 4], int(1));
            Ok(GStructure::Contact(ContactStructure::new(eta, f5, 5)?))
        }
        _ => Err(GeomError::Unsupported(format!(
            "no canonical {kind:?} structure in dimension {dim}"
        ))),
    }
}

/// `T⁵ = 2 η ∧ F⁵`, the Sasakian characteristic torsion.
pub fn sasaki_torsion(c: &ContactStructure) -> KForm {
    c.eta.wedge(&c.f5).expect("same frame").scale(&int(2))
}

/// Tanno deformation constants of a Sasakian structure:
/// `ψ' = ψ, ξ' = (3/4)ξ, η' = (4/3)η, g' = (4/3)g + (4/9)η⊗η`.
/// Returns the deformed metric coefficients `(g'(ξ',ξ'), η'(ξ'))` and the
/// check that `ψ'² = -Id + η'⊗ξ'` holds, all of which must be exact.
pub fn tanno_deformation_checks(c: &ContactStructure) -> (Scalar, Scalar, bool) {
    use crate::scalar::rat;
    let n = c.dim();
    // g'(ξ',ξ') = (9/16)(4/3 + 4/9) for a unit ξ
    let g_xi = rat(9, 16) * (rat(4, 3) + rat(4, 9));
    // η'(ξ') = (4/3)(3/4) η(ξ)
    let eta_xi = rat(4, 3) * rat(3, 4) * c.eta.coeff(&[c.xi]);
    // η'⊗ξ' = η⊗ξ, so the defining identity is unchanged
    let psi2 = c.psi.compose(&c.psi).expect("same dim");
    let mut expect = Endomorphism::identity(n).scale(&int(-1));
    for j in 1..=n {
        let v = c.eta.coeff(&[j]);
        if !num_traits::Zero::is_zero(&v) {
            expect.set(c.xi, j, expect.entry(c.xi, j) + v);
        }
    }
    (g_xi, eta_xi, psi2 == expect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_su3_invariants() {
        let GStructure::Su3(s) = canonical(StructureKind::Su3, 6).unwrap() else {
            panic!("kind");
        };
        assert!(s.j.is_almost_complex());
        assert_eq!(s.psi_plus.inner(&s.psi_plus).unwrap(), int(4));
        // *Ψ+ = Ψ-, *Ψ- = -Ψ+
        assert_eq!(s.psi_plus.hodge_star(), s.psi_minus);
        assert_eq!(s.psi_minus.hodge_star(), s.psi_plus.neg());
    }

    #[test]
    fn canonical_g2_star() {
        let w = canonical_omega();
        assert_eq!(w.inner(&w).unwrap(), int(7));
        let sw = w.hodge_star();
        // *ω = e3456 + e1457 + e1256 + e1234 + e2357 + e1367 - e2467
        let mut expect = KForm::zero(7, 4);
        for idx in [[3u8, 4, 5, 6], [1, 4, 5, 7], [1, 2, 5, 6], [1, 2, 3, 4], [2, 3, 5, 7], [1, 3, 6, 7]] {
            expect.add_term(&idx, int(1));
        }
        expect.add_term(&[2, 4, 6, 7], int(-1));
        assert_eq!(sw, expect);
    }

    #[test]
    fn canonical_phi_is_self_dual_with_volume_constant() {
        let phi = canonical_phi();
        assert_eq!(phi.hodge_star(), phi);
        assert_eq!(phi.inner(&phi).unwrap(), int(14));
        let pp = phi.wedge(&phi).unwrap();
        assert_eq!(pp, KForm::volume(8).scale(&int(14)));
    }

    #[test]
    fn canonical_sasaki_structure() {
        let GStructure::Contact(c) = canonical(StructureKind::Sasaki, 5).unwrap() else {
            panic!("kind");
        };
        let t5 = sasaki_torsion(&c);
        let mut expect = KForm::zero(5, 3);
        expect.add_term(&[1, 2, 5], int(2));
        expect.add_term(&[3, 4, 5], int(2));
        assert_eq!(t5, expect);
        let (g_xi, eta_xi, psi_ok) = tanno_deformation_checks(&c);
        assert_eq!(g_xi, int(1));
        assert_eq!(eta_xi, int(1));
        assert!(psi_ok);
    }

    #[test]
    fn unknown_kind_is_an_error() {
        assert!(canonical(StructureKind::G2, 6).is_err());
        assert!(canonical(StructureKind::Su3, 7).is_err());
    }
}
