//! SU(3)-structure analysis: Nijenhuis tensor, Lee form, existence
//! conditions and the characteristic torsion, computed by two independent
//! routes and compared exactly.

use num_traits::Zero;

use crate::connection::Array2;
use crate::error::{GeomError, Result};
use crate::form::{Endomorphism, KForm};
use crate::frame::{FrameSpace, LieFrame};
use crate::scalar::{int, rat, Scalar};
use crate::structures::SU3Structure;

/// Nijenhuis tensor of an almost complex structure on a Lie frame:
/// `N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY]`.
pub struct NijenhuisData {
    /// `g(N(e_i, e_j), e_k)` as a 3-index table flattened to (i,j) rows.
    pub table: Vec<Vec<Scalar>>,
    pub totally_skew: bool,
    /// The 3-form `N` when totally skew, `None` otherwise.
    pub form: Option<KForm>,
}

pub fn nijenhuis(frame: &LieFrame, j: &Endomorphism) -> Result<NijenhuisData> {
    if frame.dim() != j.dim() {
        return Err(GeomError::DimensionMismatch(frame.dim(), j.dim()));
    }
    let n = frame.dim();
    let b = frame.brackets();
    let basis = |i: u8| -> Vec<Scalar> {
        (1..=n).map(|k| if k == i { int(1) } else { Scalar::zero() }).collect()
    };
    let apply_j = |v: &[Scalar]| -> Vec<Scalar> {
        (1..=n)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (jj, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        acc += j.entry(i, jj as u8 + 1) * c.clone();
                    }
                }
                acc
            })
            .collect()
    };
    let mut table = vec![vec![Scalar::zero(); n as usize]; (n as usize) * (n as usize)];
    for i in 1..=n {
        for jj in 1..=n {
            if i == jj {
                continue;
            }
            let ei = basis(i);
            let ej = basis(jj);
            let jei = apply_j(&ei);
            let jej = apply_j(&ej);
            let mut value = b.bracket_vectors(&jei, &jej);
            let b_ij = b.bracket_vectors(&ei, &ej);
            let j_jei_ej = apply_j(&b.bracket_vectors(&jei, &ej));
            let j_ei_jej = apply_j(&b.bracket_vectors(&ei, &jej));
            for k in 0..n as usize {
                value[k] = value[k].clone()
                    - b_ij[k].clone()
                    - j_jei_ej[k].clone()
                    - j_ei_jej[k].clone();
            }
            table[(i as usize - 1) * n as usize + (jj as usize - 1)] = value;
        }
    }
    // total skewness of g(N(·,·),·)
    let get = |i: u8, jj: u8, k: u8| -> Scalar {
        table[(i as usize - 1) * n as usize + (jj as usize - 1)][k as usize - 1].clone()
    };
    let mut skew = true;
    'outer: for i in 1..=n {
        for jj in 1..=n {
            for k in 1..=n {
                let v = get(i, jj, k);
                if v != -get(jj, i, k) || v != -get(i, k, jj) {
                    skew = false;
                    break 'outer;
                }
            }
        }
    }
    let form = if skew {
        let mut f = KForm::zero(n, 3);
        for i in 1..=n {
            for jj in (i + 1)..=n {
                for k in (jj + 1)..=n {
                    f.add_term(&[i, jj, k], get(i, jj, k));
                }
            }
        }
        Some(f)
    } else {
        None
    };
    Ok(NijenhuisData { table, totally_skew: skew, form })
}

/// `δF(J·)`: the Lee 1-form in the normalization used by the torsion and
/// curvature formulas of this module.
pub fn lee_form_machinery(f: &KForm, j: &Endomorphism, space: &FrameSpace) -> Result<KForm> {
    let delta_f = space.codifferential(f)?;
    let n = f.dim();
    let mut theta = KForm::zero(n, 1);
    for b in 1..=n {
        // θ(e_b) = δF(J e_b)
        let mut acc = Scalar::zero();
        for a in 1..=n {
            let ja = j.entry(a, b);
            if !ja.is_zero() {
                acc += delta_f.coeff(&[a]) * ja;
            }
        }
        theta.add_term(&[b], acc);
    }
    Ok(theta)
}

/// Conformally normalized Lee form `θ⁶ = ½ δF(J·)`; on a locally
/// conformally Kähler structure this is the 1-form with `dF = θ ∧ F`.
pub fn lee_form6(f: &KForm, j: &Endomorphism, space: &FrameSpace) -> Result<KForm> {
    Ok(lee_form_machinery(f, j, space)?.scale(&rat(1, 2)))
}

/// Pullback acting only on the selected slots of a 3-form:
/// `out(X₁,X₂,X₃) = a(u₁,u₂,u₃)` with `u_p = J X_p` when `mask[p]`.
fn pullback_slots(a: &KForm, j: &Endomorphism, mask: [bool; 3]) -> KForm {
    let n = a.dim();
    let mut out = KForm::zero(n, 3);
    for i1 in 1..=n {
        for i2 in (i1 + 1)..=n {
            for i3 in (i2 + 1)..=n {
                let mut acc = Scalar::zero();
                let cols = |p: usize, target: u8| -> Vec<(u8, Scalar)> {
                    if mask[p] {
                        (1..=n)
                            .filter_map(|aidx| {
                                let v = j.entry(aidx, target);
                                if v.is_zero() {
                                    None
                                } else {
                                    Some((aidx, v))
                                }
                            })
                            .collect()
                    } else {
                        vec![(target, int(1))]
                    }
                };
                for (a1, c1) in cols(0, i1) {
                    for (a2, c2) in cols(1, i2) {
                        for (a3, c3) in cols(2, i3) {
                            let base = a.coeff(&[a1, a2, a3]);
                            if !base.is_zero() {
                                acc += c1.clone() * c2.clone() * c3.clone() * base;
                            }
                        }
                    }
                }
                out.add_term(&[i1, i2, i3], acc);
            }
        }
    }
    out
}

/// (3,0)+(0,3) part of a 3-form:
/// `γ⁻ = ¼ (γ - γ(J,J,·) - γ(J,·,J) - γ(·,J,J))`.
pub fn three_form_minus_part(a: &KForm, j: &Endomorphism) -> KForm {
    let jj_dot = pullback_slots(a, j, [true, true, false]);
    let j_dot_j = pullback_slots(a, j, [true, false, true]);
    let dot_jj = pullback_slots(a, j, [false, true, true]);
    a.sub(&jj_dot).sub(&j_dot_j).sub(&dot_jj).scale(&rat(1, 4))
}

/// Full analysis report for an SU(3)-structure over a Lie frame.
pub struct Su3Analysis {
    pub w1_plus: Scalar,
    pub w1_minus: Scalar,
    /// Conformally normalized Lee form (½ δF(J·)).
    pub theta6: KForm,
    /// Lee form in the torsion-machinery normalization (δF(J·)).
    pub theta6_machinery: KForm,
    pub n_skew: bool,
    pub n_form: Option<KForm>,
    pub n_psi_plus: Scalar,
    pub n_psi_minus: Scalar,
    pub half_flat: bool,
    pub df_wedge_f_zero: bool,
    pub cycon_holds: bool,
    pub d_f: KForm,
    pub d_psi_plus: KForm,
    pub d_psi_minus: KForm,
}

pub fn su3_analyze(s: &SU3Structure, frame: &LieFrame) -> Result<Su3Analysis> {
    let space = FrameSpace::Lie(frame.clone());
    let d_f = frame.exterior_derivative(&s.f)?;
    let d_psi_plus = frame.exterior_derivative(&s.psi_plus)?;
    let d_psi_minus = frame.exterior_derivative(&s.psi_minus)?;
    let w1_plus = d_psi_plus.wedge(&s.f)?.hodge_star().coeff(&[]);
    let w1_minus = d_psi_minus.wedge(&s.f)?.hodge_star().coeff(&[]);
    let theta_raw = lee_form_machinery(&s.f, &s.j, &space)?;
    let nij = nijenhuis(frame, &s.j)?;
    let (n_psi_plus, n_psi_minus) = match &nij.form {
        Some(nf) => (nf.inner(&s.psi_plus)?, nf.inner(&s.psi_minus)?),
        None => (Scalar::zero(), Scalar::zero()),
    };
    let star_f = s.f.hodge_star();
    let quarter = rat(1, 4);
    let cycon_plus = d_psi_plus
        == theta_raw
            .wedge(&s.psi_plus)?
            .sub(&star_f.scale(&(quarter.clone() * n_psi_plus.clone())));
    let cycon_minus = d_psi_minus
        == theta_raw
            .wedge(&s.psi_minus)?
            .sub(&star_f.scale(&(quarter * n_psi_minus.clone())));
    let cycon_holds = nij.totally_skew && cycon_plus && cycon_minus;
    let half_flat = d_psi_plus.is_zero() && theta_raw.is_zero();
    let df_wedge_f_zero = d_f.wedge(&s.f)?.is_zero();
    Ok(Su3Analysis {
        w1_plus,
        w1_minus,
        theta6: theta_raw.scale(&rat(1, 2)),
        theta6_machinery: theta_raw,
        n_skew: nij.totally_skew,
        n_form: nij.form,
        n_psi_plus,
        n_psi_minus,
        half_flat,
        df_wedge_f_zero,
        cycon_holds,
        d_f,
        d_psi_plus,
        d_psi_minus,
    })
}

/// Characteristic torsion of an admissible SU(3)-structure, computed as
/// `T = -*dF + *(θ∧F) + ¼(N,Ψ+)Ψ+ + ¼(N,Ψ-)Ψ-` and cross-checked against
/// the independent route `T = -dF(J·,J·,J·) + N`, together with the
/// `dF⁻ = -¾ N(J·,J·,J·)` identity.
pub fn su3_torsion(s: &SU3Structure, frame: &LieFrame) -> Result<KForm> {
    let analysis = su3_analyze(s, frame)?;
    if !analysis.n_skew {
        return Err(GeomError::NotAdmissible {
            condition: "the Nijenhuis tensor is not totally skew-symmetric".into(),
        });
    }
    if !analysis.cycon_holds {
        return Err(GeomError::NotAdmissible {
            condition: "dΨ± differ from θ∧Ψ± - ¼(N,Ψ±)*F".into(),
        });
    }
    let n_form = analysis.n_form.as_ref().expect("skew");
    let quarter = rat(1, 4);
    let t_structural = analysis
        .d_f
        .hodge_star()
        .neg()
        .add(&analysis.theta6_machinery.wedge(&s.f)?.hodge_star())
        .add(&s.psi_plus.scale(&(quarter.clone() * analysis.n_psi_plus.clone())))
        .add(&s.psi_minus.scale(&(quarter.clone() * analysis.n_psi_minus.clone())));
    let t_direct = analysis.d_f.pullback(&s.j)?.neg().add(n_form);
    if t_structural != t_direct {
        return Err(GeomError::Inconsistency(format!(
            "torsion routes disagree: {t_structural} vs {t_direct}"
        )));
    }
    let df_minus = three_form_minus_part(&analysis.d_f, &s.j);
    let jn = n_form.pullback(&s.j)?;
    if df_minus != jn.scale(&rat(-3, 4)) {
        return Err(GeomError::Inconsistency(
            "dF⁻ does not equal -¾ N(J·,J·,J·)".into(),
        ));
    }
    Ok(t_structural)
}

/// Scalar-curvature expression for admissible SU(3)-structures:
/// `s = ⅛(N,Ψ+)² + ⅛(N,Ψ-)² + 2‖θ‖² - 1/12 ‖T‖² + 3 δθ`, with `‖·‖²` the
/// full contraction and `θ` in the machinery normalization.
pub fn scal2_formula(
    n_psi_plus: &Scalar,
    n_psi_minus: &Scalar,
    theta_machinery: &KForm,
    torsion: &KForm,
    delta_theta: &Scalar,
) -> Scalar {
    rat(1, 8) * (n_psi_plus.clone() * n_psi_plus.clone())
        + rat(1, 8) * (n_psi_minus.clone() * n_psi_minus.clone())
        + int(2) * theta_machinery.full_norm_sq()
        - rat(1, 12) * torsion.full_norm_sq()
        + int(3) * delta_theta.clone()
}

/// Evaluation of the equation-of-motion identity
/// `Ric(X,Y) - ¼ Σ H(X,e_i,e_j) H(Y,e_i,e_j) + 2 Hess φ(X,Y) - ¼ Σ_i
/// dH(X, JY, e_i, J e_i) = 0` on every frame pair. Returns the first
/// violated pair, if any. The sign of the `dH` term is the one that
/// holds identically under this crate's curvature conventions.
pub fn eqms_identity_violation(
    ricci: &Array2,
    h: &KForm,
    dh: &KForm,
    j: &Endomorphism,
    hessian: &Array2,
) -> Option<(u8, u8)> {
    let n = ricci.dim();
    for x in 1..=n {
        for y in 1..=n {
            let mut h_term = Scalar::zero();
            for i in 1..=n {
                for jj in 1..=n {
                    let a = h.coeff(&[x, i, jj]);
                    if !a.is_zero() {
                        h_term += a * h.coeff(&[y, i, jj]);
                    }
                }
            }
            let mut dh_term = Scalar::zero();
            for i in 1..=n {
                for a in 1..=n {
                    let ja_y = j.entry(a, y);
                    if ja_y.is_zero() {
                        continue;
                    }
                    for b in 1..=n {
                        let jb_i = j.entry(b, i);
                        if jb_i.is_zero() {
                            continue;
                        }
                        let v = dh.coeff(&[x, a, i, b]);
                        if !v.is_zero() {
                            dh_term += ja_y.clone() * jb_i * v;
                        }
                    }
                }
            }
            let total = ricci.get(x, y) - rat(1, 4) * h_term + int(2) * hessian.get(x, y)
                - rat(1, 4) * dh_term;
            if !total.is_zero() {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::nil6_frame;
    use crate::structures::{canonical_f, canonical_psi_minus, canonical_psi_plus};

    fn canonical_su3() -> SU3Structure {
        SU3Structure::new(canonical_f(6), canonical_psi_plus(6), canonical_psi_minus(6)).unwrap()
    }

    #[test]
    fn nijenhuis_on_nil6_is_minus_psi_minus() {
        let frame = nil6_frame();
        let s = canonical_su3();
        let nij = nijenhuis(&frame, &s.j).unwrap();
        assert!(nij.totally_skew);
        assert_eq!(nij.form.unwrap(), canonical_psi_minus(6).neg());
    }

    #[test]
    fn nijenhuis_on_abelian_frame_vanishes() {
        let frame = LieFrame::flat(6);
        let s = canonical_su3();
        let nij = nijenhuis(&frame, &s.j).unwrap();
        assert!(nij.totally_skew);
        assert!(nij.form.unwrap().is_zero());
    }

    #[test]
    fn analyze_nil6() {
        let frame = nil6_frame();
        let s = canonical_su3();
        let a = su3_analyze(&s, &frame).unwrap();
        assert_eq!(a.w1_plus, int(0));
        assert_eq!(a.w1_minus, int(3));
        assert!(a.theta6.is_zero());
        assert!(a.half_flat);
        assert!(a.df_wedge_f_zero);
        assert!(a.cycon_holds);
        assert_eq!(a.n_psi_minus, int(-4));
        assert_eq!(a.n_psi_plus, int(0));
        assert_eq!(a.d_f, KForm::basis(6, &[2, 3, 6]).scale(&int(-3)));
        assert_eq!(a.d_psi_minus, s.f.hodge_star());
        assert!(a.d_psi_plus.is_zero());
    }

    #[test]
    fn analyze_flat_torus_is_calabi_yau_like() {
        let frame = LieFrame::flat(6);
        let s = canonical_su3();
        let a = su3_analyze(&s, &frame).unwrap();
        assert!(a.cycon_holds && a.half_flat);
        assert_eq!(a.w1_plus, int(0));
        assert_eq!(a.w1_minus, int(0));
        let t = su3_torsion(&s, &frame).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn torsion_on_nil6() {
        let frame = nil6_frame();
        let s = canonical_su3();
        let t = su3_torsion(&s, &frame).unwrap();
        let mut expect = KForm::zero(6, 3);
        expect.add_term(&[1, 4, 5], int(-2));
        expect.add_term(&[1, 3, 6], int(1));
        expect.add_term(&[2, 3, 5], int(1));
        expect.add_term(&[2, 4, 6], int(-1));
        assert_eq!(t, expect);
    }

    #[test]
    fn df_minus_projection_matches_acy() {
        let frame = nil6_frame();
        let s = canonical_su3();
        let a = su3_analyze(&s, &frame).unwrap();
        let df_minus = three_form_minus_part(&a.d_f, &s.j);
        let n = a.n_form.unwrap();
        assert_eq!(df_minus, n.pullback(&s.j).unwrap().scale(&rat(-3, 4)));
        // dF⁻ = -¾ Ψ+ on this frame since N = -Ψ- and Ψ-(J,J,J) = -Ψ+
        assert_eq!(df_minus, canonical_psi_plus(6).scale(&rat(-3, 4)));
    }

    #[test]
    fn inadmissible_structure_is_rejected() {
        // a frame whose Nijenhuis tensor is not totally skew for the
        // canonical J: d e1 = e1^e3 gives brackets mixing holomorphic slots
        let mut diffs = vec![KForm::zero(6, 2); 6];
        diffs[0] = KForm::basis(6, &[1, 3]);
        let frame = LieFrame::new(6, diffs).unwrap();
        let s = canonical_su3();
        let err = su3_torsion(&s, &frame).unwrap_err();
        assert!(matches!(err, GeomError::NotAdmissible { .. }), "{err}");
    }
}
