//! Built-in exact model geometries, parameterized so that every quantity
//! stays rational.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::connection::{
    add_torsion, curvature, dt_quadratic, levi_civita, nabla_curvature_from_riemannian,
    ricci_scalar_weyl, tilde_curvature, CurvatureTensor,
};
use crate::error::{GeomError, Result};
use crate::form::{contract_pair, KForm};
use crate::frame::{FrameSpace, LieFrame, ModelSpace};
use crate::scalar::{int, rat, Scalar};
use crate::structures::{
    canonical_f, canonical_omega, canonical_psi_minus, canonical_psi_plus, ContactStructure,
    G2Structure, GStructure, SU3Structure,
};
use crate::su3::su3_torsion;

/// Names addressable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelName {
    Nil6,
    S6NearlyKaehler,
    S7NearlyParallel,
    S5Sasakian,
}

impl ModelName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelName::Nil6 => "nil6",
            ModelName::S6NearlyKaehler => "s6_nk",
            ModelName::S7NearlyParallel => "s7_np",
            ModelName::S5Sasakian => "s5_sasaki",
        }
    }

    pub fn parse(s: &str) -> Option<ModelName> {
        match s {
            "nil6" => Some(ModelName::Nil6),
            "s6_nk" => Some(ModelName::S6NearlyKaehler),
            "s7_np" => Some(ModelName::S7NearlyParallel),
            "s5_sasaki" => Some(ModelName::S5Sasakian),
            _ => None,
        }
    }
}

/// A fully instantiated example geometry. Constructors run a consistency
/// suite before handing the model out.
#[derive(Clone, Debug)]
pub struct ModelHandle {
    pub name: ModelName,
    pub params: BTreeMap<String, Scalar>,
    pub space: FrameSpace,
    pub structure: GStructure,
    pub torsion: KForm,
    /// `dT`, either computed (Lie frames) or declared and validated.
    pub dt: KForm,
    /// Parallel torsion is an assumption on model spaces; on Lie frames it
    /// is established by differentiation.
    pub assumes_parallel_torsion: bool,
    /// `(N, Ψ+)` and `(N, Ψ-)` where the structure has SU(3) type.
    pub n_psi_plus: Option<Scalar>,
    pub n_psi_minus: Option<Scalar>,
}

impl ModelHandle {
    pub fn dim(&self) -> u8 {
        self.space.dim()
    }

    pub fn su3(&self) -> Option<&SU3Structure> {
        match &self.structure {
            GStructure::Su3(s) => Some(s),
            _ => None,
        }
    }

    pub fn g2(&self) -> Option<&G2Structure> {
        match &self.structure {
            GStructure::G2(s) => Some(s),
            _ => None,
        }
    }

    pub fn contact(&self) -> Option<&ContactStructure> {
        match &self.structure {
            GStructure::Contact(s) => Some(s),
            _ => None,
        }
    }

    /// Riemannian curvature: Koszul route on Lie frames, stored closed
    /// form on model spaces.
    pub fn riemannian_curvature(&self) -> CurvatureTensor {
        match &self.space {
            FrameSpace::Lie(f) => curvature(f, &levi_civita(f)),
            FrameSpace::Model(m) => m.curvature.clone(),
        }
    }

    /// Curvature of the torsion connection `∇ = ∇^g + ½T`: computed
    /// directly on Lie frames, solved from the parallel-torsion relation
    /// on model spaces.
    pub fn torsion_connection_curvature(&self) -> Result<CurvatureTensor> {
        match &self.space {
            FrameSpace::Lie(f) => {
                let conn = add_torsion(&levi_civita(f), &self.torsion)?;
                Ok(curvature(f, &conn))
            }
            FrameSpace::Model(_) => {
                nabla_curvature_from_riemannian(&self.riemannian_curvature(), &self.torsion)
            }
        }
    }

    /// Curvature of `∇̃ = ∇^g - ½T`: direct on Lie frames, via
    /// `R̃ = R^∇ - ½dT` on model spaces.
    pub fn tilde_connection_curvature(&self) -> Result<CurvatureTensor> {
        match &self.space {
            FrameSpace::Lie(f) => {
                let conn = add_torsion(&levi_civita(f), &self.torsion.neg())?;
                Ok(curvature(f, &conn))
            }
            FrameSpace::Model(_) => {
                tilde_curvature(&self.torsion_connection_curvature()?, &self.dt)
            }
        }
    }
}

/// The nilpotent frame `de1 = e36, de4 = e26, de5 = e23`, all others closed.
pub fn nil6_frame() -> LieFrame {
    let mut diffs = vec![KForm::zero(6, 2); 6];
    diffs[0] = KForm::basis(6, &[3, 6]);
    diffs[3] = KForm::basis(6, &[2, 6]);
    diffs[4] = KForm::basis(6, &[2, 3]);
    LieFrame::new(6, diffs).expect("Jacobi holds")
}

/// Six-dimensional nilmanifold model carrying the canonical SU(3)-structure.
pub fn nil6() -> Result<ModelHandle> {
    let frame = nil6_frame();
    let s = SU3Structure::new(canonical_f(6), canonical_psi_plus(6), canonical_psi_minus(6))?;
    let torsion = su3_torsion(&s, &frame)?;
    let analysis = crate::su3::su3_analyze(&s, &frame)?;
    let dt = frame.exterior_derivative(&torsion)?;
    let quad = dt_quadratic(&torsion)?;
    if quad != dt {
        return Err(GeomError::Inconsistency(
            "quadratic dT disagrees with the exterior derivative".into(),
        ));
    }
    Ok(ModelHandle {
        name: ModelName::Nil6,
        params: BTreeMap::new(),
        space: FrameSpace::Lie(frame),
        structure: GStructure::Su3(s),
        torsion,
        dt,
        assumes_parallel_torsion: false,
        n_psi_plus: Some(analysis.n_psi_plus),
        n_psi_minus: Some(analysis.n_psi_minus),
    })
}

/// Nearly Kähler six-sphere with torsion scale `t ≠ 0`; the constant-type
/// constant is `a² = 2t²`, keeping all data rational. The torsion phase
/// `T = t Ψ-` is guarded by the constant-type contraction identity.
pub fn s6_nearly_kaehler(t: Scalar) -> Result<ModelHandle> {
    if t.is_zero() {
        return Err(GeomError::Unsupported("t must be a nonzero rational".into()));
    }
    let f = canonical_f(6);
    let psi_plus = canonical_psi_plus(6);
    let psi_minus = canonical_psi_minus(6);
    let s = SU3Structure::new(f.clone(), psi_plus.clone(), psi_minus.clone())?;
    let a_sq = int(2) * t.clone() * t.clone();
    let torsion = psi_minus.scale(&t);
    // constant-type identity:
    // T_{ijm}T_{kl}^m = a²/2 (g_ik g_jl - g_jk g_il - F_ik F_jl + F_jk F_il)
    let tt = contract_pair(&torsion, &torsion)?;
    let g = |i: u8, j: u8| if i == j { int(1) } else { Scalar::zero() };
    let half_a_sq = a_sq.clone() * rat(1, 2);
    for i in 1..=6u8 {
        for j in 1..=6u8 {
            for k in 1..=6u8 {
                for l in 1..=6u8 {
                    let expect = half_a_sq.clone()
                        * (g(i, k) * g(j, l) - g(j, k) * g(i, l)
                            - f.coeff(&[i, k]) * f.coeff(&[j, l])
                            + f.coeff(&[j, k]) * f.coeff(&[i, l]));
                    if tt.get(i, j, k, l) != expect {
                        return Err(GeomError::Inconsistency(format!(
                            "constant-type identity fails at ({i},{j},{k},{l})"
                        )));
                    }
                }
            }
        }
    }
    let star_f = f.hodge_star();
    let dt = star_f.scale(&(-int(2) * a_sq.clone()));
    let quad = dt_quadratic(&torsion)?;
    if quad != dt {
        return Err(GeomError::Inconsistency(
            "quadratic dT differs from -2a² *F".into(),
        ));
    }
    // N = 4T for this class; its pairing with Ψ+ must vanish
    let n_form = torsion.scale(&int(4));
    let n_psi_plus = n_form.inner(&psi_plus)?;
    if !n_psi_plus.is_zero() {
        return Err(GeomError::Inconsistency("(N, Ψ+) must vanish".into()));
    }
    let n_psi_minus = n_form.inner(&psi_minus)?;

    let kappa = t.clone() * t.clone(); // a²/2
    let mut model = ModelSpace::new(
        6,
        CurvatureTensor::constant_curvature(6, &kappa),
        torsion.clone(),
    );
    // dF = 3tΨ+, dΨ+ = 0, dΨ- = -4t *F, d*F = 0
    model.declare_d(f.clone(), psi_plus.scale(&(int(3) * t.clone())));
    model.declare_d(psi_plus.clone(), KForm::zero(6, 4));
    model.declare_d(psi_minus.clone(), star_f.scale(&(-int(4) * t.clone())));
    model.declare_d(star_f.clone(), KForm::zero(6, 5));
    if model.d(&torsion)? != dt {
        return Err(GeomError::Inconsistency("declared dT routes disagree".into()));
    }
    let mut params = BTreeMap::new();
    params.insert("t".to_string(), t);
    Ok(ModelHandle {
        name: ModelName::S6NearlyKaehler,
        params,
        space: FrameSpace::Model(model),
        structure: GStructure::Su3(s),
        torsion,
        dt,
        assumes_parallel_torsion: true,
        n_psi_plus: Some(n_psi_plus),
        n_psi_minus: Some(n_psi_minus),
    })
}

/// Nearly parallel G2 seven-sphere with `dω = -λ *ω` and `T = -λ/6 ω`;
/// the sectional curvature is `λ²/16`.
pub fn s7_nearly_parallel(lambda: Scalar) -> Result<ModelHandle> {
    if lambda.is_zero() {
        return Err(GeomError::Unsupported("lambda must be a nonzero rational".into()));
    }
    let omega = canonical_omega();
    let star_omega = omega.hodge_star();
    let torsion = omega.scale(&(-lambda.clone() * rat(1, 6)));
    let d_omega = star_omega.scale(&-lambda.clone());
    let dt = star_omega.scale(&(lambda.clone() * lambda.clone() * rat(1, 6)));
    let quad = dt_quadratic(&torsion)?;
    if quad != dt {
        return Err(GeomError::Inconsistency(
            "quadratic dT differs from λ²/6 *ω".into(),
        ));
    }
    // -λ/6 dω must agree with dT
    if d_omega.scale(&(-lambda.clone() * rat(1, 6))) != dt {
        return Err(GeomError::Inconsistency("dT routes disagree".into()));
    }
    let kappa = lambda.clone() * lambda.clone() * rat(1, 16);
    let mut model = ModelSpace::new(
        7,
        CurvatureTensor::constant_curvature(7, &kappa),
        torsion.clone(),
    );
    model.declare_d(omega.clone(), d_omega);
    model.declare_d(star_omega, KForm::zero(7, 5));
    let mut params = BTreeMap::new();
    params.insert("lambda".to_string(), lambda);
    Ok(ModelHandle {
        name: ModelName::S7NearlyParallel,
        params,
        space: FrameSpace::Model(model),
        structure: GStructure::G2(G2Structure::new(omega)?),
        torsion,
        dt,
        assumes_parallel_torsion: true,
        n_psi_plus: None,
        n_psi_minus: None,
    })
}

/// Sasakian five-sphere in the adapted frame `η = e5`, `F⁵ = e12 + e34`,
/// with the closed-form curvature of the Sasakian space form. Validates
/// `Ric = 6g - 2η⊗η` at construction.
pub fn s5_sasakian() -> Result<ModelHandle> {
    let eta = KForm::basis(5, &[5]);
    let mut f5 = KForm::zero(5, 2);
    f5.add_term(&[1, 2], int(1));
    f5.add_term(&[3, 4], int(1));
    let contact = ContactStructure::new(eta.clone(), f5.clone(), 5)?;
    let torsion = eta.wedge(&f5)?.scale(&int(2));

    let g = |i: u8, j: u8| if i == j { int(1) } else { Scalar::zero() };
    let etac = |i: u8| if i == 5 { int(1) } else { Scalar::zero() };
    let mut r = CurvatureTensor::zeros(5);
    for i in 1..=5u8 {
        for j in 1..=5u8 {
            for k in 1..=5u8 {
                for l in 1..=5u8 {
                    let v = rat(4, 3) * (g(j, k) * g(i, l) - g(i, k) * g(j, l))
                        + rat(1, 3)
                            * (f5.coeff(&[k, j]) * f5.coeff(&[l, i])
                                - f5.coeff(&[k, i]) * f5.coeff(&[l, j])
                                + int(2) * f5.coeff(&[i, j]) * f5.coeff(&[l, k]))
                        + rat(1, 3)
                            * (etac(i) * etac(k) * g(j, l) - etac(j) * etac(k) * g(i, l)
                                + etac(j) * etac(l) * g(i, k)
                                - etac(i) * etac(l) * g(j, k));
                    if !v.is_zero() {
                        r.set(i, j, k, l, v);
                    }
                }
            }
        }
    }
    // Ricci gate: 6g - 2η⊗η
    let data = ricci_scalar_weyl(&r)?;
    for j in 1..=5u8 {
        for l in 1..=5u8 {
            let expect = int(6) * g(j, l) - int(2) * etac(j) * etac(l);
            if data.ricci.get(j, l) != expect {
                return Err(GeomError::Inconsistency(format!(
                    "Sasakian Ricci gate fails at ({j},{l})"
                )));
            }
        }
    }
    let dt = f5.wedge(&f5)?.scale(&int(4));
    let quad = dt_quadratic(&torsion)?;
    if quad != dt {
        return Err(GeomError::Inconsistency(
            "quadratic dT differs from 4F⁵∧F⁵".into(),
        ));
    }
    let mut model = ModelSpace::new(5, r, torsion.clone());
    model.declare_d(eta, f5.scale(&int(2)));
    model.declare_d(f5, KForm::zero(5, 3));
    model.declare_d(torsion.clone(), dt.clone());
    Ok(ModelHandle {
        name: ModelName::S5Sasakian,
        params: BTreeMap::new(),
        space: FrameSpace::Model(model),
        structure: GStructure::Contact(contact),
        torsion,
        dt,
        assumes_parallel_torsion: true,
        n_psi_plus: None,
        n_psi_minus: None,
    })
}

/// Builds a model by name with parameters, applying documented defaults
/// (`t = 1`, `lambda = 1`).
pub fn build(name: ModelName, params: &BTreeMap<String, Scalar>) -> Result<ModelHandle> {
    match name {
        ModelName::Nil6 => nil6(),
        ModelName::S6NearlyKaehler => {
            let t = params.get("t").cloned().unwrap_or_else(|| int(1));
            s6_nearly_kaehler(t)
        }
        ModelName::S7NearlyParallel => {
            let lambda = params.get("lambda").cloned().unwrap_or_else(|| int(1));
            s7_nearly_parallel(lambda)
        }
        ModelName::S5Sasakian => s5_sasakian(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nil6_model_torsion_and_dt() {
        let m = nil6().unwrap();
        let mut t = KForm::zero(6, 3);
        t.add_term(&[1, 4, 5], int(-2));
        t.add_term(&[1, 3, 6], int(1));
        t.add_term(&[2, 3, 5], int(1));
        t.add_term(&[2, 4, 6], int(-1));
        assert_eq!(m.torsion, t);
        // dT = 2*F = -2(e1256 + e3456 + e1234)
        let f = canonical_f(6);
        assert_eq!(m.dt, f.hodge_star().scale(&int(2)));
        assert_eq!(m.n_psi_minus, Some(int(-4)));
        assert_eq!(m.n_psi_plus, Some(int(0)));
    }

    #[test]
    fn s6_model_scaling() {
        let m1 = s6_nearly_kaehler(int(1)).unwrap();
        let m2 = s6_nearly_kaehler(int(2)).unwrap();
        // torsion scales linearly, dT quadratically
        assert_eq!(m2.torsion, m1.torsion.scale(&int(2)));
        assert_eq!(m2.dt, m1.dt.scale(&int(4)));
        // t = 1: dT = -4 *F
        let f = canonical_f(6);
        assert_eq!(m1.dt, f.hodge_star().scale(&int(-4)));
        assert!(s6_nearly_kaehler(int(0)).is_err());
    }

    #[test]
    fn s7_model_scaling_and_values() {
        let m = s7_nearly_parallel(int(6)).unwrap();
        assert_eq!(m.torsion, canonical_omega().neg());
        let m1 = s7_nearly_parallel(int(1)).unwrap();
        let m2 = s7_nearly_parallel(int(2)).unwrap();
        assert_eq!(m2.torsion, m1.torsion.scale(&int(2)));
        assert_eq!(m2.dt, m1.dt.scale(&int(4)));
        // s^g = 42κ = 21λ²/8 for λ = 1
        let data = ricci_scalar_weyl(&m1.riemannian_curvature()).unwrap();
        assert_eq!(data.scalar, rat(21, 8));
    }

    #[test]
    fn s5_model_gates() {
        let m = s5_sasakian().unwrap();
        let mut t = KForm::zero(5, 3);
        t.add_term(&[1, 2, 5], int(2));
        t.add_term(&[3, 4, 5], int(2));
        assert_eq!(m.torsion, t);
        assert_eq!(m.dt, KForm::basis(5, &[1, 2, 3, 4]).scale(&int(8)));
    }

    #[test]
    fn s6_scalar_curvature_is_15_a_squared() {
        for t in [int(1), int(2), rat(1, 3)] {
            let m = s6_nearly_kaehler(t.clone()).unwrap();
            let data = ricci_scalar_weyl(&m.riemannian_curvature()).unwrap();
            assert_eq!(data.scalar, int(15) * int(2) * t.clone() * t);
        }
    }
}
