//! Exact-arithmetic exterior calculus on orthonormal frames, metric
//! connections with totally skew torsion, and the SU(3)/G2/Spin(7)/contact
//! structure machinery built on top of them.
//!
//! Everything is computed over arbitrary-precision rationals; equality
//! checks are exact with zero tolerance. All values are immutable after
//! construction and all operations are pure functions, so the whole crate
//! is safe to use concurrently.

pub mod connection;
pub mod contact;
pub mod error;
pub mod form;
pub mod frame;
pub mod g2;
pub mod instanton;
pub mod lee;
pub mod models;
pub mod scalar;
pub mod spin7;
pub mod structures;
pub mod su3;

pub use connection::{
    add_torsion, curvature, dt_quadratic, levi_civita, nabla_curvature_from_riemannian,
    pontrjagin, ricci_scalar_weyl, tilde_curvature, Array2, Connection, CurvatureTensor,
    RicciData,
};
pub use contact::{lift_contact_to_hermitian, HermitianLift};
pub use error::{GeomError, Result};
pub use form::{contract_pair, Array4, Endomorphism, KForm};
pub use frame::{express_in_span, product_with_line, Brackets, FrameSpace, LieFrame, ModelSpace};
pub use g2::{
    dilaton_scal_formula, g2_condition_holds, g2_torsion, lee_form7, lift_su3_to_g2, scal1_formula,
    G2Torsion, Su3Lift,
};
pub use lee::lee_form;
pub use instanton::{
    instanton_check, instanton_check_form, instanton_check_hermitian, two_form_in_g2,
    two_form_in_spin7, two_form_in_su3,
};
pub use models::{build, nil6, s5_sasakian, s6_nearly_kaehler, s7_nearly_parallel, ModelHandle, ModelName};
pub use scalar::{int, rat, Scalar};
pub use spin7::{
    dilaton_from_theta6_machinery, dilaton_from_theta7, dilaton_from_theta8, g2_pairing,
    lee_form8, lift_g2_to_spin7, spin7_torsion, G2Lift, Spin7Torsion,
};
pub use structures::{
    canonical, canonical_f, canonical_omega, canonical_phi, canonical_psi_minus,
    canonical_psi_plus, sasaki_torsion, tanno_deformation_checks, ContactStructure, DilatonData,
    G2Structure, GStructure, Spin7Structure, StructureKind, SU3Structure,
};
pub use su3::{
    eqms_identity_violation, lee_form6, lee_form_machinery, nijenhuis, scal2_formula, su3_analyze,
    su3_torsion, three_form_minus_part, NijenhuisData, Su3Analysis,
};
