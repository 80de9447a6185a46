//! Metric connections on a frame, their curvature, and derived tensors.
//!
//! Sign conventions, fixed once and validated by the model suites:
//! `R(X,Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_{[X,Y]}Z`, `R(X,Y,Z,V) = g(R(X,Y)Z, V)`,
//! so a constant-curvature space has `R_{ijkl} = κ (g_{jk} g_{il} - g_{ik} g_{jl})`;
//! `Ricci_{jl} = Σ_i R(e_i, e_j, e_l, e_i)`, which is positive on spheres.

use num_traits::Zero;

use crate::error::{GeomError, Result};
use crate::form::{Array4, KForm};
use crate::frame::LieFrame;
use crate::scalar::{int, rat, Scalar};

/// Frame coefficients of a metric connection:
/// `gamma[i][j][k] = g(∇_{e_i} e_j, e_k)`, antisymmetric in `(j,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    dim: u8,
    gamma: Vec<Scalar>,
}

impl Connection {
    pub fn zeros(dim: u8) -> Self {
        Connection { dim, gamma: vec![Scalar::zero(); (dim as usize).pow(3)] }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    fn idx(&self, i: u8, j: u8, k: u8) -> usize {
        let n = self.dim as usize;
        ((i as usize - 1) * n + (j as usize - 1)) * n + (k as usize - 1)
    }

    pub fn get(&self, i: u8, j: u8, k: u8) -> Scalar {
        self.gamma[self.idx(i, j, k)].clone()
    }

    pub fn set(&mut self, i: u8, j: u8, k: u8, v: Scalar) {
        let at = self.idx(i, j, k);
        self.gamma[at] = v;
    }

    /// Metric compatibility: `gamma[i][j][k] = -gamma[i][k][j]` for all triples.
    pub fn is_metric(&self) -> bool {
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                for k in 1..=self.dim {
                    if self.get(i, j, k) != -self.get(i, k, j) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Covariant derivative of a constant-coefficient k-form:
    /// `(∇_{e_i} a)(…) = -Σ_p Σ_m gamma[i][y_p][m] a(…, e_m, …)`.
    /// Entry `i-1` of the result is `∇_{e_i} a`.
    pub fn covariant_derivative(&self, a: &KForm) -> Vec<KForm> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n as usize);
        for i in 1..=n {
            let mut di = KForm::zero(n, a.degree());
            for (idx, c) in a.terms() {
                for (p, &yp) in idx.iter().enumerate() {
                    for m in 1..=n {
                        let g = self.get(i, yp, m);
                        if g.is_zero() {
                            continue;
                        }
                        let mut slots = idx.to_vec();
                        slots[p] = m;
                        di.add_term(&slots, -(g * c.clone()));
                    }
                }
            }
            out.push(di);
        }
        out
    }

    /// Whether a constant-coefficient form is parallel.
    pub fn is_parallel(&self, a: &KForm) -> bool {
        self.covariant_derivative(a).iter().all(KForm::is_zero)
    }
}

/// Levi-Civita connection of a left-invariant orthonormal frame. For
/// left-invariant fields the Koszul formula reduces to the bracket terms:
/// `2 g(∇_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) - g([X,Z],Y)`.
pub fn levi_civita(frame: &LieFrame) -> Connection {
    let n = frame.dim();
    let b = frame.brackets();
    let mut conn = Connection::zeros(n);
    let half = rat(1, 2);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let v = (b.get(i, j, k) - b.get(j, k, i) - b.get(i, k, j)) * half.clone();
                if !v.is_zero() {
                    conn.set(i, j, k, v);
                }
            }
        }
    }
    conn
}

/// `∇ = ∇' + ½ T` for a totally skew torsion 3-form `T`.
pub fn add_torsion(conn: &Connection, torsion: &KForm) -> Result<Connection> {
    if torsion.dim() != conn.dim() {
        return Err(GeomError::DimensionMismatch(torsion.dim(), conn.dim()));
    }
    if torsion.degree() != 3 {
        return Err(GeomError::DegreeMismatch(torsion.degree(), 3));
    }
    let n = conn.dim();
    let mut out = conn.clone();
    let half = rat(1, 2);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let t = torsion.coeff(&[i, j, k]);
                if !t.is_zero() {
                    out.set(i, j, k, conn.get(i, j, k) + half.clone() * t);
                }
            }
        }
    }
    Ok(out)
}

/// Curvature tensor `R(e_i, e_j, e_k, e_l)`, antisymmetric in `(i,j)` and `(k,l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    r: Array4,
}

impl CurvatureTensor {
    pub fn zeros(dim: u8) -> Self {
        CurvatureTensor { r: Array4::zeros(dim) }
    }

    /// Wraps an array after validating antisymmetry in both index pairs.
    pub fn new(r: Array4) -> Result<Self> {
        let n = r.dim();
        for i in 1..=n {
            for j in i..=n {
                for k in 1..=n {
                    for l in k..=n {
                        if r.get(i, j, k, l) != -r.get(j, i, k, l)
                            || r.get(i, j, k, l) != -r.get(i, j, l, k)
                        {
                            return Err(GeomError::Inconsistency(format!(
                                "curvature not antisymmetric at ({i},{j},{k},{l})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(CurvatureTensor { r })
    }

    pub fn dim(&self) -> u8 {
        self.r.dim()
    }

    pub fn get(&self, i: u8, j: u8, k: u8, l: u8) -> Scalar {
        self.r.get(i, j, k, l)
    }

    pub fn set(&mut self, i: u8, j: u8, k: u8, l: u8, v: Scalar) {
        self.r.set(i, j, k, l, v);
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> CurvatureTensor {
        let n = self.dim();
        let mut out = CurvatureTensor::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        out.set(i, j, k, l, self.get(i, j, k, l) * c.clone());
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &CurvatureTensor) -> CurvatureTensor {
        let n = self.dim();
        let mut out = CurvatureTensor::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        out.set(i, j, k, l, self.get(i, j, k, l) - other.get(i, j, k, l));
                    }
                }
            }
        }
        out
    }

    /// `R(X,Y,Z,V) = R(Z,V,X,Y)` everywhere.
    pub fn is_pair_symmetric(&self) -> bool {
        self.first_pair_asymmetry().is_none()
    }

    fn first_pair_asymmetry(&self) -> Option<(u8, u8, u8, u8)> {
        let n = self.dim();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        if self.get(i, j, k, l) != self.get(k, l, i, j) {
                            return Some((i, j, k, l));
                        }
                    }
                }
            }
        }
        None
    }

    /// Extends by zero onto a larger frame.
    pub fn embed(&self, dim: u8) -> CurvatureTensor {
        assert!(dim >= self.dim());
        let mut out = CurvatureTensor::zeros(dim);
        let n = self.dim();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let v = self.get(i, j, k, l);
                        if !v.is_zero() {
                            out.set(i, j, k, l, v);
                        }
                    }
                }
            }
        }
        out
    }

    /// The curvature 2-form in the slot `(k,l)`:
    /// `Ω_{kl}(e_i, e_j) = R(e_i, e_j, e_k, e_l)`.
    pub fn two_form_slot(&self, k: u8, l: u8) -> KForm {
        let n = self.dim();
        let mut out = KForm::zero(n, 2);
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.add_term(&[i, j], self.get(i, j, k, l));
            }
        }
        out
    }

    /// Constant-curvature tensor `R_{ijkl} = κ (g_{jk} g_{il} - g_{ik} g_{jl})`.
    pub fn constant_curvature(dim: u8, kappa: &Scalar) -> CurvatureTensor {
        let mut out = CurvatureTensor::zeros(dim);
        for i in 1..=dim {
            for j in 1..=dim {
                if i == j {
                    continue;
                }
                out.set(i, j, j, i, kappa.clone());
                out.set(i, j, i, j, -kappa.clone());
            }
        }
        out
    }
}

/// Curvature of a connection on a Lie frame:
/// `R_{ijkl} = Σ_m (γ_jkm γ_iml - γ_ikm γ_jml - c_ijm γ_mkl)`.
pub fn curvature(frame: &LieFrame, conn: &Connection) -> CurvatureTensor {
    let n = frame.dim();
    let b = frame.brackets();
    let mut out = CurvatureTensor::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for k in 1..=n {
                for l in 1..=n {
                    if k == l {
                        continue;
                    }
                    let mut acc = Scalar::zero();
                    for m in 1..=n {
                        let a = conn.get(j, k, m);
                        if !a.is_zero() {
                            acc += a * conn.get(i, m, l);
                        }
                        let c = conn.get(i, k, m);
                        if !c.is_zero() {
                            acc -= c * conn.get(j, m, l);
                        }
                        let br = b.get(i, j, m);
                        if !br.is_zero() {
                            acc -= br * conn.get(m, k, l);
                        }
                    }
                    if !acc.is_zero() {
                        out.set(i, j, k, l, acc);
                    }
                }
            }
        }
    }
    out
}

/// Symmetric 2-index array, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Array2 {
    dim: u8,
    data: Vec<Scalar>,
}

impl Array2 {
    pub fn zeros(dim: u8) -> Self {
        Array2 { dim, data: vec![Scalar::zero(); (dim as usize).pow(2)] }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn get(&self, i: u8, j: u8) -> Scalar {
        self.data[(i as usize - 1) * self.dim as usize + (j as usize - 1)].clone()
    }

    pub fn set(&mut self, i: u8, j: u8, v: Scalar) {
        self.data[(i as usize - 1) * self.dim as usize + (j as usize - 1)] = v;
    }

    pub fn trace(&self) -> Scalar {
        (1..=self.dim).map(|i| self.get(i, i)).sum()
    }
}

/// Ricci tensor, scalar curvature and Weyl tensor of a curvature tensor.
pub struct RicciData {
    pub ricci: Array2,
    pub scalar: Scalar,
    pub weyl: CurvatureTensor,
}

/// Traces and the dimension-n Weyl projection. `Ricci_{jl} = Σ_i R_{ijli}`,
/// `s = tr Ricci`, and `W = R - corrections` vanishes exactly on
/// constant-curvature input. Weyl needs `n ≥ 4`.
pub fn ricci_scalar_weyl(r: &CurvatureTensor) -> Result<RicciData> {
    let n = r.dim();
    let mut ricci = Array2::zeros(n);
    for j in 1..=n {
        for l in 1..=n {
            let mut acc = Scalar::zero();
            for i in 1..=n {
                acc += r.get(i, j, l, i);
            }
            ricci.set(j, l, acc);
        }
    }
    let scalar: Scalar = ricci.trace();
    if n < 4 {
        return Err(GeomError::Unsupported(format!(
            "Weyl projection needs dimension >= 4, got {n}"
        )));
    }
    // W = R - (1/(n-2)) (Ric ⊘ g) + (s / (2(n-1)(n-2))) (g ⊘ g), where
    // (A ⊘ g)_{ijkl} = A_jk g_il + A_il g_jk - A_ik g_jl - A_jl g_ik.
    let c1 = rat(1, (n as i64) - 2);
    let c2 = scalar.clone() / int(2 * ((n as i64) - 1) * ((n as i64) - 2));
    let g = |i: u8, j: u8| if i == j { int(1) } else { Scalar::zero() };
    let mut weyl = CurvatureTensor::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let kn_ric = ricci.get(j, k) * g(i, l) + ricci.get(i, l) * g(j, k)
                        - ricci.get(i, k) * g(j, l)
                        - ricci.get(j, l) * g(i, k);
                    let kn_g = g(j, k) * g(i, l) + g(i, l) * g(j, k)
                        - g(i, k) * g(j, l)
                        - g(j, l) * g(i, k);
                    let v = r.get(i, j, k, l) - c1.clone() * kn_ric + c2.clone() * kn_g;
                    if !v.is_zero() {
                        weyl.set(i, j, k, l, v);
                    }
                }
            }
        }
    }
    Ok(RicciData { ricci, scalar, weyl })
}

/// Quadratic expression for `dT` under the parallel-torsion hypothesis:
/// `dT_{ijkl} = 2 (T_{ijm} T_{kl}^m + T_{jkm} T_{il}^m + T_{kim} T_{jl}^m)`.
/// Fails if the result is not fully antisymmetric.
pub fn dt_quadratic(torsion: &KForm) -> Result<KForm> {
    if torsion.degree() != 3 {
        return Err(GeomError::DegreeMismatch(torsion.degree(), 3));
    }
    let n = torsion.dim();
    let tt = crate::form::contract_pair(torsion, torsion)?;
    let mut arr = Array4::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let v = tt.get(i, j, k, l) + tt.get(j, k, i, l) + tt.get(k, i, j, l);
                    arr.set(i, j, k, l, v * int(2));
                }
            }
        }
    }
    // genuine 4-form: antisymmetric under every adjacent transposition
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let v = arr.get(i, j, k, l);
                    if v != -arr.get(j, i, k, l)
                        || v != -arr.get(i, k, j, l)
                        || v != -arr.get(i, j, l, k)
                    {
                        return Err(GeomError::Inconsistency(format!(
                            "quadratic dT is not alternating at ({i},{j},{k},{l})"
                        )));
                    }
                }
            }
        }
    }
    let mut out = KForm::zero(n, 4.min(n));
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for l in (k + 1)..=n {
                    out.add_term(&[i, j, k, l], arr.get(i, j, k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Torsion-connection curvature solved from the parallel-torsion relation
/// `R^g_{ijkl} = R^∇_{ijkl} - ½ T_{ijm}T_{kl}^m - ¼ T_{jkm}T_{il}^m - ¼ T_{kim}T_{jl}^m`.
pub fn nabla_curvature_from_riemannian(
    rg: &CurvatureTensor,
    torsion: &KForm,
) -> Result<CurvatureTensor> {
    if rg.dim() != torsion.dim() {
        return Err(GeomError::DimensionMismatch(rg.dim(), torsion.dim()));
    }
    let n = rg.dim();
    let tt = crate::form::contract_pair(torsion, torsion)?;
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let mut out = CurvatureTensor::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let v = rg.get(i, j, k, l)
                        + half.clone() * tt.get(i, j, k, l)
                        + quarter.clone() * tt.get(j, k, i, l)
                        + quarter.clone() * tt.get(k, i, j, l);
                    if !v.is_zero() {
                        out.set(i, j, k, l, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `R̃ = R^∇ - ½ dT`, with the pair-symmetry gate checked on the input and
/// the cross-pairing `R^∇(X,Y,Z,V) = R̃(Z,V,X,Y) + ½ dT(X,Y,Z,V)` verified
/// on the output.
pub fn tilde_curvature(rn: &CurvatureTensor, dt: &KForm) -> Result<CurvatureTensor> {
    if rn.dim() != dt.dim() {
        return Err(GeomError::DimensionMismatch(rn.dim(), dt.dim()));
    }
    if dt.degree() != 4 && !dt.is_zero() {
        return Err(GeomError::DegreeMismatch(dt.degree(), 4));
    }
    if let Some((i, j, k, l)) = rn.first_pair_asymmetry() {
        return Err(GeomError::PairSymmetryViolation { i, j, k, l });
    }
    let n = rn.dim();
    let half = rat(1, 2);
    let mut out = CurvatureTensor::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let v = rn.get(i, j, k, l) - half.clone() * dt.coeff(&[i, j, k, l]);
                    if !v.is_zero() {
                        out.set(i, j, k, l, v);
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let lhs = rn.get(i, j, k, l);
                    let rhs = out.get(k, l, i, j) + half.clone() * dt.coeff(&[i, j, k, l]);
                    if lhs != rhs {
                        return Err(GeomError::Inconsistency(format!(
                            "cross pairing failed at ({i},{j},{k},{l})"
                        )));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// First Pontrjagin 4-form of a curvature tensor:
/// `P(R) = Σ_{a<b} Ω_{ab} ∧ Ω_{ab}` with `Ω_{ab} = Σ_{i<j} R_{ab,ij} e_{ij}`.
/// The overall constant is calibrated once by the nilmanifold identity
/// `dT = ½ P(R^∇)`; every other trace identity must then hold with no
/// further freedom. `P(sR) = s² P(R)`.
pub fn pontrjagin(r: &CurvatureTensor) -> KForm {
    let n = r.dim();
    let mut out = KForm::zero(n, 4.min(n));
    for a in 1..=n {
        for b in (a + 1)..=n {
            let mut omega = KForm::zero(n, 2);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    omega.add_term(&[i, j], r.get(a, b, i, j));
                }
            }
            if omega.is_zero() {
                continue;
            }
            out = out.add(&omega.wedge(&omega).expect("same frame"));
        }
    }
    out
}
