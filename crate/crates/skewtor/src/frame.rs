//! Manifold backends described by an orthonormal frame.
//!
//! A `LieFrame` stores the constant-coefficient differentials of a
//! left-invariant coframe, so the exterior derivative is computed as an
//! antiderivation. A `ModelSpace` stores closed-form curvature and torsion
//! together with the exterior derivatives of named structure forms; it
//! never differentiates anything it was not told about.

use num_traits::Zero;

use crate::connection::CurvatureTensor;
use crate::error::{GeomError, Result};
use crate::form::KForm;
use crate::scalar::Scalar;

/// Left-invariant frame: `differentials[k-1] = d e_k`, each a constant 2-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieFrame {
    dim: u8,
    differentials: Vec<KForm>,
}

impl LieFrame {
    /// Builds a frame and validates `d∘d = 0` on every frame 1-form
    /// (the Jacobi identity for the induced brackets).
    pub fn new(dim: u8, differentials: Vec<KForm>) -> Result<Self> {
        if differentials.len() != dim as usize {
            return Err(GeomError::Inconsistency(format!(
                "expected {dim} differentials, got {}",
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.dim() != dim {
                return Err(GeomError::DimensionMismatch(d.dim(), dim));
            }
            if d.degree() != 2 && !d.is_zero() {
                return Err(GeomError::DegreeMismatch(d.degree(), 2));
            }
            let _ = k;
        }
        let frame = LieFrame { dim, differentials };
        for k in 1..=dim {
            let dd = frame.exterior_derivative(&frame.differentials[k as usize - 1])?;
            if !dd.is_zero() {
                let term = dd
                    .terms()
                    .next()
                    .map(|(idx, _)| {
                        let digits: String = idx.iter().map(|i| i.to_string()).collect();
                        format!("e{digits}")
                    })
                    .unwrap_or_default();
                return Err(GeomError::JacobiFailure { index: k, term });
            }
        }
        Ok(frame)
    }

    /// The abelian frame: every differential vanishes.
    pub fn flat(dim: u8) -> Self {
        LieFrame {
            dim,
            differentials: (0..dim).map(|_| KForm::zero(dim, 2)).collect(),
        }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn differential_of(&self, k: u8) -> &KForm {
        &self.differentials[k as usize - 1]
    }

    /// Exterior derivative extended as an antiderivation from the
    /// differential table.
    pub fn exterior_derivative(&self, a: &KForm) -> Result<KForm> {
        if a.dim() != self.dim {
            return Err(GeomError::DimensionMismatch(a.dim(), self.dim));
        }
        if a.degree() == 0 {
            // left-invariant scalars are constant
            return Ok(KForm::zero(self.dim, 1.min(self.dim)));
        }
        let mut out = KForm::zero(self.dim, (a.degree() + 1).min(self.dim));
        if a.degree() + 1 > self.dim {
            return Ok(out);
        }
        for (idx, c) in a.terms() {
            for (p, &ip) in idx.iter().enumerate() {
                let d_ip = &self.differentials[ip as usize - 1];
                if d_ip.is_zero() {
                    continue;
                }
                let before = KForm::basis(self.dim, &idx[..p]);
                let after = KForm::basis(self.dim, &idx[p + 1..]);
                let piece = before.wedge(d_ip)?.wedge(&after)?;
                let sign = if p % 2 == 1 { -c.clone() } else { c.clone() };
                out = out.add(&piece.scale(&sign));
            }
        }
        Ok(out)
    }

    /// Codifferential `δ = (-1)^{n(k+1)+1} * d *`, the formal adjoint of `d`.
    pub fn codifferential(&self, a: &KForm) -> Result<KForm> {
        if a.degree() == 0 {
            return Ok(KForm::zero(self.dim, 0));
        }
        let sd = self.exterior_derivative(&a.hodge_star())?;
        let k = a.degree() as u32;
        let n = self.dim as u32;
        let flip = (n * (k + 1) + 1) % 2 == 1;
        let star = sd.hodge_star();
        Ok(if flip { star.neg() } else { star })
    }

    /// Structure constants `c[i][j][k] = g([e_i, e_j], e_k) = -(d e_k)(e_i, e_j)`.
    pub fn brackets(&self) -> Brackets {
        let n = self.dim;
        let mut c = vec![Scalar::zero(); (n as usize).pow(3)];
        for k in 1..=n {
            let de = &self.differentials[k as usize - 1];
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let v = -de.coeff(&[i, j]);
                    if !v.is_zero() {
                        c[Brackets::index(n, i, j, k)] = v;
                    }
                }
            }
        }
        Brackets { dim: n, c }
    }
}

/// Structure constants of a Lie frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Brackets {
    dim: u8,
    c: Vec<Scalar>,
}

impl Brackets {
    fn index(n: u8, i: u8, j: u8, k: u8) -> usize {
        (((i as usize - 1) * n as usize) + (j as usize - 1)) * n as usize + (k as usize - 1)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// `g([e_i, e_j], e_k)`.
    pub fn get(&self, i: u8, j: u8, k: u8) -> Scalar {
        self.c[Brackets::index(self.dim, i, j, k)].clone()
    }

    /// `[X, Y]` for coefficient vectors, as a coefficient vector.
    pub fn bracket_vectors(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim as usize;
        let mut out = vec![Scalar::zero(); n];
        for i in 1..=self.dim {
            let xi = &x[i as usize - 1];
            if xi.is_zero() {
                continue;
            }
            for j in 1..=self.dim {
                let yj = &y[j as usize - 1];
                if yj.is_zero() {
                    continue;
                }
                for k in 1..=self.dim {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out[k as usize - 1] += xi.clone() * yj.clone() * c;
                    }
                }
            }
        }
        out
    }
}

/// Closed-form backend: curvature and torsion are given, and the exterior
/// derivative is a lookup table over declared structure forms.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    dim: u8,
    pub curvature: CurvatureTensor,
    pub torsion: KForm,
    /// Pairs `(form, d form)`; `d` of an arbitrary input is resolved by
    /// writing it as an exact linear combination of the stored forms.
    d_data: Vec<(KForm, KForm)>,
}

impl ModelSpace {
    pub fn new(dim: u8, curvature: CurvatureTensor, torsion: KForm) -> Self {
        ModelSpace { dim, curvature, torsion, d_data: Vec::new() }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn declare_d(&mut self, form: KForm, d: KForm) {
        debug_assert_eq!(form.dim(), self.dim);
        debug_assert_eq!(d.dim(), self.dim);
        self.d_data.push((form, d));
    }

    /// `d` of a declared form, a scalar multiple of one, or an exact
    /// linear combination of declared forms of the same degree.
    pub fn d(&self, a: &KForm) -> Result<KForm> {
        if a.is_zero() || a.degree() == 0 {
            return Ok(KForm::zero(self.dim, (a.degree() + 1).min(self.dim)));
        }
        let candidates: Vec<&(KForm, KForm)> = self
            .d_data
            .iter()
            .filter(|(g, _)| g.degree() == a.degree() && !g.is_zero())
            .collect();
        let gens: Vec<KForm> = candidates.iter().map(|(g, _)| g.clone()).collect();
        if let Some(coeffs) = express_in_span(a, &gens) {
            let mut out = KForm::zero(self.dim, (a.degree() + 1).min(self.dim));
            for (c, (_, dg)) in coeffs.iter().zip(&candidates) {
                if !c.is_zero() {
                    out = out.add(&dg.scale(c));
                }
            }
            return Ok(out);
        }
        Err(GeomError::MissingDifferential { what: format!("{a}") })
    }
}

/// Writes `target = Σ c_i g_i` exactly, if possible, by Gaussian
/// elimination over the rationals on the monomial coefficient vectors.
pub fn express_in_span(target: &KForm, generators: &[KForm]) -> Option<Vec<Scalar>> {
    use std::collections::BTreeMap;
    let mut monomials: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for g in generators {
        for (idx, _) in g.terms() {
            let next = monomials.len();
            monomials.entry(idx.to_vec()).or_insert(next);
        }
    }
    for (idx, _) in target.terms() {
        // a target monomial outside the span cannot be matched
        if !monomials.contains_key(idx) {
            return None;
        }
    }
    let rows = monomials.len();
    let cols = generators.len();
    if cols == 0 {
        return if target.is_zero() { Some(Vec::new()) } else { None };
    }
    // augmented matrix [A | b]
    let mut m = vec![vec![Scalar::zero(); cols + 1]; rows];
    for (col, g) in generators.iter().enumerate() {
        for (idx, v) in g.terms() {
            m[monomials[idx]][col] = v.clone();
        }
    }
    for (idx, v) in target.terms() {
        m[monomials[idx]][cols] = v.clone();
    }
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() / inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (cell, pv) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *cell = cell.clone() - f.clone() * pv.clone();
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent rows mean the target is outside the span
    for row in m.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    for row in m.iter().take(r) {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Scalar::zero(); cols];
    for c in 0..cols {
        if pivot_of_col[c] != usize::MAX {
            sol[c] = m[pivot_of_col[c]][cols].clone();
        }
    }
    Some(sol)
}

/// A frame-described manifold backend.
#[derive(Clone, Debug)]
pub enum FrameSpace {
    Lie(LieFrame),
    Model(ModelSpace),
}

impl FrameSpace {
    pub fn dim(&self) -> u8 {
        match self {
            FrameSpace::Lie(f) => f.dim(),
            FrameSpace::Model(m) => m.dim(),
        }
    }

    /// Exterior derivative: computed on a Lie frame, looked up on a model.
    pub fn d(&self, a: &KForm) -> Result<KForm> {
        match self {
            FrameSpace::Lie(f) => f.exterior_derivative(a),
            FrameSpace::Model(m) => m.d(a),
        }
    }

    /// Codifferential via `δ = ±*d*`; on a model this needs `d` of the
    /// star of the input to be declared.
    pub fn codifferential(&self, a: &KForm) -> Result<KForm> {
        match self {
            FrameSpace::Lie(f) => f.codifferential(a),
            FrameSpace::Model(_) => {
                if a.degree() == 0 {
                    return Ok(KForm::zero(self.dim(), 0));
                }
                let sd = self.d(&a.hodge_star())?;
                let k = a.degree() as u32;
                let n = self.dim() as u32;
                let flip = (n * (k + 1) + 1) % 2 == 1;
                let star = sd.hodge_star();
                Ok(if flip { star.neg() } else { star })
            }
        }
    }

    pub fn as_lie(&self) -> Option<&LieFrame> {
        match self {
            FrameSpace::Lie(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_model(&self) -> Option<&ModelSpace> {
        match self {
            FrameSpace::Model(m) => Some(m),
            _ => None,
        }
    }
}

/// Product with a line: dimension `n+1`, the new frame 1-form is closed,
/// curvature and torsion extend by zero on the new direction.
pub fn product_with_line(space: &FrameSpace) -> FrameSpace {
    let n = space.dim() + 1;
    match space {
        FrameSpace::Lie(f) => {
            let mut diffs: Vec<KForm> = (1..n)
                .map(|k| f.differential_of(k).embed(n).expect("larger frame"))
                .collect();
            diffs.push(KForm::zero(n, 2));
            FrameSpace::Lie(LieFrame::new(n, diffs).expect("product preserves Jacobi"))
        }
        FrameSpace::Model(m) => {
            let curvature = m.curvature.embed(n);
            let torsion = m.torsion.embed(n).expect("larger frame");
            let mut out = ModelSpace::new(n, curvature, torsion);
            for (g, dg) in &m.d_data {
                out.declare_d(g.embed(n).expect("larger frame"), dg.embed(n).expect("larger frame"));
            }
            // the new coordinate 1-form is closed
            out.declare_d(KForm::basis(n, &[n]), KForm::zero(n, 2));
            FrameSpace::Model(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::nil6_frame;
    use crate::scalar::int;

    #[test]
    fn nil6_differentials_and_brackets() {
        let f = nil6_frame();
        assert!(f.differential_of(2).is_zero());
        assert!(f.differential_of(3).is_zero());
        assert!(f.differential_of(6).is_zero());
        assert_eq!(*f.differential_of(1), KForm::basis(6, &[3, 6]));
        let b = f.brackets();
        assert_eq!(b.get(3, 6, 1), int(-1));
        assert_eq!(b.get(6, 3, 1), int(1));
        assert_eq!(b.get(2, 3, 5), int(-1));
        assert_eq!(b.get(2, 6, 4), int(-1));
        assert_eq!(b.get(1, 2, 3), int(0));
    }

    #[test]
    fn abelian_frame_brackets_vanish() {
        let f = LieFrame::flat(4);
        let b = f.brackets();
        for i in 1..=4 {
            for j in 1..=4 {
                for k in 1..=4 {
                    assert!(b.get(i, j, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn d_squared_zero_on_random_monomials() {
        let f = nil6_frame();
        for idx in [&[1u8][..], &[4], &[5], &[1, 2], &[1, 4], &[4, 5], &[1, 4, 5], &[2, 3, 6]] {
            let a = KForm::basis(6, idx);
            let dd = f.exterior_derivative(&f.exterior_derivative(&a).unwrap()).unwrap();
            assert!(dd.is_zero(), "d²(e{idx:?}) = {dd}");
        }
    }

    #[test]
    fn d_of_volume_is_zero() {
        let f = nil6_frame();
        assert!(f.exterior_derivative(&KForm::volume(6)).unwrap().is_zero());
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        // d e1 = e1^e2, d e2 = e1^e3 fails d² = 0
        let diffs = vec![
            KForm::basis(3, &[1, 2]),
            KForm::basis(3, &[1, 3]),
            KForm::zero(3, 2),
        ];
        let err = LieFrame::new(3, diffs).unwrap_err();
        assert!(matches!(err, GeomError::JacobiFailure { index: 2, .. }), "{err:?}");
    }

    #[test]
    fn heisenberg_frame_is_valid() {
        let diffs = vec![KForm::basis(3, &[2, 3]), KForm::zero(3, 2), KForm::zero(3, 2)];
        assert!(LieFrame::new(3, diffs).is_ok());
    }

    #[test]
    fn codifferential_on_nil6() {
        let f = nil6_frame();
        // e6 is closed and coclosed
        assert!(f.codifferential(&KForm::basis(6, &[6])).unwrap().is_zero());
        // constants are coclosed
        assert!(f.codifferential(&KForm::constant(6, int(3))).unwrap().is_zero());
        // δ∘δ = 0 on a 3-form
        let t = KForm::basis(6, &[1, 4, 5]);
        let dd = f.codifferential(&f.codifferential(&t).unwrap()).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn model_space_d_lookup_handles_combinations() {
        use crate::connection::CurvatureTensor;
        let mut m = ModelSpace::new(6, CurvatureTensor::zeros(6), KForm::zero(6, 3));
        let f5 = KForm::basis(6, &[1, 2]).add(&KForm::basis(6, &[3, 4]));
        let e56 = KForm::basis(6, &[5, 6]);
        let d56 = f5.wedge(&KForm::basis(6, &[6])).unwrap().scale(&int(2));
        m.declare_d(f5.clone(), KForm::zero(6, 3));
        m.declare_d(e56.clone(), d56.clone());
        // F6 = F5 + e56 resolves through the linear solve
        let f6 = f5.add(&e56);
        assert_eq!(m.d(&f6).unwrap(), d56);
        // scalar multiples resolve too
        assert_eq!(m.d(&f5.scale(&int(-3))).unwrap(), KForm::zero(6, 3));
        // unknown forms are refused
        assert!(matches!(
            m.d(&KForm::basis(6, &[1, 3])),
            Err(GeomError::MissingDifferential { .. })
        ));
    }

    #[test]
    fn product_with_line_adds_closed_direction() {
        let f = FrameSpace::Lie(nil6_frame());
        let p = product_with_line(&f);
        assert_eq!(p.dim(), 7);
        let lie = p.as_lie().unwrap();
        assert!(lie.differential_of(7).is_zero());
        // iterate once more for dimension 8
        let pp = product_with_line(&p);
        assert_eq!(pp.dim(), 8);
        assert!(pp.as_lie().unwrap().differential_of(8).is_zero());
    }
}
