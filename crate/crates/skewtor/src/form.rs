//! Alternating forms over an oriented orthonormal frame.
//!
//! A `KForm` is a sparse map from strictly increasing index tuples
//! (frame indices `1..=n`) to exact rational coefficients. The frame is
//! orthonormal, the metric is the identity, and the volume form is
//! `e_1 ∧ … ∧ e_n` in frame order. The Hodge star is fixed by
//! `a ∧ *b = (a, b) vol` with `(·,·)` the sum over strictly increasing
//! tuples of products of coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};
use crate::scalar::{self, int, Scalar};

/// Sorts `idx` in place, returning the permutation sign, or `None` when an
/// index repeats.
fn sort_sign(idx: &mut [u8]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(sign)
}

/// Degree-k alternating form on an n-frame.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    dim: u8,
    degree: u8,
    coeffs: BTreeMap<Vec<u8>, Scalar>,
}

impl KForm {
    pub fn zero(dim: u8, degree: u8) -> Self {
        assert!(degree <= dim, "degree {degree} exceeds dimension {dim}");
        KForm { dim, degree, coeffs: BTreeMap::new() }
    }

    /// Single term `c · e_{i1 … ik}`. Indices may be unordered; the
    /// permutation sign is absorbed into the coefficient.
    pub fn monomial(dim: u8, indices: &[u8], c: Scalar) -> Result<Self> {
        for &i in indices {
            if i == 0 || i > dim {
                return Err(GeomError::IndexOutOfRange { index: i, dim });
            }
        }
        let mut form = KForm::zero(dim, indices.len() as u8);
        let mut key = indices.to_vec();
        match sort_sign(&mut key) {
            Some(s) if !c.is_zero() => {
                form.coeffs.insert(key, if s < 0 { -c } else { c });
            }
            _ => {}
        }
        Ok(form)
    }

    /// Basis monomial `e_{i1 … ik}` with coefficient one.
    pub fn basis(dim: u8, indices: &[u8]) -> Self {
        KForm::monomial(dim, indices, int(1)).expect("valid basis indices")
    }

    /// A 0-form with the given constant value.
    pub fn constant(dim: u8, c: Scalar) -> Self {
        let mut form = KForm::zero(dim, 0);
        if !c.is_zero() {
            form.coeffs.insert(Vec::new(), c);
        }
        form
    }

    /// The volume form `e_{1…n}`.
    pub fn volume(dim: u8) -> Self {
        let indices: Vec<u8> = (1..=dim).collect();
        KForm::basis(dim, &indices)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Iterates stored terms in lexicographic tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Scalar)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Signed coefficient accessor; unordered tuples pick up the
    /// permutation sign, repeated indices give zero.
    pub fn coeff(&self, indices: &[u8]) -> Scalar {
        debug_assert_eq!(indices.len(), self.degree as usize);
        let mut key = indices.to_vec();
        match sort_sign(&mut key) {
            None => Scalar::zero(),
            Some(s) => match self.coeffs.get(&key) {
                None => Scalar::zero(),
                Some(c) => {
                    if s < 0 {
                        -c.clone()
                    } else {
                        c.clone()
                    }
                }
            },
        }
    }

    fn insert(&mut self, key: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Adds a signed term; indices may be unordered.
    pub fn add_term(&mut self, indices: &[u8], c: Scalar) {
        debug_assert_eq!(indices.len(), self.degree as usize);
        if c.is_zero() {
            return;
        }
        let mut key = indices.to_vec();
        if let Some(s) = sort_sign(&mut key) {
            self.insert(key, if s < 0 { -c } else { c });
        }
    }

    pub fn add(&self, other: &KForm) -> KForm {
        assert_eq!(self.dim, other.dim, "form addition across frames");
        assert_eq!(self.degree, other.degree, "form addition across degrees");
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &KForm) -> KForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KForm {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.coeffs {
            out.coeffs.insert(k.clone(), v.clone() * c);
        }
        out
    }

    /// Wedge product. Bilinear, associative, graded-commutative.
    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let total = self.degree as usize + other.degree as usize;
        if total > self.dim as usize {
            return Ok(KForm::zero(self.dim, self.dim.min(self.degree)));
        }
        let mut out = KForm::zero(self.dim, total as u8);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let mut key: Vec<u8> = Vec::with_capacity(total);
                key.extend_from_slice(ka);
                key.extend_from_slice(kb);
                if let Some(s) = sort_sign(&mut key) {
                    let c = ca.clone() * cb.clone();
                    out.insert(key, if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Hodge star for the orientation `vol = e_{1…n}`:
    /// `*e_I = sign(I, I^c) e_{I^c}`, so that `a ∧ *b = (a,b) vol`.
    pub fn hodge_star(&self) -> KForm {
        let n = self.dim;
        let mut out = KForm::zero(n, n - self.degree);
        for (k, v) in &self.coeffs {
            let complement: Vec<u8> = (1..=n).filter(|i| !k.contains(i)).collect();
            // sign of the permutation (I, I^c) relative to (1..n): every
            // inversion pairs an element of I with a smaller one of I^c.
            let mut inversions = 0usize;
            for &a in k {
                inversions += complement.iter().filter(|&&b| b < a).count();
            }
            let c = if inversions % 2 == 1 { -v.clone() } else { v.clone() };
            out.coeffs.insert(complement, c);
        }
        out
    }

    /// Pointwise inner product: sum over strictly increasing tuples of
    /// products of coefficients.
    pub fn inner(&self, other: &KForm) -> Result<Scalar> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(GeomError::DegreeMismatch(self.degree, other.degree));
        }
        let mut acc = Scalar::zero();
        for (k, v) in &self.coeffs {
            if let Some(w) = other.coeffs.get(k) {
                acc += v.clone() * w.clone();
            }
        }
        Ok(acc)
    }

    /// Full contraction norm `‖a‖² = k! (a, a)`: the sum over all ordered
    /// k-tuples of squared components.
    pub fn full_norm_sq(&self) -> Scalar {
        let mut factorial = int(1);
        for i in 2..=self.degree as i64 {
            factorial *= int(i);
        }
        factorial * self.inner(self).expect("same form")
    }

    /// Pullback along an endomorphism:
    /// `(A*a)(X₁,…,X_k) = a(AX₁,…,AX_k)`.
    pub fn pullback(&self, endo: &Endomorphism) -> Result<KForm> {
        if self.dim != endo.dim {
            return Err(GeomError::DimensionMismatch(self.dim, endo.dim));
        }
        let mut out = KForm::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            // wedge of the pulled-back frame 1-forms A*e_i (row i of A)
            let mut acc = KForm::constant(self.dim, int(1));
            for &i in k {
                let mut row = KForm::zero(self.dim, 1);
                for j in 1..=self.dim {
                    row.add_term(&[j], endo.entry(i, j));
                }
                acc = acc.wedge(&row)?;
            }
            out = out.add(&acc.scale(v));
        }
        Ok(out)
    }

    /// Reinterprets the form on a larger frame, coefficients unchanged.
    pub fn embed(&self, dim: u8) -> Result<KForm> {
        if dim < self.dim {
            return Err(GeomError::DimensionMismatch(self.dim, dim));
        }
        let mut out = KForm::zero(dim, self.degree);
        out.coeffs = self.coeffs.clone();
        Ok(out)
    }

    /// The scalar `c` with `self = c · other`, if the forms are exactly
    /// proportional. The zero form is proportional to everything (`c = 0`);
    /// `other = 0` with `self ≠ 0` is not proportional.
    pub fn proportionality(&self, other: &KForm) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if other.is_zero() {
            return None;
        }
        let (k0, v0) = other.coeffs.iter().next().expect("nonzero");
        let c = self.coeffs.get(k0)?.clone() / v0.clone();
        if self == &other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }
}

impl fmt::Display for KForm {
    /// Monomial syntax, e.g. `-2*e145 + e136 + e235 - e246`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.coeffs {
            let mag = v.abs();
            let name = if k.is_empty() {
                "1".to_string()
            } else {
                let digits: String = k.iter().map(|i| i.to_string()).collect();
                format!("e{digits}")
            };
            let body = if mag.is_one() && !k.is_empty() {
                name
            } else {
                format!("{}*{}", scalar::display(&mag), name)
            };
            if first {
                if v.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if v.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm[dim {}, deg {}]({})", self.dim, self.degree, self)
    }
}

/// Frame endomorphism; column `j` is the image of the frame vector `e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Endomorphism {
    dim: u8,
    // entry(i, j) = g(e_i, A e_j), stored row-major
    m: Vec<Scalar>,
}

impl Endomorphism {
    pub fn identity(dim: u8) -> Self {
        let mut e = Endomorphism::zeros(dim);
        for i in 1..=dim {
            e.set(i, i, int(1));
        }
        e
    }

    pub fn zeros(dim: u8) -> Self {
        Endomorphism { dim, m: vec![Scalar::zero(); (dim as usize) * (dim as usize)] }
    }

    /// The endomorphism `A` with `F(X, Y) = g(X, AY)` for a 2-form `F`,
    /// i.e. `A e_j = Σ_i F(e_i, e_j) e_i`. For a Kähler form this is the
    /// almost complex structure `J`.
    pub fn from_two_form(f: &KForm) -> Result<Self> {
        if f.degree() != 2 {
            return Err(GeomError::DegreeMismatch(f.degree(), 2));
        }
        let n = f.dim();
        let mut a = Endomorphism::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    a.set(i, j, f.coeff(&[i, j]));
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn entry(&self, i: u8, j: u8) -> Scalar {
        self.m[(i as usize - 1) * self.dim as usize + (j as usize - 1)].clone()
    }

    pub fn set(&mut self, i: u8, j: u8, v: Scalar) {
        self.m[(i as usize - 1) * self.dim as usize + (j as usize - 1)] = v;
    }

    /// Image of the frame vector `e_j` as a coefficient column.
    pub fn apply_basis(&self, j: u8) -> Vec<Scalar> {
        (1..=self.dim).map(|i| self.entry(i, j)).collect()
    }

    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Endomorphism::zeros(self.dim);
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let mut acc = Scalar::zero();
                for k in 1..=self.dim {
                    acc += self.entry(i, k) * other.entry(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Endomorphism {
        Endomorphism { dim: self.dim, m: self.m.iter().map(|v| v.clone() * c).collect() }
    }

    pub fn add(&self, other: &Endomorphism) -> Endomorphism {
        assert_eq!(self.dim, other.dim);
        Endomorphism {
            dim: self.dim,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    /// `A² = -Id`, the almost complex condition.
    pub fn is_almost_complex(&self) -> bool {
        self.compose(self).expect("same dim") == Endomorphism::identity(self.dim).scale(&int(-1))
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endomorphism[dim {}]", self.dim)
    }
}

/// Plain 4-index rational array on an n-frame, 1-based accessors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Array4 {
    dim: u8,
    data: Vec<Scalar>,
}

impl Array4 {
    pub fn zeros(dim: u8) -> Self {
        let n = dim as usize;
        Array4 { dim, data: vec![Scalar::zero(); n * n * n * n] }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    fn idx(&self, i: u8, j: u8, k: u8, l: u8) -> usize {
        let n = self.dim as usize;
        (((i as usize - 1) * n + (j as usize - 1)) * n + (k as usize - 1)) * n + (l as usize - 1)
    }

    pub fn get(&self, i: u8, j: u8, k: u8, l: u8) -> Scalar {
        self.data[self.idx(i, j, k, l)].clone()
    }

    pub fn set(&mut self, i: u8, j: u8, k: u8, l: u8, v: Scalar) {
        let at = self.idx(i, j, k, l);
        self.data[at] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

/// Pairwise index contraction of two 3-forms on an orthonormal frame:
/// `out[i][j][k][l] = Σ_m S_{ijm} U_{klm}`. The result is antisymmetric
/// in `(i,j)` and in `(k,l)`.
pub fn contract_pair(s: &KForm, u: &KForm) -> Result<Array4> {
    if s.dim() != u.dim() {
        return Err(GeomError::DimensionMismatch(s.dim(), u.dim()));
    }
    if s.degree() != 3 || u.degree() != 3 {
        return Err(GeomError::DegreeMismatch(s.degree(), u.degree()));
    }
    let n = s.dim();
    let mut out = Array4::zeros(n);
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
                        if m == i || m == j {
                            continue;
                        }
                        let a = s.coeff(&[i, j, m]);
                        if a.is_zero() {
                            continue;
                        }
                        acc += a * u.coeff(&[k, l, m]);
                    }
                    out.set(i, j, k, l, acc);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn canonical_f() -> KForm {
        // F = -e12 - e34 - e56
        let mut f = KForm::zero(6, 2);
        f.add_term(&[1, 2], int(-1));
        f.add_term(&[3, 4], int(-1));
        f.add_term(&[5, 6], int(-1));
        f
    }

    fn canonical_psi_plus() -> KForm {
        let mut p = KForm::zero(6, 3);
        p.add_term(&[1, 3, 5], int(-1));
        p.add_term(&[2, 3, 6], int(1));
        p.add_term(&[1, 4, 6], int(1));
        p.add_term(&[2, 4, 5], int(1));
        p
    }

    fn canonical_psi_minus() -> KForm {
        let mut p = KForm::zero(6, 3);
        p.add_term(&[1, 3, 6], int(-1));
        p.add_term(&[1, 4, 5], int(-1));
        p.add_term(&[2, 3, 5], int(-1));
        p.add_term(&[2, 4, 6], int(1));
        p
    }

    #[test]
    fn wedge_basis_monomials() {
        let e1 = KForm::basis(6, &[1]);
        let e2 = KForm::basis(6, &[2]);
        assert_eq!(e1.wedge(&e2).unwrap(), KForm::basis(6, &[1, 2]));
        // graded commutativity for 1-forms
        assert_eq!(e2.wedge(&e1).unwrap(), KForm::basis(6, &[1, 2]).neg());
        // wedge with itself vanishes
        assert!(e1.wedge(&e1).unwrap().is_zero());
    }

    #[test]
    fn wedge_dimension_mismatch_is_an_error() {
        let a = KForm::basis(6, &[1]);
        let b = KForm::basis(7, &[2]);
        assert!(matches!(a.wedge(&b), Err(GeomError::DimensionMismatch(6, 7))));
    }

    #[test]
    fn psi_plus_wedge_f_vanishes() {
        let z = canonical_psi_plus().wedge(&canonical_f()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn f_cubed() {
        let f = canonical_f();
        let fff = f.wedge(&f).unwrap().wedge(&f).unwrap();
        assert_eq!(fff, KForm::volume(6).scale(&int(-6)));
    }

    #[test]
    fn hodge_star_values() {
        // *(e236) = -e145 in dimension 6
        let s = KForm::basis(6, &[2, 3, 6]).hodge_star();
        assert_eq!(s, KForm::basis(6, &[1, 4, 5]).neg());
        // *F = -(e3456 + e1256 + e1234)
        let sf = canonical_f().hodge_star();
        let mut expect = KForm::zero(6, 4);
        expect.add_term(&[3, 4, 5, 6], int(-1));
        expect.add_term(&[1, 2, 5, 6], int(-1));
        expect.add_term(&[1, 2, 3, 4], int(-1));
        assert_eq!(sf, expect);
    }

    #[test]
    fn inner_values() {
        let pm = canonical_psi_minus();
        assert_eq!(pm.inner(&pm).unwrap(), int(4));
        let f = canonical_f();
        assert_eq!(f.inner(&f).unwrap(), int(3));
        assert_eq!(pm.neg().inner(&pm).unwrap(), int(-4));
        assert!(matches!(
            f.inner(&pm),
            Err(GeomError::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn pullback_by_identity_and_j() {
        let f = canonical_f();
        let id = Endomorphism::identity(6);
        assert_eq!(f.pullback(&id).unwrap(), f);
        let j = Endomorphism::from_two_form(&f).unwrap();
        assert!(j.is_almost_complex());
        // the Kähler form is J-invariant
        assert_eq!(f.pullback(&j).unwrap(), f);
        // psi_plus pulls back to psi_minus, psi_minus to -psi_plus
        assert_eq!(canonical_psi_plus().pullback(&j).unwrap(), canonical_psi_minus());
        assert_eq!(canonical_psi_minus().pullback(&j).unwrap(), canonical_psi_plus().neg());
    }

    #[test]
    fn contract_pair_values() {
        let pm = canonical_psi_minus();
        let z = KForm::zero(6, 3);
        assert!(contract_pair(&z, &pm).unwrap().is_zero());
        let c = contract_pair(&pm, &pm).unwrap();
        // single surviving term at (1,3,2,4)
        assert_eq!(c.get(1, 3, 2, 4), int(-1));
        // antisymmetry in both pairs
        assert_eq!(c.get(3, 1, 2, 4), int(1));
        assert_eq!(c.get(1, 3, 4, 2), int(1));
    }

    #[test]
    fn full_norm_of_three_form() {
        let pm = canonical_psi_minus();
        assert_eq!(pm.full_norm_sq(), int(24));
        let theta = KForm::basis(6, &[6]).scale(&int(2));
        assert_eq!(theta.full_norm_sq(), int(4));
    }

    #[test]
    fn display_monomial_syntax() {
        let mut t = KForm::zero(6, 3);
        t.add_term(&[1, 4, 5], int(-2));
        t.add_term(&[1, 3, 6], int(1));
        t.add_term(&[2, 3, 5], int(1));
        t.add_term(&[2, 4, 6], int(-1));
        // terms print in lexicographic tuple order
        assert_eq!(t.to_string(), "e136 - 2*e145 + e235 - e246");
        assert_eq!(KForm::zero(6, 2).to_string(), "0");
        assert_eq!(KForm::basis(5, &[2]).scale(&rat(1, 3)).to_string(), "1/3*e2");
    }

    #[test]
    fn proportionality_detection() {
        let f = canonical_f();
        assert_eq!(f.scale(&rat(3, 2)).proportionality(&f), Some(rat(3, 2)));
        assert_eq!(KForm::zero(6, 2).proportionality(&f), Some(int(0)));
        assert_eq!(f.proportionality(&KForm::zero(6, 2)), None);
        let mut g = f.clone();
        g.add_term(&[1, 3], int(1));
        assert_eq!(g.proportionality(&f), None);
    }
}
