//! Alternating forms on the oriented space R⁷ with basis e₁..e₇.
//!
//! A k-form is stored densely on strictly increasing multi-indices in
//! lexicographic order. Indices in the public API are 1-based, matching the
//! usual e¹²⁷-style notation.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use thiserror::Error;

use crate::linalg::Mat;
use crate::scalars::{Scalar, Tolerances};

pub const DIM: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("wedge of degrees {0} and {1} exceeds 7")]
    DegreeOverflow(usize, usize),
    #[error("star on span(e1..e6) applied to a form involving e7")]
    NotOnHyperplane,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a {expected}-form, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
}

struct Tables {
    /// masks[k] lists the bitmasks of increasing k-tuples in lexicographic order
    masks: Vec<Vec<u8>>,
    /// position of a mask inside masks[popcount]
    position: [usize; 128],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut masks: Vec<Vec<u8>> = vec![Vec::new(); DIM + 1];
        fn rec(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<u8>) {
            if cur.len() == k {
                out.push(cur.iter().fold(0u8, |m, &i| m | (1 << i)));
                return;
            }
            for i in start..DIM {
                cur.push(i);
                rec(i + 1, k, cur, out);
                cur.pop();
            }
        }
        for (k, list) in masks.iter_mut().enumerate() {
            rec(0, k, &mut Vec::new(), list);
        }
        let mut position = [0usize; 128];
        for list in &masks {
            for (p, &m) in list.iter().enumerate() {
                position[m as usize] = p;
            }
        }
        Tables { masks, position }
    })
}

/// Number of increasing multi-indices of length k.
pub fn form_dim(k: usize) -> usize {
    tables().masks[k].len()
}

fn mask_of(indices: &[usize]) -> u8 {
    indices.iter().fold(0u8, |m, &i| m | (1 << (i - 1)))
}

fn indices_of(mask: u8) -> Vec<usize> {
    (0..DIM).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Sign of the shuffle placing the elements of `a` before those of `b`
/// (disjoint masks): (-1)^{#pairs i∈a, j∈b with i>j}.
fn shuffle_sign(a: u8, b: u8) -> bool {
    let mut inversions = 0;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

/// Sorts a list of distinct 0-based indices; returns the mask and whether the
/// permutation was odd, or `None` on repetition.
fn sort_with_sign(list: &[usize]) -> Option<(u8, bool)> {
    let mut mask = 0u8;
    let mut inversions = 0;
    for (p, &i) in list.iter().enumerate() {
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
        inversions += list[..p].iter().filter(|&&j| j > i).count();
    }
    Some((mask, inversions % 2 == 1))
}

/// Alternating k-form on R⁷.
#[derive(Clone, PartialEq)]
pub struct KForm<S> {
    degree: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM);
        KForm {
            degree,
            coeffs: vec![S::zero(); form_dim(degree)],
        }
    }

    /// The basis form e^{i₁…i_k} for increasing or arbitrary distinct
    /// 1-based indices (a permutation contributes its sign).
    pub fn basis(indices: &[usize]) -> Self {
        let mut f = Self::zero(indices.len());
        let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        let (mask, odd) = sort_with_sign(&zero_based).expect("repeated index in basis form");
        f.coeffs[tables().position[mask as usize]] = if odd { -S::one() } else { S::one() };
        f
    }

    /// Sum of `coeff * e^{indices}` terms, all of the same degree.
    pub fn from_terms(degree: usize, terms: &[(S, &[usize])]) -> Self {
        let mut f = Self::zero(degree);
        for (c, idx) in terms {
            assert_eq!(idx.len(), degree, "term degree mismatch");
            f = f + Self::basis(idx).scale(c);
        }
        f
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), form_dim(degree));
        KForm { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Iterates over (1-based increasing indices, coefficient) for nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &S)> {
        tables().masks[self.degree]
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_exactly_zero())
            .map(|(&m, c)| (indices_of(m), c))
    }

    /// Coefficient of e^{indices} (increasing indices).
    pub fn component(&self, indices: &[usize]) -> S {
        assert_eq!(indices.len(), self.degree);
        let mask = mask_of(indices);
        let dense = self.coeffs[tables().position[mask as usize]].clone();
        let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        match sort_with_sign(&zero_based) {
            Some((_, true)) => -dense,
            Some((_, false)) => dense,
            None => S::zero(),
        }
    }

    fn entries(&self) -> impl Iterator<Item = (u8, &S)> {
        tables().masks[self.degree]
            .iter()
            .copied()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_exactly_zero())
    }

    fn add_at(&mut self, mask: u8, value: S) {
        let p = tables().position[mask as usize];
        self.coeffs[p] = self.coeffs[p].clone() + value;
    }

    pub fn scale(&self, k: &S) -> Self {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> KForm<T> {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> KForm<f64> {
        self.map(|c| c.to_f64())
    }

    pub fn is_zero_tol(&self, tol: &Tolerances) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_tol(tol))
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exactly_zero())
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        self.degree == other.degree && (self.clone() - other.clone()).is_zero_tol(tol)
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Inner product induced by the standard metric (the basis forms are
    /// orthonormal).
    pub fn dot(&self, other: &Self) -> S {
        assert_eq!(self.degree, other.degree);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    /// True when no term involves e⁷.
    pub fn lies_in_hyperplane(&self) -> bool {
        self.entries().all(|(m, _)| m & (1 << 6) == 0)
    }

    /// Splits γ = α + β∧e⁷ with α, β free of e⁷.
    pub fn split_e7(&self) -> (KForm<S>, KForm<S>) {
        let mut alpha = Self::zero(self.degree);
        let mut beta = if self.degree == 0 {
            KForm::zero(0)
        } else {
            Self::zero(self.degree - 1)
        };
        for (m, c) in self.entries() {
            if m & (1 << 6) == 0 {
                alpha.add_at(m, c.clone());
            } else {
                // e^{I} with 7 last: e^{I'} ∧ e^7 with no sign change
                beta.add_at(m & !(1 << 6), c.clone());
            }
        }
        (alpha, beta)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &KForm<S>) -> Result<KForm<S>, FormError> {
        let k = self.degree + other.degree;
        if k > DIM {
            return Err(FormError::DegreeOverflow(self.degree, other.degree));
        }
        let mut out = Self::zero(k);
        for (a, ca) in self.entries() {
            for (b, cb) in other.entries() {
                if a & b != 0 {
                    continue;
                }
                let v = ca.clone() * cb.clone();
                out.add_at(a | b, if shuffle_sign(a, b) { -v } else { v });
            }
        }
        Ok(out)
    }

    /// Wedge that panics on degree overflow, for internal use where degrees
    /// are known.
    pub fn w(&self, other: &KForm<S>) -> KForm<S> {
        self.wedge(other).expect("degree overflow")
    }

    /// Contraction of the first slot with the vector `x` (components x₁..x₇).
    pub fn interior(&self, x: &[S]) -> KForm<S> {
        assert_eq!(x.len(), DIM);
        if self.degree == 0 {
            return KForm::zero(0);
        }
        let mut out = Self::zero(self.degree - 1);
        for (m, c) in self.entries() {
            for (i, xi) in x.iter().enumerate() {
                if m & (1 << i) == 0 || xi.is_exactly_zero() {
                    continue;
                }
                let before = (m & ((1u8 << i) - 1)).count_ones();
                let v = c.clone() * xi.clone();
                out.add_at(m & !(1 << i), if before % 2 == 1 { -v } else { v });
            }
        }
        out
    }

    /// Contraction with the basis vector e_i.
    pub fn interior_basis(&self, i: usize) -> KForm<S> {
        let mut x = vec![S::zero(); DIM];
        x[i - 1] = S::one();
        self.interior(&x)
    }

    /// Hodge star for the standard metric and orientation e¹…⁷.
    pub fn star7(&self) -> KForm<S> {
        let full: u8 = 0x7f;
        let mut out = Self::zero(DIM - self.degree);
        for (m, c) in self.entries() {
            let comp = full & !m;
            out.add_at(comp, if shuffle_sign(m, comp) { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Hodge star on span(e₁..e₆) with orientation e¹…⁶.
    pub fn star6(&self) -> Result<KForm<S>, FormError> {
        if !self.lies_in_hyperplane() {
            return Err(FormError::NotOnHyperplane);
        }
        let full: u8 = 0x3f;
        let mut out = Self::zero(6 - self.degree);
        for (m, c) in self.entries() {
            let comp = full & !m;
            out.add_at(comp, if shuffle_sign(m, comp) { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// θ(B)γ = -(γ(B·,…) + … + γ(…,B·)) for a 7×7 matrix B.
    pub fn theta_mat(&self, b: &Mat<S>) -> KForm<S> {
        assert!(b.rows() == DIM && b.cols() == DIM);
        let mut out = Self::zero(self.degree);
        for (m, c) in self.entries() {
            let idx: Vec<usize> = (0..DIM).filter(|i| m & (1 << i) != 0).collect();
            for r in 0..idx.len() {
                let j = idx[r];
                // θ(B)e^j = -Σ_i B_{ji} e^i
                for i in 0..DIM {
                    let bji = &b[(j, i)];
                    if bji.is_exactly_zero() {
                        continue;
                    }
                    let mut replaced = idx.clone();
                    replaced[r] = i;
                    if let Some((mask, odd)) = sort_with_sign(&replaced) {
                        let v = -(c.clone() * bji.clone());
                        out.add_at(mask, if odd { -v } else { v });
                    }
                }
            }
        }
        out
    }

    /// θ(B)γ for an endomorphism of a coordinate subspace (zero-extended).
    pub fn theta(&self, b: &Endo<S>) -> KForm<S> {
        self.theta_mat(&b.embed())
    }

    /// Pullback (M^*γ)(v₁,…) = γ(Mv₁,…) along a 7×7 matrix.
    pub fn pullback(&self, m: &Mat<S>) -> KForm<S> {
        let images: Vec<KForm<S>> = (0..DIM)
            .map(|j| {
                let coeffs = (0..DIM).map(|i| m[(j, i)].clone()).collect();
                KForm::from_coeffs(1, coeffs)
            })
            .collect();
        let mut out = Self::zero(self.degree);
        for (mask, c) in self.entries() {
            let mut term = KForm::zero(0);
            term.coeffs[0] = c.clone();
            for j in 0..DIM {
                if mask & (1 << j) != 0 {
                    term = term.w(&images[j]);
                }
            }
            out = out + term;
        }
        out
    }

    /// Natural action h·γ = γ(h⁻¹·,…,h⁻¹·) of an invertible 7×7 matrix.
    pub fn gl7_action(&self, h: &Mat<S>, tol: &Tolerances) -> Result<KForm<S>, FormError> {
        let inv = h.inverse(tol).ok_or(FormError::Singular)?;
        Ok(self.pullback(&inv))
    }
}

impl<S: Scalar> Add for KForm<S> {
    type Output = KForm<S>;
    fn add(self, rhs: KForm<S>) -> KForm<S> {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<S: Scalar> Sub for KForm<S> {
    type Output = KForm<S>;
    fn sub(self, rhs: KForm<S>) -> KForm<S> {
        assert_eq!(self.degree, rhs.degree, "subtracting forms of different degree");
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<S: Scalar> Neg for KForm<S> {
    type Output = KForm<S>;
    fn neg(self) -> KForm<S> {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name: String = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "({c})e^{name}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{}>[{}]", self.degree, self)
    }
}

/// Square matrix acting on the coordinate subspace spanned by `indices`
/// (1-based, in the given order). Zero-extension embeds it into gl(7).
#[derive(Clone, PartialEq)]
pub struct Endo<S> {
    indices: Vec<usize>,
    matrix: Mat<S>,
}

impl<S: Scalar> fmt::Debug for Endo<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo on {:?}: {:?}", self.indices, self.matrix)
    }
}

/// Basis order of 𝔤₁ used for all 4×4 blocks.
pub const G1: [usize; 4] = [1, 2, 5, 6];
/// Basis order of 𝔥₁.
pub const H1: [usize; 2] = [3, 4];
/// Basis order of 𝔤₀.
pub const G0: [usize; 3] = [7, 3, 4];
/// Basis order of 𝔥.
pub const H: [usize; 6] = [1, 2, 3, 4, 5, 6];
pub const FULL: [usize; 7] = [1, 2, 3, 4, 5, 6, 7];
/// Basis order (e₇,e₃,e₄,e₁,e₂,e₅,e₆) adapted to 𝔤 = 𝔤₀ ⊕ 𝔤₁.
pub const SPLIT: [usize; 7] = [7, 3, 4, 1, 2, 5, 6];

impl<S: Scalar> Endo<S> {
    pub fn new(indices: &[usize], matrix: Mat<S>) -> Self {
        assert!(matrix.is_square() && matrix.rows() == indices.len(), "block size mismatch");
        Endo {
            indices: indices.to_vec(),
            matrix,
        }
    }

    pub fn on_g1(matrix: Mat<S>) -> Self {
        Self::new(&G1, matrix)
    }

    pub fn on_h1(matrix: Mat<S>) -> Self {
        Self::new(&H1, matrix)
    }

    pub fn full(matrix: Mat<S>) -> Self {
        Self::new(&FULL, matrix)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.matrix
    }

    pub fn transpose(&self) -> Self {
        Endo {
            indices: self.indices.clone(),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn trace(&self) -> S {
        self.matrix.trace()
    }

    /// Zero-extension to a 7×7 matrix in the standard basis.
    pub fn embed(&self) -> Mat<S> {
        let mut out = Mat::zeros(DIM, DIM);
        for (a, &i) in self.indices.iter().enumerate() {
            for (b, &j) in self.indices.iter().enumerate() {
                out[(i - 1, j - 1)] = self.matrix[(a, b)].clone();
            }
        }
        out
    }

    /// Restricts a 7×7 matrix to the block on `indices`.
    pub fn restrict(full: &Mat<S>, indices: &[usize]) -> Self {
        let m = Mat::from_fn(indices.len(), indices.len(), |a, b| full[(indices[a] - 1, indices[b] - 1)].clone());
        Self::new(indices, m)
    }
}

/// Named forms and constants in the standard basis.
pub mod fixtures {
    use super::KForm;
    use crate::scalars::Scalar;

    fn terms<S: Scalar>(degree: usize, list: &[(i64, &[usize])]) -> KForm<S> {
        let mut f = KForm::zero(degree);
        for (c, idx) in list {
            f = f + KForm::basis(idx).scale(&S::from_int(*c));
        }
        f
    }

    /// φ = e¹²⁷ + e³⁴⁷ + e⁵⁶⁷ + e¹³⁵ − e¹⁴⁶ − e²³⁶ − e²⁴⁵
    pub fn phi<S: Scalar>() -> KForm<S> {
        terms(
            3,
            &[
                (1, &[1, 2, 7]),
                (1, &[3, 4, 7]),
                (1, &[5, 6, 7]),
                (1, &[1, 3, 5]),
                (-1, &[1, 4, 6]),
                (-1, &[2, 3, 6]),
                (-1, &[2, 4, 5]),
            ],
        )
    }

    /// ∗φ = e³⁴⁵⁶ + e¹²⁵⁶ + e¹²³⁴ − e²⁴⁶⁷ + e²³⁵⁷ + e¹⁴⁵⁷ + e¹³⁶⁷
    pub fn psi<S: Scalar>() -> KForm<S> {
        terms(
            4,
            &[
                (1, &[3, 4, 5, 6]),
                (1, &[1, 2, 5, 6]),
                (1, &[1, 2, 3, 4]),
                (-1, &[2, 4, 6, 7]),
                (1, &[2, 3, 5, 7]),
                (1, &[1, 4, 5, 7]),
                (1, &[1, 3, 6, 7]),
            ],
        )
    }

    pub fn omega<S: Scalar>() -> KForm<S> {
        terms(2, &[(1, &[1, 2]), (1, &[3, 4]), (1, &[5, 6])])
    }

    pub fn rho_plus<S: Scalar>() -> KForm<S> {
        terms(3, &[(1, &[1, 3, 5]), (-1, &[1, 4, 6]), (-1, &[2, 3, 6]), (-1, &[2, 4, 5])])
    }

    pub fn rho_minus<S: Scalar>() -> KForm<S> {
        terms(3, &[(1, &[1, 4, 5]), (1, &[1, 3, 6]), (1, &[2, 3, 5]), (-1, &[2, 4, 6])])
    }

    pub fn omega7<S: Scalar>() -> KForm<S> {
        terms(2, &[(1, &[1, 2]), (1, &[5, 6])])
    }

    pub fn omega3<S: Scalar>() -> KForm<S> {
        terms(2, &[(1, &[2, 6]), (-1, &[1, 5])])
    }

    pub fn omega4<S: Scalar>() -> KForm<S> {
        terms(2, &[(1, &[1, 6]), (1, &[2, 5])])
    }

    pub fn omega3_bar<S: Scalar>() -> KForm<S> {
        terms(2, &[(1, &[2, 6]), (1, &[1, 5])])
    }

    pub fn omega4_bar<S: Scalar>() -> KForm<S> {
        terms(2, &[(1, &[1, 6]), (-1, &[2, 5])])
    }

    /// The normalized torsion τ = e¹² − e⁵⁶.
    pub fn tau<S: Scalar>() -> KForm<S> {
        terms(2, &[(1, &[1, 2]), (-1, &[5, 6])])
    }

    pub fn vol<S: Scalar>() -> KForm<S> {
        KForm::basis(&[1, 2, 3, 4, 5, 6, 7])
    }
}

/// Splits a 2-form into its Λ²₇ and Λ²₁₄ components with respect to the
/// standard φ. Uses ∗(α∧φ) = 2α on Λ²₇ and −α on Λ²₁₄.
pub fn project_2forms<S: Scalar>(alpha: &KForm<S>) -> Result<(KForm<S>, KForm<S>), FormError> {
    if alpha.degree() != 2 {
        return Err(FormError::WrongDegree {
            expected: 2,
            found: alpha.degree(),
        });
    }
    let phi = fixtures::phi::<S>();
    let twisted = alpha.w(&phi).star7();
    let p7 = (alpha.clone() + twisted).scale(&S::from_ratio(1, 3));
    let p14 = alpha.clone() - p7.clone();
    Ok((p7, p14))
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::scalars::ExactScalar;

    type E = ExactScalar;

    fn q(n: i64, d: i64) -> E {
        E::from_ratio(n, d)
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = (0..=7).map(form_dim).collect();
        assert_eq!(dims, vec![1, 7, 21, 35, 35, 21, 7, 1]);
    }

    #[test]
    fn wedge_basics() {
        let e1 = KForm::<E>::basis(&[1]);
        let e2 = KForm::<E>::basis(&[2]);
        assert_eq!(e1.w(&e2), KForm::basis(&[1, 2]));
        assert_eq!(e2.w(&e1), -KForm::basis(&[1, 2]));
        let t = tau::<E>();
        assert_eq!(t.w(&t), KForm::basis(&[1, 2, 5, 6]).scale(&q(-2, 1)));
        assert!(omega::<E>().w(&rho_plus()).is_exactly_zero());
        assert!(matches!(
            KForm::<E>::basis(&[1, 2, 3, 4]).wedge(&KForm::basis(&[5, 6, 7, 1])),
            Err(FormError::DegreeOverflow(4, 4))
        ));
    }

    #[test]
    fn interior_products() {
        let e12 = KForm::<E>::basis(&[1, 2]);
        assert_eq!(e12.interior_basis(1), KForm::basis(&[2]));
        assert_eq!(e12.interior_basis(2), -KForm::basis(&[1]));
        let tt = tau::<E>().w(&tau());
        assert!(tt.interior_basis(3).is_exactly_zero());
        // i_{e1}(-2 e^{1256}) = -2 e^{256}
        assert_eq!(tt.interior_basis(1), KForm::basis(&[2, 5, 6]).scale(&q(-2, 1)));
        // (i_X)^2 = 0
        let x: Vec<E> = (1..=7).map(|i| q(i, 3)).collect();
        assert!(phi::<E>().interior(&x).interior(&x).is_exactly_zero());
    }

    #[test]
    fn star_of_phi_matches_fixture() {
        assert_eq!(phi::<E>().star7(), psi());
        let om = omega::<E>();
        let half = q(1, 2);
        assert_eq!(om.star6().unwrap(), om.w(&om).scale(&half));
        assert_eq!(om.w(&om).star6().unwrap(), om.scale(&q(2, 1)));
        assert_eq!(rho_plus::<E>().star6().unwrap(), rho_minus());
        let expected = om.w(&om).scale(&half) + rho_minus::<E>().w(&KForm::basis(&[7]));
        assert_eq!(psi::<E>(), expected);
    }

    #[test]
    fn star_of_tau_squared() {
        let t = tau::<E>();
        assert_eq!(t.w(&t).star7(), KForm::basis(&[3, 4, 7]).scale(&q(-2, 1)));
    }

    #[test]
    fn star6_rejects_e7() {
        assert_eq!(KForm::<E>::basis(&[1, 7]).star6(), Err(FormError::NotOnHyperplane));
    }

    #[test]
    fn star_relations_on_hyperplane() {
        // ∗γ = ∗₆γ ∧ e⁷ and ∗(γ∧e⁷) = (-1)^k ∗₆γ
        let g = KForm::<E>::from_terms(2, &[(q(1, 1), &[1, 3]), (q(2, 1), &[2, 6]), (q(-3, 1), &[4, 5])]);
        let e7 = KForm::basis(&[7]);
        assert_eq!(g.star7(), g.star6().unwrap().w(&e7));
        assert_eq!(g.w(&e7).star7(), g.star6().unwrap());
    }

    #[test]
    fn theta_examples() {
        let id6 = Endo::new(&H, Mat::<E>::identity(6));
        let vol6 = KForm::<E>::basis(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(vol6.theta(&id6), vol6.scale(&q(-6, 1)));
        let t7 = Endo::on_g1(Mat::diagonal(&[q(-1, 3), q(0, 1), q(1, 3), q(0, 1)]));
        assert_eq!(tau::<E>().theta(&t7), omega7::<E>().scale(&q(1, 3)));
    }

    #[test]
    fn projections() {
        let (p7, p14) = project_2forms(&tau::<E>()).unwrap();
        assert!(p7.is_exactly_zero());
        assert_eq!(p14, tau());
        let om = omega::<E>();
        let (p7, p14) = project_2forms(&om).unwrap();
        assert_eq!(p7, om);
        assert!(p14.is_exactly_zero());
        assert!(!om.w(&psi()).is_exactly_zero());
        let a = KForm::<E>::from_terms(2, &[(q(1, 1), &[1, 2]), (q(-1, 1), &[3, 4])]);
        let (p7, p14) = project_2forms(&a).unwrap();
        assert!(p7.is_exactly_zero());
        assert_eq!(p14, a);
        assert!(matches!(project_2forms(&phi::<E>()), Err(FormError::WrongDegree { .. })));
    }

    #[test]
    fn projection_of_generic_form_is_orthogonal() {
        let a = KForm::<E>::from_terms(2, &[(q(3, 1), &[1, 7]), (q(-2, 1), &[2, 5]), (q(1, 2), &[3, 4])]);
        let (p7, p14) = project_2forms(&a).unwrap();
        assert!(p14.w(&psi()).is_exactly_zero());
        assert_eq!(p14.w(&phi()), -p14.star7());
        assert!(p7.dot(&p14).is_exactly_zero());
        assert_eq!(p7.w(&phi()).star7(), p7.scale(&q(2, 1)));
    }

    #[test]
    fn gl7_action_identity_and_sign_flip() {
        let tol = Tolerances::default();
        let p = phi::<E>();
        assert_eq!(p.gl7_action(&Mat::identity(7), &tol).unwrap(), p);
        // diag(-1,1,-1,1,-1,1,-1) in the split order e7,e3,e4,e1,e2,e5,e6
        let d = Mat::diagonal(&[q(-1, 1), q(1, 1), q(-1, 1), q(1, 1), q(-1, 1), q(1, 1), q(-1, 1)]);
        let g = Endo::new(&SPLIT, d).embed();
        assert_eq!(p.gl7_action(&g, &tol).unwrap(), p);
        assert_eq!(tau::<E>().gl7_action(&g, &tol).unwrap(), -tau::<E>());
        assert_eq!(p.gl7_action(&Mat::zeros(7, 7), &tol), Err(FormError::Singular));
    }
}
