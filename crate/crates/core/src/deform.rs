//! Symmetry groups of the normalized torsion, their action on quadruples, and
//! the linearized ERP system with its rigidity classification.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::exterior::{fixtures, Endo, KForm, DIM, G1, H1, SPLIT};
use crate::liealg::{Bracket, DerivationConstraints, LieError};
use crate::linalg::{Mat, Subspace};
use crate::quad::{condition_ii_matrix, jacobian_with, residual_with, Quadruple, CHART_DIM};
use crate::scalars::{Scalar, Tolerances};

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("group element carries no tag")]
    Untagged,
    #[error("block formula and bracket conjugation disagree (max deviation {0:e})")]
    RouteMismatch(f64),
    #[error("element does not preserve the splitting 𝔤₀ ⊕ 𝔤₁")]
    NotBlockDiagonal,
    #[error("group element is singular")]
    Singular,
    #[error("the acted bracket leaves quadruple form")]
    LeavesQuadrupleForm,
    #[error("tangent vector has no chart coordinates")]
    OutsideChart,
    #[error("quadruple does not satisfy the ERP conditions")]
    NotErp,
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Which subspace a symmetry element is required to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preserved {
    H,
    G1,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymmetryTag {
    Identity,
    /// Rotations (cos, sin) on (e₁,e₂) and (e₅,e₆); the (e₃,e₄) block is the inverse product.
    U0 { h2: [f64; 2], h3: [f64; 2] },
    G,
    /// U₀ element composed with g.
    U0G { h2: [f64; 2], h3: [f64; 2] },
    /// exp of the (a,b,c,d) element of the Lie algebra of U_{𝔤₁,τ}.
    Ug1Tau { a: f64, b: f64, c: f64, d: f64 },
    Untagged,
}

#[derive(Clone)]
pub struct SymmetryElement<S> {
    /// Matrix in the standard basis e₁,…,e₇.
    pub matrix: Mat<S>,
    pub tag: SymmetryTag,
}

/// Embeds a matrix written in the basis {e₇,e₃,e₄,e₁,e₂,e₅,e₆}.
pub fn from_split_basis<S: Scalar>(m: Mat<S>) -> Mat<S> {
    Endo::new(&SPLIT, m).embed()
}

/// Reads a standard-basis matrix in the basis {e₇,e₃,e₄,e₁,e₂,e₅,e₆}.
pub fn to_split_basis<S: Scalar>(m: &Mat<S>) -> Mat<S> {
    Endo::restrict(m, &SPLIT).matrix().clone()
}

fn rotation<S: Scalar>(c: &S, s: &S) -> Mat<S> {
    Mat::from_rows(vec![vec![c.clone(), s.clone()], vec![-s.clone(), c.clone()]])
}

fn block_diag<S: Scalar>(blocks: &[Mat<S>]) -> Mat<S> {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = Mat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    out
}

fn u0_split<S: Scalar>(h2: (&S, &S), h3: (&S, &S)) -> Mat<S> {
    let r2 = rotation(h2.0, h2.1);
    let r3 = rotation(h3.0, h3.1);
    let prod = r2.clone() * r3.clone();
    // inverse of a rotation is its transpose
    let r1 = prod.transpose();
    block_diag(&[Mat::identity(1), r1, r2, r3])
}

/// g of the second component of U_{𝔥,τ}, in split basis order.
pub fn g_split<S: Scalar>() -> Mat<S> {
    let z = S::zero;
    let o = S::one;
    let m = || -S::one();
    let g2 = Mat::from_rows(vec![
        vec![z(), z(), o(), z()],
        vec![z(), z(), z(), m()],
        vec![m(), z(), z(), z()],
        vec![z(), o(), z(), z()],
    ]);
    block_diag(&[Mat::diagonal(&[m(), o(), m()]), g2])
}

/// The Lie algebra element of U_{𝔤₁,τ} with parameters (a,b,c,d), in split basis order.
pub fn u_g1_tau_split<S: Scalar>(a: &S, b: &S, c: &S, d: &S) -> Mat<S> {
    let h = |x: &S| x.clone() * S::from_ratio(1, 2);
    let z = S::zero();
    let rows: Vec<Vec<S>> = vec![
        vec![z.clone(), c.clone(), -b.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![-c.clone(), z.clone(), a.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![b.clone(), -a.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), -d.clone(), h(b), -h(c)],
        vec![z.clone(), z.clone(), z.clone(), d.clone(), z.clone(), -h(c), -h(b)],
        vec![z.clone(), z.clone(), z.clone(), -h(b), h(c), z.clone(), d.clone() - a.clone()],
        vec![z.clone(), z.clone(), z.clone(), h(c), h(b), a.clone() - d.clone(), z],
    ];
    Mat::from_rows(rows)
}

impl<S: Scalar> SymmetryElement<S> {
    pub fn identity() -> Self {
        SymmetryElement { matrix: Mat::identity(DIM), tag: SymmetryTag::Identity }
    }

    /// U₀ element from two rotations given by (cos, sin) pairs.
    pub fn u0(h2: (S, S), h3: (S, S)) -> Self {
        let tag = SymmetryTag::U0 {
            h2: [h2.0.to_f64(), h2.1.to_f64()],
            h3: [h3.0.to_f64(), h3.1.to_f64()],
        };
        SymmetryElement { matrix: from_split_basis(u0_split((&h2.0, &h2.1), (&h3.0, &h3.1))), tag }
    }

    pub fn g() -> Self {
        SymmetryElement { matrix: from_split_basis(g_split()), tag: SymmetryTag::G }
    }

    /// The U₀g coset element u·g.
    pub fn u0g(h2: (S, S), h3: (S, S)) -> Self {
        let u = Self::u0(h2, h3);
        let tag = match u.tag {
            SymmetryTag::U0 { h2, h3 } => SymmetryTag::U0G { h2, h3 },
            _ => unreachable!(),
        };
        SymmetryElement { matrix: u.matrix * Self::g().matrix, tag }
    }

    pub fn untagged(matrix: Mat<S>) -> Self {
        SymmetryElement { matrix, tag: SymmetryTag::Untagged }
    }

    /// Whether h fixes φ and τ and preserves the given subspace.
    pub fn is_symmetry(&self, preserved: Preserved, tol: &Tolerances) -> bool {
        let Ok(phi) = fixtures::phi::<S>().gl7_action(&self.matrix, tol) else {
            return false;
        };
        let Ok(tau) = fixtures::tau::<S>().gl7_action(&self.matrix, tol) else {
            return false;
        };
        let inside: &[usize] = match preserved {
            Preserved::H => &[1, 2, 3, 4, 5, 6],
            Preserved::G1 => &G1,
        };
        let keeps = inside.iter().all(|&j| {
            (1..=DIM)
                .filter(|i| !inside.contains(i))
                .all(|i| self.matrix[(i - 1, j - 1)].is_zero_tol(tol))
        });
        keeps && phi.approx_eq(&fixtures::phi(), tol) && tau.approx_eq(&fixtures::tau(), tol)
    }
}

impl SymmetryElement<f64> {
    pub fn u0_angles(theta1: f64, theta2: f64) -> Self {
        Self::u0((theta1.cos(), theta1.sin()), (theta2.cos(), theta2.sin()))
    }

    /// exp of the (a,b,c,d) Lie algebra element of U_{𝔤₁,τ}.
    pub fn u_g1_tau(a: f64, b: f64, c: f64, d: f64) -> Self {
        let x = from_split_basis(u_g1_tau_split(&a, &b, &c, &d));
        SymmetryElement { matrix: mat_exp(&x), tag: SymmetryTag::Ug1Tau { a, b, c, d } }
    }
}

/// Matrix exponential of a float matrix.
pub fn mat_exp(m: &Mat<f64>) -> Mat<f64> {
    let n = m.rows();
    let e = DMatrix::from_fn(n, n, |i, j| m[(i, j)]).exp();
    Mat::from_fn(n, n, |i, j| e[(i, j)])
}

fn sub_block<S: Scalar>(m: &Mat<S>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat<S> {
    let (r0, c0) = (rows.start, cols.start);
    Mat::from_fn(rows.len(), cols.len(), |i, j| m[(r0 + i, c0 + j)].clone())
}

/// Block formula for h·μ when h preserves 𝔤₀ = ⟨e₇,e₃,e₄⟩ and 𝔤₁.
fn block_action<S: Scalar>(h: &Mat<S>, q: &Quadruple<S>, tol: &Tolerances) -> Result<Quadruple<S>, DeformError> {
    let hs = to_split_basis(h);
    let off_diagonal_zero = (0..DIM).all(|i| (0..DIM).all(|j| (i < 3) == (j < 3) || hs[(i, j)].is_zero_tol(tol)));
    if !off_diagonal_zero {
        return Err(DeformError::NotBlockDiagonal);
    }
    let h0 = sub_block(&hs, 0..3, 0..3);
    let k = sub_block(&hs, 3..7, 3..7);
    let h0_inv = h0.inverse(tol).ok_or(DeformError::Singular)?;
    let k_inv = k.inverse(tol).ok_or(DeformError::Singular)?;

    // 𝔤₀ bracket in coordinates (e₇,e₃,e₄): μ₀(u,v) = u₀ A₁v' − v₀ A₁u'.
    let mu0 = |u: &[S], v: &[S]| -> Vec<S> {
        let au = q.a1.mul_vec(&u[1..3]);
        let av = q.a1.mul_vec(&v[1..3]);
        let mut out = vec![S::zero()];
        for r in 0..2 {
            out.push(u[0].clone() * av[r].clone() - v[0].clone() * au[r].clone());
        }
        out
    };
    let col = |m: &Mat<S>, j: usize| m.column(j);
    let acted = |i: usize, j: usize| h0.mul_vec(&mu0(&col(&h0_inv, i), &col(&h0_inv, j)));
    let e34 = acted(1, 2);
    let e73 = acted(0, 1);
    let e74 = acted(0, 2);
    if !(e34.iter().all(|x| x.is_zero_tol(tol)) && e73[0].is_zero_tol(tol) && e74[0].is_zero_tol(tol)) {
        return Err(DeformError::LeavesQuadrupleForm);
    }
    let a1 = Mat::from_rows(vec![
        vec![e73[1].clone(), e74[1].clone()],
        vec![e73[2].clone(), e74[2].clone()],
    ]);

    let xs = [&q.a, &q.b, &q.c];
    let image = |kcol: usize| {
        let mut sum = Mat::zeros(4, 4);
        for (l, x) in xs.iter().enumerate() {
            sum = sum + x.scale(&h0_inv[(l, kcol)]);
        }
        k.clone() * sum * k_inv.clone()
    };
    Ok(Quadruple::new(a1, image(0), image(1), image(2)))
}

/// h·μ for a tagged symmetry element, computed by the block formulas and
/// cross-checked against conjugation of the full bracket.
pub fn group_action<S: Scalar>(h: &SymmetryElement<S>, q: &Quadruple<S>, tol: &Tolerances) -> Result<Quadruple<S>, DeformError> {
    if h.tag == SymmetryTag::Untagged {
        return Err(DeformError::Untagged);
    }
    let by_blocks = block_action(&h.matrix, q, tol)?;
    let conjugated = q.to_bracket().conjugate(&h.matrix, tol).ok_or(DeformError::Singular)?;
    let by_conjugation = Quadruple::from_bracket(&conjugated, tol).ok_or(DeformError::LeavesQuadrupleForm)?;
    if !by_blocks.approx_eq(&by_conjugation, tol) {
        let dev = by_blocks.to_bracket().max_abs_diff(&conjugated);
        return Err(DeformError::RouteMismatch(dev));
    }
    Ok(by_blocks)
}

fn unit_mat<S: Scalar>(idx: usize) -> Mat<S> {
    let mut e = Mat::zeros(DIM, DIM);
    e[(idx / DIM, idx % DIM)] = S::one();
    e
}

fn mat_from_coords<S: Scalar>(v: &[S]) -> Mat<S> {
    Mat::from_fn(DIM, DIM, |a, b| v[a * DIM + b].clone())
}

/// Lie algebra of the stabilizer of φ and τ inside the subgroup preserving
/// 𝔥 or 𝔤₁, computed as a null space in gl(7).
pub fn stabilizer_algebra<S: Scalar>(preserved: Preserved, tol: &Tolerances) -> Vec<Mat<S>> {
    let n = DIM * DIM;
    let mut rows: Vec<Vec<S>> = Vec::new();
    for form in [fixtures::phi::<S>(), fixtures::tau::<S>()] {
        let images: Vec<KForm<S>> = (0..n).map(|idx| form.theta_mat(&unit_mat(idx))).collect();
        for comp in 0..images[0].coeffs().len() {
            rows.push(images.iter().map(|f| f.coeffs()[comp].clone()).collect());
        }
    }
    let inside: Vec<usize> = match preserved {
        Preserved::H => (0..6).collect(),
        Preserved::G1 => G1.iter().map(|i| i - 1).collect(),
    };
    for &j in &inside {
        for i in (0..DIM).filter(|i| !inside.contains(i)) {
            let mut row = vec![S::zero(); n];
            row[i * DIM + j] = S::one();
            rows.push(row);
        }
    }
    Mat::from_rows(rows).null_space(tol).iter().map(|v| mat_from_coords(v)).collect()
}

/// The symmetry algebra relevant for q: u_{𝔤₁,τ} if q is unimodular, u_{𝔥,τ} otherwise.
pub fn symmetry_algebra_for<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> (Preserved, Vec<Mat<S>>) {
    let preserved = if q.a1.trace().is_zero_tol(tol) { Preserved::G1 } else { Preserved::H };
    (preserved, stabilizer_algebra(preserved, tol))
}

/// Chart coordinates of D·μ for D in gl(7).
pub fn infinitesimal_action<S: Scalar>(d: &Mat<S>, q: &Quadruple<S>, tol: &Tolerances) -> Result<Vec<S>, DeformError> {
    let dmu = q.to_bracket().derivation_defect(d);
    Quadruple::from_bracket(&dmu, tol)
        .ok_or(DeformError::LeavesQuadrupleForm)?
        .tangent_chart(tol)
        .ok_or(DeformError::OutsideChart)
}

fn require_erp<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<Vec<S>, DeformError> {
    let x = q.chart(tol).ok_or(DeformError::NotErp)?;
    let r = residual_with(&condition_ii_matrix(), &x);
    if r.iter().all(|v| v.is_zero_tol(tol)) {
        Ok(x)
    } else {
        Err(DeformError::NotErp)
    }
}

/// Null space T̄_μ of the linearized ERP system in the 34-coordinate chart.
pub fn tangent_system<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<Subspace<S>, DeformError> {
    let x = require_erp(q, tol)?;
    let jac = jacobian_with(&condition_ii_matrix(), &x);
    Ok(Subspace::span(CHART_DIM, &jac.null_space(tol), tol))
}

/// u·μ in the chart, with u chosen by unimodularity.
pub fn orbit_tangent<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<Subspace<S>, DeformError> {
    let (_, algebra) = symmetry_algebra_for(q, tol);
    let vectors = algebra
        .iter()
        .map(|d| infinitesimal_action(d, q, tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(CHART_DIM, &vectors, tol))
}

/// 𝔡_μ: derivations D of μ that are block diagonal, kill e₇ and lie in 𝔰𝔲(3),
/// embedded as tangent vectors (D₁, D₂, 0, 0).
pub fn linear_deformation_space<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<Subspace<S>, DeformError> {
    let ders = q.to_bracket().derivations(DerivationConstraints::linear_deformations(), tol)?;
    let mut vectors = Vec::new();
    for v in ders.basis() {
        let d = mat_from_coords(v);
        let d1 = Endo::restrict(&d, &H1).matrix().clone();
        let d2 = Endo::restrict(&d, &G1).matrix().clone();
        let t = Quadruple::new(d1, d2, Mat::zeros(4, 4), Mat::zeros(4, 4));
        vectors.push(t.tangent_chart(tol).ok_or(DeformError::OutsideChart)?);
    }
    Ok(Subspace::span(CHART_DIM, &vectors, tol))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub tangent: usize,
    pub orbit: usize,
    pub derivations: usize,
    pub sum: usize,
    pub orbit_in_tangent: bool,
    pub derivations_in_tangent: bool,
    pub equivariantly_rigid: bool,
    pub rigid: bool,
}

pub fn rigidity<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<TangentReport, DeformError> {
    let tangent = tangent_system(q, tol)?;
    let orbit = orbit_tangent(q, tol)?;
    let ders = linear_deformation_space(q, tol)?;
    let sum = ders.sum(&orbit, tol);
    Ok(TangentReport {
        tangent: tangent.dim(),
        orbit: orbit.dim(),
        derivations: ders.dim(),
        sum: sum.dim(),
        orbit_in_tangent: tangent.contains_subspace(&orbit, tol),
        derivations_in_tangent: tangent.contains_subspace(&ders, tol),
        equivariantly_rigid: orbit.same_as(&tangent, tol),
        rigid: sum.same_as(&tangent, tol),
    })
}

/// Whether two subspaces of the chart are orthogonal for the Euclidean inner product.
pub fn orthogonal<S: Scalar>(a: &Subspace<S>, b: &Subspace<S>, tol: &Tolerances) -> bool {
    a.basis().iter().all(|u| {
        b.basis().iter().all(|v| {
            let dot = u.iter().zip(v).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            dot.is_zero_tol(tol)
        })
    })
}

/// Bracket version of h·μ, for callers that do not need quadruple form.
pub fn conjugate_bracket<S: Scalar>(h: &Mat<S>, mu: &Bracket<S>, tol: &Tolerances) -> Result<Bracket<S>, DeformError> {
    mu.conjugate(h, tol).ok_or(DeformError::Singular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::catalog;
    use crate::scalars::ExactScalar;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn stabilizer_dimensions() {
        assert_eq!(stabilizer_algebra::<ExactScalar>(Preserved::H, &tol()).len(), 2);
        assert_eq!(stabilizer_algebra::<ExactScalar>(Preserved::G1, &tol()).len(), 4);
    }

    #[test]
    fn printed_lie_algebra_is_the_stabilizer() {
        let basis = stabilizer_algebra::<ExactScalar>(Preserved::G1, &tol());
        let flat = |m: &Mat<ExactScalar>| m.data().to_vec();
        let span = Subspace::span(DIM * DIM, &basis.iter().map(flat).collect::<Vec<_>>(), &tol());
        for p in 0..4 {
            let mut v = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero()];
            v[p] = ExactScalar::one();
            let x = from_split_basis(u_g1_tau_split(&v[0], &v[1], &v[2], &v[3]));
            assert!(span.contains(&flat(&x), &tol()), "parameter {p}");
        }
    }

    #[test]
    fn exact_group_elements_are_symmetries() {
        let (z, o) = (ExactScalar::zero(), ExactScalar::one());
        let three_fifths = ExactScalar::from_ratio(3, 5);
        let four_fifths = ExactScalar::from_ratio(4, 5);
        let u = SymmetryElement::u0((z.clone(), o.clone()), (three_fifths.clone(), four_fifths.clone()));
        assert!(u.is_symmetry(Preserved::H, &tol()));
        assert!(SymmetryElement::<ExactScalar>::g().is_symmetry(Preserved::H, &tol()));
        assert!(SymmetryElement::u0g((three_fifths, four_fifths), (z, o)).is_symmetry(Preserved::H, &tol()));
    }

    #[test]
    fn ug1tau_exponential_is_symmetry() {
        let h = SymmetryElement::u_g1_tau(0.3, -0.7, 0.2, 1.1);
        assert!(h.is_symmetry(Preserved::G1, &tol()));
    }

    #[test]
    fn g_sign_pattern() {
        let q = catalog("M2").unwrap();
        let out = group_action(&SymmetryElement::g(), &q, &tol()).unwrap();
        let g1 = Mat::diagonal(&[ExactScalar::one(), -ExactScalar::one()]);
        let gs = g_split::<ExactScalar>();
        let g2 = sub_block(&gs, 3..7, 3..7);
        let g2i = g2.transpose();
        let neg = |m: Mat<ExactScalar>| m.scale(&-ExactScalar::one());
        assert_eq!(out.a1, neg(g1.clone() * q.a1.clone() * g1));
        assert_eq!(out.a, neg(g2.clone() * q.a.clone() * g2i.clone()));
        assert_eq!(out.b, g2.clone() * q.b.clone() * g2i.clone());
        assert_eq!(out.c, neg(g2 * q.c.clone() * g2i));
    }

    #[test]
    fn untagged_is_rejected() {
        let q = catalog("J").unwrap();
        let h = SymmetryElement::untagged(Mat::identity(DIM));
        assert!(matches!(group_action(&h, &q, &tol()), Err(DeformError::Untagged)));
    }

    #[test]
    fn identity_acts_trivially() {
        let q = catalog("B").unwrap();
        assert_eq!(group_action(&SymmetryElement::identity(), &q, &tol()).unwrap(), q);
    }
}
