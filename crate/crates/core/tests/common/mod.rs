#![allow(dead_code)]

use std::sync::OnceLock;

use g2erp::deform::mat_exp;
use g2erp::exterior::{fixtures, form_dim, Endo, KForm, DIM, H};
use g2erp::g2core::{closed_non_erp_example, delta_la, split_torsion, torsion, G2Structure};
use g2erp::liealg::{Bracket, DerivationConstraints};
use g2erp::linalg::Mat;
use g2erp::quad::{catalog, CATALOG_NAMES};
use g2erp::scalars::{ExactScalar, Scalar, Tolerances};
use proptest::prelude::*;

pub const CASES: u32 = 1000;
pub const TOL: f64 = 1e-9;

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn config() -> ProptestConfig {
    ProptestConfig::with_cases(CASES)
}

pub fn coeff() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

/// A k-form on ℝ⁷ with coefficients in [−1, 1].
pub fn form(k: usize) -> impl Strategy<Value = KForm<f64>> {
    prop::collection::vec(coeff(), form_dim(k)).prop_map(move |c| KForm::from_coeffs(k, c))
}

pub fn any_form() -> impl Strategy<Value = KForm<f64>> {
    (0..=DIM).prop_flat_map(form)
}

/// A k-form with no e⁷ terms.
pub fn hyperplane_form(k: usize) -> impl Strategy<Value = KForm<f64>> {
    form(k).prop_map(|f| f.split_e7().0)
}

pub fn matrix(n: usize) -> impl Strategy<Value = Mat<f64>> {
    prop::collection::vec(coeff(), n * n).prop_map(move |v| Mat::from_fn(n, n, |i, j| v[i * n + j]))
}

pub fn catalog_index() -> impl Strategy<Value = usize> {
    0..CATALOG_NAMES.len()
}

pub fn catalog_f64(i: usize) -> Bracket<f64> {
    catalog(CATALOG_NAMES[i]).unwrap().to_f64().to_bracket()
}

/// Basis of 𝔰𝔲(3) ⊂ 𝔤𝔩(7) (skew, kills e₇, fixes ω and ρ⁺).
pub fn su3_basis() -> Vec<Mat<f64>> {
    let constraints = DerivationConstraints { block_diagonal: false, kills_e7: true, su3: true };
    let space = Bracket::<f64>::abelian().derivations(constraints, &tol()).unwrap();
    space.basis().iter().map(|v| Mat::from_fn(DIM, DIM, |a, b| v[a * DIM + b])).collect()
}

/// exp of a combination of the 𝔰𝔲(3) basis: an element of SU(3) ⊂ G₂ fixing e₇.
pub fn su3_element(coeffs: &[f64]) -> Mat<f64> {
    let basis = su3_basis();
    let mut x = Mat::zeros(DIM, DIM);
    for (c, b) in coeffs.iter().zip(&basis) {
        x = x + b.scale(c);
    }
    mat_exp(&x)
}

/// Sets structure constants below 1e-14 to exact zero so that exact-zero
/// pattern tests (such as 𝔥 being an ideal) survive float conjugation.
pub fn clean(mu: &Bracket<f64>) -> Bracket<f64> {
    let entries: Vec<_> = mu.nonzero_constants().into_iter().filter(|(_, _, _, v)| v.abs() > 1e-14).collect();
    Bracket::from_constants(&entries)
}

pub fn is_small(f: &KForm<f64>) -> bool {
    f.max_abs() <= TOL
}

pub fn assert_forms_close(a: &KForm<f64>, b: &KForm<f64>) -> Result<(), TestCaseError> {
    let diff = (a.clone() - b.clone()).max_abs();
    prop_assert!(diff <= TOL, "forms differ by {diff:e}");
    Ok(())
}

pub fn phi() -> KForm<f64> {
    fixtures::phi()
}

/// The orthogonal map relating μ_J to an earlier model, in the standard basis.
pub fn j_equivalence() -> Mat<ExactScalar> {
    let r2 = ExactScalar::sqrt_basis(2).unwrap();
    let r3 = ExactScalar::sqrt_basis(3).unwrap();
    let r6 = ExactScalar::sqrt_basis(6).unwrap();
    let z = ExactScalar::zero;
    let k = |n: i64, r: &ExactScalar| r.clone() * ExactScalar::from_int(n);
    let rows = vec![
        vec![z(), z(), k(3, &r2), k(3, &r2), z(), z(), z()],
        vec![z(), z(), k(1, &r6), k(-1, &r6), k(-2, &r6), z(), z()],
        vec![k(-3, &r2), k(-3, &r2), z(), z(), z(), z(), z()],
        vec![k(-1, &r6), k(1, &r6), z(), z(), z(), z(), k(2, &r6)],
        vec![z(), z(), z(), z(), z(), ExactScalar::from_int(-6), z()],
        vec![z(), z(), k(-2, &r3), k(2, &r3), k(-2, &r3), z(), z()],
        vec![k(-2, &r3), k(2, &r3), z(), z(), z(), z(), k(-2, &r3)],
    ];
    Mat::from_rows(rows).scale(&ExactScalar::from_ratio(1, 6))
}

pub fn unit(i: usize) -> Vec<f64> {
    (0..DIM).map(|r| if r == i { 1.0 } else { 0.0 }).collect()
}

pub fn jacobiator_max(mu: &Bracket<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in i + 1..DIM {
            for l in j + 1..DIM {
                let (x, y, z) = (unit(i), unit(j), unit(l));
                let a = mu.apply(&mu.apply(&x, &y), &z);
                let b = mu.apply(&mu.apply(&y, &z), &x);
                let c = mu.apply(&mu.apply(&z, &x), &y);
                for k in 0..DIM {
                    worst = worst.max((a[k] + b[k] + c[k]).abs());
                }
            }
        }
    }
    worst
}

pub fn d_squared_max(mu: &Bracket<f64>) -> f64 {
    (1..=DIM).map(|k| mu.d(&mu.d(&KForm::basis(&[k]))).max_abs()).fold(0.0, f64::max)
}

/// A catalog bracket moved by a random invertible matrix near the identity.
pub fn moved_catalog() -> impl Strategy<Value = Bracket<f64>> {
    (catalog_index(), matrix(7)).prop_map(|(i, m)| {
        let h = Mat::identity(7) + m.scale(&0.3);
        catalog_f64(i).conjugate(&h, &tol()).unwrap()
    })
}

pub fn corruption() -> impl Strategy<Value = Option<(usize, usize, usize, f64)>> {
    prop::option::of((1usize..=6, 1usize..=7, 1usize..=7, 0.05..1.0f64))
}

/// Adds ε to the constant c_ij^k (j is pushed above i).
pub fn corrupt(mut mu: Bracket<f64>, bad: Option<(usize, usize, usize, f64)>) -> Bracket<f64> {
    if let Some((i, j, k, eps)) = bad {
        let j = if j <= i { i + 1 } else { j };
        let v = mu.get(i, j, k) + eps;
        mu.set(i, j, k, v);
    }
    mu
}


/// Catalog entries followed by the closed non-ERP example.
pub fn base(i: usize) -> Bracket<f64> {
    if i < CATALOG_NAMES.len() {
        catalog_f64(i)
    } else {
        closed_non_erp_example()
    }
}

/// Derivations D of λ on 𝔥 with θ(D)ρ⁺ = 0: adding them to A keeps μ a closed Lie bracket.
pub fn closed_directions() -> &'static Vec<Vec<Mat<f64>>> {
    static DIRS: OnceLock<Vec<Vec<Mat<f64>>>> = OnceLock::new();
    DIRS.get_or_init(|| {
        let constraints = DerivationConstraints { block_diagonal: false, kills_e7: true, su3: false };
        (0..=CATALOG_NAMES.len())
            .map(|i| {
                let (lambda, _) = base(i).split().unwrap();
                let der: Vec<Mat<f64>> = lambda
                    .derivations(constraints, &tol())
                    .unwrap()
                    .basis()
                    .iter()
                    .map(|v| Endo::restrict(&Mat::from_fn(DIM, DIM, |a, b| v[a * DIM + b]), &H).matrix().clone())
                    .collect();
                let rho = fixtures::rho_plus::<f64>();
                let images: Vec<KForm<f64>> = der.iter().map(|d| rho.theta(&Endo::new(&H, d.clone()))).collect();
                let system = Mat::from_fn(images[0].coeffs().len(), der.len(), |r, c| images[c].coeffs()[r]);
                system
                    .null_space(&tol())
                    .iter()
                    .map(|w| w.iter().zip(&der).fold(Mat::zeros(6, 6), |acc, (c, d)| acc + d.scale(c)))
                    .collect()
            })
            .collect()
    })
}

/// A closed split bracket: a catalog (or non-ERP) λ with A moved inside the
/// closed directions, then rotated by SU(3) ⊂ G₂.
pub fn closed_split() -> impl Strategy<Value = Bracket<f64>> {
    (0..=CATALOG_NAMES.len(), prop::collection::vec(coeff(), 16), prop::collection::vec(coeff(), 8)).prop_map(|(i, p, r)| {
        let (lambda, a) = base(i).split().unwrap();
        let shift = p.iter().zip(&closed_directions()[i]).fold(Mat::zeros(6, 6), |acc, (c, d)| acc + d.scale(&(0.5 * c)));
        let a = Endo::new(&H, a.matrix().clone() + shift);
        let mu = Bracket::from_split(&lambda, &a);
        clean(&mu.conjugate(&su3_element(&r), &tol()).unwrap())
    })
}

/// ∗² = 1 on Λℝ⁷ and ∗₆² = (−1)ᵏ on the e⁷-free part.
pub fn check_star_involution(f: &KForm<f64>) -> Result<(), TestCaseError> {
    assert_forms_close(&f.star7().star7(), f)?;
    if f.degree() == DIM {
        return Ok(());
    }
    let g = f.split_e7().0;
    let sign = if f.degree().is_multiple_of(2) { 1.0 } else { -1.0 };
    assert_forms_close(&g.star6().unwrap().star6().unwrap(), &g.scale(&sign))
}

/// θ(A)∗γ + ∗θ(Aᵗ)γ = −(tr A)∗γ on 𝔥.
pub fn check_theta_star(a: &Mat<f64>, gamma: &KForm<f64>) -> Result<(), TestCaseError> {
    let a_endo = Endo::new(&H, a.clone());
    let star = gamma.star6().unwrap();
    let lhs = star.theta(&a_endo) + gamma.theta(&a_endo.transpose()).star6().unwrap();
    assert_forms_close(&lhs, &star.scale(&-a.trace()))
}

pub fn check_d_squared_iff_jacobi(mu: &Bracket<f64>) -> Result<(), TestCaseError> {
    let d2 = d_squared_max(mu) <= TOL;
    let jacobi = jacobiator_max(mu) <= TOL;
    prop_assert_eq!(d2, jacobi);
    prop_assert_eq!(mu.check_jacobi(&tol()).passes(), jacobi);
    Ok(())
}

pub fn check_torsion_routes(mu: &Bracket<f64>) -> Result<(), TestCaseError> {
    prop_assert!(mu.check_jacobi(&tol()).passes());
    let report = torsion(mu, &G2Structure::standard(), &tol());
    prop_assert!(report.closed, "dφ = {:e}", report.closed_residual);
    let split = split_torsion(mu).unwrap();
    assert_forms_close(&split, report.tau.as_ref().unwrap())?;
    prop_assert_eq!(report.split_agrees, Some(true));
    Ok(())
}

pub fn check_delta_la(mu: &Bracket<f64>) -> Result<(), TestCaseError> {
    let (lambda, a) = mu.split().unwrap();
    let tau = torsion(mu, &G2Structure::standard(), &tol()).tau.unwrap();
    assert_forms_close(&delta_la(&lambda, &a).unwrap(), &mu.d(&tau))
}
