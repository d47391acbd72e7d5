//! G2-structures on a Lie algebra: induced metric, torsion, the ERP
//! predicate, the operator Q, Bryant's pinching quantities and the ERP
//! Laplacian-flow line.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::exterior::{fixtures, Endo, FormError, KForm, DIM, H};
use crate::liealg::{Bracket, LieError};
use crate::linalg::{Mat, Subspace};
use crate::scalars::{Scalar, Tolerances};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum G2Error {
    #[error("3-form is not positive: {0}")]
    NotPositive(String),
    #[error("G2-structure is not closed")]
    NotClosed,
    #[error("G2-structure is not ERP")]
    NotErp,
    #[error("no symmetric Q with θ(Q)φ = dτ")]
    Inconsistent,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// A positive 3-form together with the metric, volume form and an oriented
/// orthonormal frame it induces.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Structure<S: Scalar> {
    pub phi: KForm<S>,
    pub metric: Mat<S>,
    pub volume: KForm<S>,
    /// Columns form a g-orthonormal oriented basis.
    pub frame: Mat<S>,
    /// Inverse of `frame`; its rows are the dual coframe.
    pub frame_inv: Mat<S>,
    standard: bool,
}

impl<S: Scalar> G2Structure<S> {
    /// φ = e¹²⁷ + e³⁴⁷ + e⁵⁶⁷ + e¹³⁵ − e¹⁴⁶ − e²³⁶ − e²⁴⁵ with the identity metric.
    pub fn standard() -> Self {
        G2Structure {
            phi: fixtures::phi(),
            metric: Mat::identity(DIM),
            volume: fixtures::vol(),
            frame: Mat::identity(DIM),
            frame_inv: Mat::identity(DIM),
            standard: true,
        }
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    /// Hodge star of the induced metric and orientation.
    pub fn star(&self, form: &KForm<S>) -> KForm<S> {
        if self.standard {
            return form.star7();
        }
        // Coefficients in the coframe, star there, then back.
        form.pullback(&self.frame).star7().pullback(&self.frame_inv)
    }

    /// ∗ of a top-degree form, as a scalar.
    pub fn star_top(&self, form: &KForm<S>) -> S {
        self.star(form).coeffs()[0].clone()
    }

    /// |α|² = ∗(α ∧ ∗α).
    pub fn norm_sq(&self, form: &KForm<S>) -> S {
        self.star_top(&form.w(&self.star(form)))
    }
}

/// B_ij with ⅙ i_{e_i}φ ∧ i_{e_j}φ ∧ φ = B_ij e¹…⁷.
pub fn b_matrix<S: Scalar>(phi: &KForm<S>) -> Mat<S> {
    let contractions: Vec<KForm<S>> = (1..=DIM).map(|i| phi.interior_basis(i)).collect();
    let sixth = S::from_ratio(1, 6);
    Mat::from_fn(DIM, DIM, |i, j| {
        let top = contractions[i].w(&contractions[j]).w(phi);
        top.coeffs()[0].clone() * sixth.clone()
    })
}

/// Positivity test and induced metric of a 3-form (float backend: the
/// metric involves a ninth root).
pub fn induce_metric(phi: &KForm<f64>) -> Result<G2Structure<f64>, G2Error> {
    if phi.degree() != 3 {
        return Err(FormError::WrongDegree {
            expected: 3,
            found: phi.degree(),
        }
        .into());
    }
    let b = b_matrix(phi);
    let bn = DMatrix::from_fn(DIM, DIM, |i, j| b[(i, j)]);
    let det_b = bn.determinant();
    if det_b.is_nan() || det_b <= 0.0 {
        return Err(G2Error::NotPositive(format!("det B = {det_b:e}")));
    }
    let g = bn * det_b.powf(-1.0 / 9.0);
    let chol = nalgebra::Cholesky::new(g.clone()).ok_or_else(|| G2Error::NotPositive("induced bilinear form is indefinite".into()))?;
    let l = chol.l();
    let p = l
        .transpose()
        .try_inverse()
        .ok_or_else(|| G2Error::NotPositive("singular metric".into()))?;
    let p_inv = l.transpose();
    let to_mat = |m: &DMatrix<f64>| Mat::from_fn(DIM, DIM, |i, j| m[(i, j)]);
    let det_g = g.determinant();
    Ok(G2Structure {
        phi: phi.clone(),
        metric: to_mat(&g),
        volume: fixtures::vol::<f64>().scale(&det_g.sqrt()),
        frame: to_mat(&p),
        frame_inv: to_mat(&p_inv),
        standard: false,
    })
}

/// Torsion data of a G2-structure on (g, μ).
#[derive(Clone, Debug)]
pub struct TorsionReport<S: Scalar> {
    pub closed: bool,
    /// max |coefficient| of dφ.
    pub closed_residual: f64,
    pub tau: Option<KForm<S>>,
    pub tau_norm_sq: Option<S>,
    pub dtau: Option<KForm<S>>,
    pub erp: bool,
    /// max |coefficient| of 6dτ − |τ|²φ − ∗(τ∧τ).
    pub erp_residual: f64,
    /// τ_λ + τ_A, available for the standard φ when 𝔥 is an ideal.
    pub split_tau: Option<KForm<S>>,
    pub split_agrees: Option<bool>,
}

impl<S: Scalar> TorsionReport<S> {
    pub fn tau_is(&self, expected: &KForm<S>, tol: &Tolerances) -> bool {
        self.tau.as_ref().is_some_and(|t| t.approx_eq(expected, tol))
    }
}

/// 6dτ − |τ|²φ − ∗(τ∧τ).
pub fn erp_defect<S: Scalar>(mu: &Bracket<S>, structure: &G2Structure<S>, tau: &KForm<S>) -> KForm<S> {
    let norm = structure.norm_sq(tau);
    mu.d(tau).scale(&S::from_int(6)) - structure.phi.scale(&norm) - structure.star(&tau.w(tau))
}

/// τ = −∗d∗φ and the ERP test dτ = ⅙|τ|²φ + ⅙∗(τ∧τ), τ ≠ 0.
pub fn torsion<S: Scalar>(mu: &Bracket<S>, structure: &G2Structure<S>, tol: &Tolerances) -> TorsionReport<S> {
    let dphi = mu.d(&structure.phi);
    let closed = dphi.is_zero_tol(tol);
    let mut report = TorsionReport {
        closed,
        closed_residual: dphi.max_abs(),
        tau: None,
        tau_norm_sq: None,
        dtau: None,
        erp: false,
        erp_residual: f64::INFINITY,
        split_tau: None,
        split_agrees: None,
    };
    if !closed {
        return report;
    }
    let psi = structure.star(&structure.phi);
    let tau = -structure.star(&mu.d(&psi));
    let norm = structure.norm_sq(&tau);
    let defect = erp_defect(mu, structure, &tau);
    report.erp_residual = defect.max_abs();
    report.erp = !tau.is_zero_tol(tol) && defect.is_zero_tol(tol);
    if structure.is_standard() {
        if let Some(split) = split_torsion(mu) {
            report.split_agrees = Some(split.approx_eq(&tau, tol));
            report.split_tau = Some(split);
        }
    }
    report.dtau = Some(mu.d(&tau));
    report.tau_norm_sq = Some(norm);
    report.tau = Some(tau);
    report
}

/// τ_λ + τ_A with τ_λ = −∗₆(d_λω∧ω)∧e⁷ − ∗₆d_λρ⁻ and τ_A = (tr A)ω + θ(Aᵗ)ω,
/// for the standard φ and a bracket with 𝔥 = span(e₁..e₆) an ideal.
pub fn split_torsion<S: Scalar>(mu: &Bracket<S>) -> Option<KForm<S>> {
    let (lambda, a) = mu.split()?;
    let omega = fixtures::omega::<S>();
    let e7 = KForm::basis(&[7]);
    let first = lambda.d(&omega).w(&omega).star6().ok()?.w(&e7);
    let second = lambda.d(&fixtures::rho_minus()).star6().ok()?;
    let tau_a = omega.scale(&a.trace()) + omega.theta(&a.transpose());
    Some(-first - second + tau_a)
}

/// d_μτ expanded in terms of (λ, A) for a closed split bracket.
pub fn delta_la<S: Scalar>(lambda: &Bracket<S>, a: &Endo<S>) -> Result<KForm<S>, FormError> {
    let omega = fixtures::omega::<S>();
    let e7 = KForm::basis(&[7]);
    let tr = a.trace();
    let at = a.transpose();
    let dl_omega = lambda.d(&omega);
    let t1 = -lambda.d(&dl_omega.w(&omega).star6()?).w(&e7);
    let t2 = -lambda.d(&lambda.d(&fixtures::rho_plus::<S>().star6()?).star6()?);
    let t3 = -lambda.d(&fixtures::rho_minus()).star6()?.theta(a).w(&e7);
    let t4 = dl_omega.scale(&tr);
    let t5 = omega.theta(a).w(&e7).scale(&tr);
    let t6 = omega.theta(&at).theta(a).w(&e7);
    let t7 = lambda.d(&omega.theta(&at));
    Ok(t1 + t2 + t3 + t4 + t5 + t6 + t7)
}

/// The unique symmetric Q with θ(Q)φ = d_μτ, for the standard φ.
pub fn solve_q<S: Scalar>(mu: &Bracket<S>, tol: &Tolerances) -> Result<Mat<S>, G2Error> {
    let structure = G2Structure::standard();
    let report = torsion(mu, &structure, tol);
    let dtau = report.dtau.ok_or(G2Error::NotClosed)?;
    let phi = fixtures::phi::<S>();
    let pairs: Vec<(usize, usize)> = (0..DIM).flat_map(|a| (a..DIM).map(move |b| (a, b))).collect();
    let columns: Vec<KForm<S>> = pairs
        .iter()
        .map(|&(a, b)| {
            let mut e = Mat::zeros(DIM, DIM);
            e[(a, b)] = S::one();
            e[(b, a)] = S::one();
            phi.theta_mat(&e)
        })
        .collect();
    let rows = dtau.coeffs().len();
    let system = Mat::from_fn(rows, pairs.len(), |r, c| columns[c].coeffs()[r].clone());
    let x = system.solve(dtau.coeffs(), tol).ok_or(G2Error::Inconsistent)?;
    let mut q = Mat::zeros(DIM, DIM);
    for (&(a, b), v) in pairs.iter().zip(x) {
        q[(a, b)] = v.clone();
        q[(b, a)] = v;
    }
    Ok(q)
}

/// scal² against 3|Ric|² for the metric with e₁..e₇ orthonormal.
#[derive(Clone, Debug, PartialEq)]
pub struct BryantReport<S> {
    pub scal_sq: S,
    pub three_ric_sq: S,
    pub equal: bool,
}

pub fn bryant_equality<S: Scalar>(mu: &Bracket<S>, tol: &Tolerances) -> Result<BryantReport<S>, G2Error> {
    let structure = G2Structure::standard();
    if !torsion(mu, &structure, tol).closed {
        return Err(G2Error::NotClosed);
    }
    let ric = mu.ricci(tol)?;
    let scal = ric.trace();
    let scal_sq = scal.clone() * scal;
    let three_ric_sq = ric.frobenius(&ric) * S::from_int(3);
    let equal = (scal_sq.clone() - three_ric_sq.clone()).is_zero_tol(tol);
    Ok(BryantReport {
        scal_sq,
        three_ric_sq,
        equal,
    })
}

/// c(t) = 6/|τ|² (e^{|τ|² t/6} − 1).
pub fn flow_coefficient(tau_norm_sq: f64, t: f64) -> f64 {
    6.0 / tau_norm_sq * (tau_norm_sq * t / 6.0).exp_m1()
}

/// One sample of the ERP Laplacian-flow line φ(t) = φ + c(t) dτ.
#[derive(Clone, Debug)]
pub struct FlowSample {
    pub t: f64,
    pub c: f64,
    pub structure: G2Structure<f64>,
    pub report: TorsionReport<f64>,
    /// erp_residual divided by max(1, |τ(t)|²·max|φ(t)|).
    pub relative_residual: f64,
}

/// Builds φ(t), re-derives its metric and star, and re-runs the torsion and
/// ERP checks for φ(t).
pub fn erp_flow<S: Scalar>(mu: &Bracket<S>, t: f64, tol: &Tolerances) -> Result<FlowSample, G2Error> {
    let mu_f = mu.to_f64();
    let initial = torsion(&mu_f, &G2Structure::standard(), tol);
    if !initial.erp {
        return Err(G2Error::NotErp);
    }
    let norm = initial.tau_norm_sq.expect("ERP report carries |τ|²");
    let dtau = initial.dtau.expect("ERP report carries dτ");
    let c = flow_coefficient(norm, t);
    let phi_t = fixtures::phi::<f64>() + dtau.scale(&c);
    let structure = induce_metric(&phi_t)?;
    let report = torsion(&mu_f, &structure, tol);
    let scale = report.tau_norm_sq.unwrap_or(0.0).abs() * phi_t.max_abs();
    let relative_residual = report.erp_residual / scale.max(1.0);
    Ok(FlowSample {
        t,
        c,
        structure,
        report,
        relative_residual,
    })
}

/// Consequences of the ERP condition for a homogeneous structure.
#[derive(Clone, Debug)]
pub struct ErpDiagnostics<S> {
    pub tau_cubed_zero: bool,
    pub d_tau_sq_zero: bool,
    pub d_star_tau_sq_zero: bool,
    /// {X : ι_X(τ∧τ) = 0}
    pub p: Subspace<S>,
    /// {X : ι_X ∗(τ∧τ) = 0}
    pub q: Subspace<S>,
    pub ricci_on_p: bool,
    pub ricci_on_q: bool,
}

impl<S: Scalar> ErpDiagnostics<S> {
    pub fn all_pass(&self) -> bool {
        self.tau_cubed_zero
            && self.d_tau_sq_zero
            && self.d_star_tau_sq_zero
            && self.p.dim() == 3
            && self.q.dim() == 4
            && self.ricci_on_p
            && self.ricci_on_q
    }
}

fn interior_kernel<S: Scalar>(form: &KForm<S>, tol: &Tolerances) -> Subspace<S> {
    let images: Vec<KForm<S>> = (1..=DIM).map(|i| form.interior_basis(i)).collect();
    let rows = images[0].coeffs().len();
    let m = Mat::from_fn(rows, DIM, |r, c| images[c].coeffs()[r].clone());
    Subspace::span(DIM, &m.null_space(tol), tol)
}

pub fn erp_diagnostics<S: Scalar>(mu: &Bracket<S>, tol: &Tolerances) -> Result<ErpDiagnostics<S>, G2Error> {
    let structure = G2Structure::standard();
    let report = torsion(mu, &structure, tol);
    if !report.erp {
        return Err(G2Error::NotErp);
    }
    let tau = report.tau.expect("ERP report carries τ");
    let norm = report.tau_norm_sq.expect("ERP report carries |τ|²");
    let tt = tau.w(&tau);
    let star_tt = tt.star7();
    let p = interior_kernel(&tt, tol);
    let q = interior_kernel(&star_tt, tol);
    let ric = mu.ricci(tol)?;
    let target = -(norm * S::from_ratio(1, 6));
    let ricci_on_p = p.basis().iter().all(|v| {
        let rv = ric.mul_vec(v);
        rv.iter().zip(v).all(|(a, b)| (a.clone() - target.clone() * b.clone()).is_zero_tol(tol))
    });
    let ricci_on_q = q.basis().iter().all(|v| ric.mul_vec(v).iter().all(|x| x.is_zero_tol(tol)));
    Ok(ErpDiagnostics {
        tau_cubed_zero: tt.w(&tau).is_zero_tol(tol),
        d_tau_sq_zero: mu.d(&tt).is_zero_tol(tol),
        d_star_tau_sq_zero: mu.d(&star_tt).is_zero_tol(tol),
        p,
        q,
        ricci_on_p,
        ricci_on_q,
    })
}

/// The closed, non-ERP example with λ(e₁,e₂) = e₃, λ(e₂,e₃) = 4e₅ and a
/// non-diagonalizable A.
pub fn closed_non_erp_example<S: Scalar>() -> Bracket<S> {
    let z = |n: i64| S::from_int(n);
    let lambda = Bracket::from_constants(&[(1, 2, 3, z(1)), (2, 3, 5, z(4))]);
    let rows: [[i64; 6]; 6] = [
        [1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 2, 0, 0],
        [0, 0, 0, 0, -1, 0],
        [0, 1, 0, 0, 0, -3],
    ];
    let a = Endo::new(&H, Mat::from_fn(6, 6, |i, j| z(rows[i][j])));
    Bracket::from_split(&lambda, &a)
}
