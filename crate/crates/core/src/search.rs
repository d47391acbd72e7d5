//! Levenberg–Marquardt search for ERP quadruples in the 34-coordinate chart.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::formats::render_quadruple;
use crate::g2core::{torsion, G2Structure};
use crate::exterior::fixtures;
use crate::linalg::Mat;
use crate::quad::{condition_ii_matrix, jacobian_with, residual_with, sym, Quadruple, CHART_DIM};
use crate::scalars::Tolerances;

/// A point is accepted as a zero when ‖r‖ is at most this.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance on tr S(A₁)² + tr S(A)² = 1/3.
pub const NORMALIZATION_TOL: f64 = 1e-8;
/// Invariants closer than this mark two hits as the same orbit.
pub const DEDUP_TOL: f64 = 1e-6;

const LAMBDA_START: f64 = 1e-3;
const LAMBDA_MAX: f64 = 1e12;

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("at least one restart is required")]
    NoRestarts,
    #[error("starting point must have {CHART_DIM} coordinates")]
    BadStart,
}

/// Coordinates held fixed during the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CaseConstraint {
    #[default]
    Free,
    /// A₁ = 0.
    Unimodular,
    /// A₁ = diag(a, d).
    DiagonalA1,
}

impl CaseConstraint {
    fn frozen(self, i: usize) -> bool {
        match self {
            CaseConstraint::Free => false,
            CaseConstraint::Unimodular => i < 4,
            CaseConstraint::DiagonalA1 => i == 1 || i == 2,
        }
    }

    fn apply(self, x: &mut [f64]) {
        for (i, v) in x.iter_mut().enumerate() {
            if self.frozen(i) {
                *v = 0.0;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub constraint: CaseConstraint,
    /// Start every restart near this point instead of sampling uniformly.
    pub start: Option<Vec<f64>>,
    /// Half-width of the uniform perturbation around `start`.
    pub noise: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            restarts: 16,
            max_iters: 200,
            constraint: CaseConstraint::Free,
            start: None,
            noise: 1e-3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LmReport {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// ½‖r‖² after each accepted step, starting with the initial value.
    pub objective: Vec<f64>,
    /// Norm of the last accepted step.
    pub last_step: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Damped Gauss–Newton iteration on the ERP residual.
pub fn levenberg_marquardt(x0: &[f64], constraint: CaseConstraint, max_iters: usize) -> LmReport {
    let ii = condition_ii_matrix::<f64>();
    let free: Vec<usize> = (0..CHART_DIM).filter(|&i| !constraint.frozen(i)).collect();
    let mut x = x0.to_vec();
    constraint.apply(&mut x);
    let mut r = residual_with(&ii, &x);
    let mut rn = norm(&r);
    let mut objective = vec![0.5 * rn * rn];
    let mut lambda = LAMBDA_START;
    let mut iterations = 0;
    let mut last_step = 0.0;
    while iterations < max_iters && rn > RESIDUAL_TOL && lambda < LAMBDA_MAX {
        iterations += 1;
        let jac = jacobian_with(&ii, &x);
        let j = DMatrix::from_fn(r.len(), free.len(), |row, col| jac[(row, free[col])]);
        let rv = DVector::from_column_slice(&r);
        let jtj = j.transpose() * &j;
        let g = j.transpose() * rv;
        loop {
            let damped = &jtj + DMatrix::identity(free.len(), free.len()) * lambda;
            let Some(step) = damped.cholesky().map(|c| c.solve(&(-&g))) else {
                lambda *= 10.0;
                if lambda >= LAMBDA_MAX {
                    break;
                }
                continue;
            };
            let mut trial = x.clone();
            for (k, &i) in free.iter().enumerate() {
                trial[i] += step[k];
            }
            let tr = residual_with(&ii, &trial);
            let tn = norm(&tr);
            if tn < rn {
                x = trial;
                r = tr;
                rn = tn;
                objective.push(0.5 * rn * rn);
                last_step = step.norm();
                lambda = (lambda / 10.0).max(1e-15);
                break;
            }
            lambda *= 10.0;
            if lambda >= LAMBDA_MAX {
                break;
            }
        }
    }
    LmReport {
        converged: rn <= RESIDUAL_TOL,
        x,
        residual_norm: rn,
        iterations,
        objective,
        last_step,
    }
}

/// tr S(A₁)² + tr S(A)² − 1/3.
pub fn normalization_defect(q: &Quadruple<f64>) -> f64 {
    let (s1, s) = (sym(&q.a1), sym(&q.a));
    s1.frobenius(&s1) + s.frobenius(&s) - 1.0 / 3.0
}

#[derive(Clone, Debug)]
pub struct Hit {
    pub restart: usize,
    pub x: Vec<f64>,
    pub quadruple: Quadruple<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub normalization_defect: f64,
    pub erp: bool,
    pub invariants: Vec<f64>,
}

impl Hit {
    /// Quadruple file text with float entries and diagnostics in the notes.
    pub fn render(&self, name: &str) -> String {
        let notes = format!(
            "restart {} residual {:.3e} iterations {} normalization {:.3e}",
            self.restart, self.residual_norm, self.iterations, self.normalization_defect
        );
        render_quadruple(&self.quadruple, Some(name), Some(&notes))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    NotConverged { residual_norm: f64 },
    /// Converged, but tr S(A₁)² + tr S(A)² ≠ 1/3.
    Degenerate,
    NotErp,
    Found,
    Duplicate,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    /// One representative per orbit class.
    pub hits: Vec<Hit>,
    /// Every point that passed the filters, duplicates included.
    pub accepted: Vec<Hit>,
    /// One outcome per restart, in restart order.
    pub outcomes: Vec<Outcome>,
}

impl SearchReport {
    pub fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.outcomes.iter().filter(|o| pred(o)).count()
    }
}

fn sorted_eigenvalues(m: &Mat<f64>) -> Vec<f64> {
    let n = m.rows();
    let sym = DMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Spectra that are constant along the orbits of both symmetry groups.
pub fn orbit_invariants(q: &Quadruple<f64>) -> Vec<f64> {
    let xs = [&q.a, &q.b, &q.c];
    let mut left = Mat::zeros(4, 4);
    let mut right = Mat::zeros(4, 4);
    for x in xs {
        left = left + x.transpose() * (*x).clone();
        right = right + (*x).clone() * x.transpose();
    }
    let mut out = sorted_eigenvalues(&(q.a1.transpose() * q.a1.clone()));
    if q.a1.trace().abs() > DEDUP_TOL {
        out.extend(sorted_eigenvalues(&(q.a.transpose() * q.a.clone())));
    }
    out.extend(sorted_eigenvalues(&left));
    out.extend(sorted_eigenvalues(&right));
    out
}

fn start_point(opts: &SearchOptions, restart: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart as u64);
    match &opts.start {
        Some(s) => s.iter().map(|v| v + rng.gen_range(-opts.noise..=opts.noise)).collect(),
        None => (0..CHART_DIM).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
    }
}

fn run_restart(opts: &SearchOptions, restart: usize, tol: &Tolerances) -> Result<Hit, Outcome> {
    let lm = levenberg_marquardt(&start_point(opts, restart), opts.constraint, opts.max_iters);
    if !lm.converged {
        return Err(Outcome::NotConverged { residual_norm: lm.residual_norm });
    }
    let q = Quadruple::from_chart(&lm.x);
    let defect = normalization_defect(&q);
    if defect.abs() > NORMALIZATION_TOL {
        return Err(Outcome::Degenerate);
    }
    let mu = q.to_bracket();
    let report = torsion(&mu, &G2Structure::standard(), tol);
    let erp = mu.check_jacobi(tol).passes() && report.erp && report.tau_is(&fixtures::tau(), tol);
    if !erp {
        return Err(Outcome::NotErp);
    }
    Ok(Hit {
        restart,
        invariants: orbit_invariants(&q),
        x: lm.x,
        quadruple: q,
        residual_norm: lm.residual_norm,
        iterations: lm.iterations,
        normalization_defect: defect,
        erp,
    })
}

/// Runs independent restarts in parallel and keeps one hit per orbit class.
pub fn find_erp(opts: &SearchOptions, tol: &Tolerances) -> Result<SearchReport, SearchError> {
    if opts.restarts == 0 {
        return Err(SearchError::NoRestarts);
    }
    if opts.start.as_ref().is_some_and(|s| s.len() != CHART_DIM) {
        return Err(SearchError::BadStart);
    }
    let results: Vec<Result<Hit, Outcome>> = (0..opts.restarts).into_par_iter().map(|i| run_restart(opts, i, tol)).collect();
    let mut hits: Vec<Hit> = Vec::new();
    let mut accepted: Vec<Hit> = Vec::new();
    let mut outcomes = Vec::with_capacity(results.len());
    for result in results {
        match result {
            Ok(hit) => {
                let seen = hits.iter().any(|h| {
                    h.invariants.len() == hit.invariants.len()
                        && h.invariants.iter().zip(&hit.invariants).all(|(a, b)| (a - b).abs() < DEDUP_TOL)
                });
                if seen {
                    outcomes.push(Outcome::Duplicate);
                } else {
                    outcomes.push(Outcome::Found);
                    hits.push(hit.clone());
                }
                accepted.push(hit);
            }
            Err(o) => outcomes.push(o),
        }
    }
    Ok(SearchReport { hits, accepted, outcomes })
}
