//! Lie brackets on R⁷ given by structure constants, their Chevalley-Eilenberg
//! differentials, and the structural queries used throughout the crate.

use std::fmt;

use thiserror::Error;

use crate::exterior::{fixtures, Endo, KForm, DIM, H};
use crate::linalg::{Mat, Subspace};
use crate::scalars::{Scalar, Tolerances};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("bracket violates the Jacobi identity at (e{0}, e{1}, e{2})")]
    NotJacobi(usize, usize, usize),
    #[error("Lie algebra is not solvable")]
    NotSolvable,
}

/// Lie bracket μ with constants c_{ij}^k = ⟨μ(e_i, e_j), e_k⟩, antisymmetric in
/// (i, j) by construction. Indices are 1-based in the public API.
#[derive(Clone, PartialEq)]
pub struct Bracket<S> {
    c: Vec<S>,
}

fn at(i: usize, j: usize, k: usize) -> usize {
    (i * DIM + j) * DIM + k
}

/// Outcome of [`Bracket::check_jacobi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    /// d∘d vanishes on every basis 1-form.
    pub d_squared_vanishes: bool,
    /// First triple (i<j<k, 1-based) with nonzero Jacobiator.
    pub violation: Option<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn passes(&self) -> bool {
        self.d_squared_vanishes
    }
}

/// Linear conditions imposed on the derivation search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DerivationConstraints {
    /// D preserves span{e₇}, span{e₃,e₄} and span{e₁,e₂,e₅,e₆}.
    pub block_diagonal: bool,
    /// D e₇ = 0.
    pub kills_e7: bool,
    /// D skew with θ(D)ω = 0 and θ(D)ρ⁺ = 0.
    pub su3: bool,
}

impl DerivationConstraints {
    /// The constraint set defining linear deformations: block-diagonal,
    /// vanishing on e₇ and in 𝔰𝔲(3).
    pub fn linear_deformations() -> Self {
        DerivationConstraints {
            block_diagonal: true,
            kills_e7: true,
            su3: true,
        }
    }
}

/// Outcome of the nilradical check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilradicalVerdict {
    /// Nilpotent ideal containing the derived algebra, certified maximal.
    Pass { dim: usize },
    /// A nilpotent ideal containing [𝔤,𝔤] whose maximality could not be certified.
    Inconclusive { dim: usize },
    Fail { reason: String },
}

impl NilradicalVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, NilradicalVerdict::Pass { .. })
    }
}

impl<S: Scalar> Bracket<S> {
    pub fn abelian() -> Self {
        Bracket {
            c: vec![S::zero(); DIM * DIM * DIM],
        }
    }

    /// Builds a bracket from (i, j, k, value) with i ≠ j meaning
    /// ⟨μ(e_i,e_j),e_k⟩ = value. Entries accumulate.
    pub fn from_constants(entries: &[(usize, usize, usize, S)]) -> Self {
        let mut b = Self::abelian();
        for (i, j, k, v) in entries {
            let current = b.get(*i, *j, *k);
            b.set(*i, *j, *k, current + v.clone());
        }
        b
    }

    /// c_{ij}^k (1-based).
    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        self.c[at(i - 1, j - 1, k - 1)].clone()
    }

    fn c0(&self, i: usize, j: usize, k: usize) -> &S {
        &self.c[at(i, j, k)]
    }

    /// Sets c_{ij}^k = v and c_{ji}^k = -v. Setting with i == j requires v = 0.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        if i == j {
            assert!(v.is_exactly_zero(), "μ(e_i, e_i) must vanish");
            return;
        }
        self.c[at(j - 1, i - 1, k - 1)] = -v.clone();
        self.c[at(i - 1, j - 1, k - 1)] = v;
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Bracket<T> {
        Bracket {
            c: self.c.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Bracket<f64> {
        self.map(|x| x.to_f64())
    }

    /// Nonzero constants with i < j, as (i, j, k, value), 1-based.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                for k in 0..DIM {
                    let v = self.c0(i, j, k);
                    if !v.is_exactly_zero() {
                        out.push((i + 1, j + 1, k + 1, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// μ(x, y) for coordinate vectors.
    pub fn apply(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); DIM];
        for i in 0..DIM {
            if x[i].is_exactly_zero() {
                continue;
            }
            for j in 0..DIM {
                if y[j].is_exactly_zero() || i == j {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c0(i, j, k);
                    if !c.is_exactly_zero() {
                        *o = o.clone() + xy.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(e_i) (1-based); column j is μ(e_i, e_j).
    pub fn ad(&self, i: usize) -> Mat<S> {
        Mat::from_fn(DIM, DIM, |k, j| self.c0(i - 1, j, k).clone())
    }

    /// Matrix of ad(x).
    pub fn ad_vec(&self, x: &[S]) -> Mat<S> {
        let mut out = Mat::zeros(DIM, DIM);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_exactly_zero() {
                out = out + self.ad(i + 1).scale(xi);
            }
        }
        out
    }

    /// de^k = -Σ_{i<j} c_{ij}^k e^{ij}.
    fn d_basis_1form(&self, k: usize) -> KForm<S> {
        let mut terms = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let c = self.c0(i, j, k);
                if !c.is_exactly_zero() {
                    terms.push((-c.clone(), [i + 1, j + 1]));
                }
            }
        }
        let refs: Vec<(S, &[usize])> = terms.iter().map(|(c, idx)| (c.clone(), &idx[..])).collect();
        KForm::from_terms(2, &refs)
    }

    /// Chevalley-Eilenberg differential of a left-invariant form.
    pub fn d(&self, form: &KForm<S>) -> KForm<S> {
        let k = form.degree();
        if k == DIM {
            return KForm::zero(DIM);
        }
        let de: Vec<KForm<S>> = (0..DIM).map(|i| self.d_basis_1form(i)).collect();
        let mut out = KForm::zero(k + 1);
        for (idx, c) in form.terms() {
            // d(e^{i1}∧…∧e^{ik}) = Σ_r (-1)^r e^{i1}∧…∧de^{ir}∧…∧e^{ik}
            for r in 0..idx.len() {
                let mut term = KForm::zero(0) + KForm::from_coeffs(0, vec![c.clone()]);
                for (p, &i) in idx.iter().enumerate() {
                    let factor = if p == r { de[i - 1].clone() } else { KForm::basis(&[i]) };
                    term = term.w(&factor);
                }
                out = if r % 2 == 1 { out - term } else { out + term };
            }
        }
        out
    }

    /// Jacobiator μ(e_i,μ(e_j,e_k)) + cyclic, 0-based indices.
    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        let e = |n: usize| {
            let mut v = vec![S::zero(); DIM];
            v[n] = S::one();
            v
        };
        let a = self.apply(&e(i), &self.apply(&e(j), &e(k)));
        let b = self.apply(&e(j), &self.apply(&e(k), &e(i)));
        let c = self.apply(&e(k), &self.apply(&e(i), &e(j)));
        a.into_iter().zip(b).zip(c).map(|((x, y), z)| x + y + z).collect()
    }

    /// Jacobi identity check through d∘d = 0 on basis 1-forms, with the first
    /// violating triple located through the Jacobiator.
    pub fn check_jacobi(&self, tol: &Tolerances) -> JacobiReport {
        let d_squared_vanishes = (1..=DIM).all(|i| {
            let e = KForm::basis(&[i]);
            self.d(&self.d(&e)).is_zero_tol(tol)
        });
        let mut violation = None;
        'outer: for i in 0..DIM {
            for j in i + 1..DIM {
                for k in j + 1..DIM {
                    if self.jacobiator(i, j, k).iter().any(|x| !x.is_zero_tol(tol)) {
                        violation = Some((i + 1, j + 1, k + 1));
                        break 'outer;
                    }
                }
            }
        }
        JacobiReport {
            d_squared_vanishes,
            violation,
        }
    }

    fn require_jacobi(&self, tol: &Tolerances) -> Result<(), LieError> {
        let report = self.check_jacobi(tol);
        if report.passes() {
            Ok(())
        } else {
            let (i, j, k) = report.violation.unwrap_or((0, 0, 0));
            Err(LieError::NotJacobi(i, j, k))
        }
    }

    /// tr ad(e_i), 1-based.
    pub fn trace_ad(&self, i: usize) -> S {
        (0..DIM).fold(S::zero(), |acc, k| acc + self.c0(i - 1, k, k).clone())
    }

    pub fn unimodular(&self, tol: &Tolerances) -> Result<bool, LieError> {
        self.require_jacobi(tol)?;
        Ok((1..=DIM).all(|i| self.trace_ad(i).is_zero_tol(tol)))
    }

    /// [𝔤, 𝔤] = span{μ(e_i, e_j)}.
    pub fn derived_algebra(&self, tol: &Tolerances) -> Result<Subspace<S>, LieError> {
        self.require_jacobi(tol)?;
        Ok(self.bracket_spaces(&Subspace::full(DIM), &Subspace::full(DIM), tol))
    }

    /// span{μ(x, y) : x ∈ a, y ∈ b}.
    pub fn bracket_spaces(&self, a: &Subspace<S>, b: &Subspace<S>, tol: &Tolerances) -> Subspace<S> {
        let mut vectors = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vectors.push(self.apply(x, y));
            }
        }
        Subspace::span(DIM, &vectors, tol)
    }

    pub fn is_ideal(&self, s: &Subspace<S>, tol: &Tolerances) -> bool {
        let image = self.bracket_spaces(&Subspace::full(DIM), s, tol);
        s.contains_subspace(&image, tol)
    }

    /// True when `s` is an ideal whose lower central series reaches zero.
    pub fn is_nilpotent_ideal(&self, s: &Subspace<S>, tol: &Tolerances) -> Result<bool, LieError> {
        self.require_jacobi(tol)?;
        if !self.is_ideal(s, tol) {
            return Ok(false);
        }
        Ok(self.nilpotency_step(s, tol).is_some())
    }

    /// Length of the lower central series of the subalgebra `s`, if it
    /// terminates.
    pub fn nilpotency_step(&self, s: &Subspace<S>, tol: &Tolerances) -> Option<usize> {
        let mut current = s.clone();
        for step in 0..=DIM {
            if current.dim() == 0 {
                return Some(step);
            }
            let next = self.bracket_spaces(s, &current, tol);
            if next.dim() == current.dim() {
                return None;
            }
            current = next;
        }
        None
    }

    pub fn is_solvable(&self, tol: &Tolerances) -> Result<bool, LieError> {
        self.require_jacobi(tol)?;
        let mut current = Subspace::full(DIM);
        while current.dim() > 0 {
            let next = self.bracket_spaces(&current, &current, tol);
            if next.dim() == current.dim() {
                return Ok(false);
            }
            current = next;
        }
        Ok(true)
    }

    /// Checks that `candidate` is the nilradical of a solvable bracket.
    ///
    /// Part (a): candidate is a nilpotent ideal containing [𝔤,𝔤]. Part (b),
    /// maximality: no direction in a complement may have nilpotent ad. Sample
    /// directions {±w_i, w_i ± w_j} and a 9-point grid on every coordinate
    /// 2-plane of the complement are tested through the characteristic
    /// polynomial of ad. If none is nilpotent, maximality is certified when
    /// the trace form tr(ad x ad y) is positive definite on the complement
    /// (a nilpotent ad x forces tr(ad x)² = 0); otherwise the verdict is
    /// inconclusive.
    pub fn verify_nilradical(&self, candidate: &Subspace<S>, tol: &Tolerances) -> Result<NilradicalVerdict, LieError> {
        if !self.is_solvable(tol)? {
            return Err(LieError::NotSolvable);
        }
        let derived = self.derived_algebra(tol)?;
        if !candidate.contains_subspace(&derived, tol) {
            return Ok(NilradicalVerdict::Fail {
                reason: "candidate does not contain [g,g]".into(),
            });
        }
        if !self.is_ideal(candidate, tol) {
            return Ok(NilradicalVerdict::Fail {
                reason: "candidate is not an ideal".into(),
            });
        }
        if self.nilpotency_step(candidate, tol).is_none() {
            return Ok(NilradicalVerdict::Fail {
                reason: "candidate is not nilpotent".into(),
            });
        }
        let complement = candidate.complement_coordinates(tol);
        let unit = |i: usize| {
            let mut v = vec![S::zero(); DIM];
            v[i] = S::one();
            v
        };
        let combo = |i: usize, a: i64, j: usize, b: i64| {
            let mut v = vec![S::zero(); DIM];
            v[i] = S::from_int(a);
            v[j] = S::from_int(b);
            v
        };
        let mut samples: Vec<Vec<S>> = Vec::new();
        for &i in &complement {
            samples.push(unit(i));
            samples.push(unit(i).into_iter().map(|x| -x).collect());
        }
        for (p, &i) in complement.iter().enumerate() {
            for &j in &complement[p + 1..] {
                samples.push(combo(i, 1, j, 1));
                samples.push(combo(i, 1, j, -1));
                for a in [1, 2, -3] {
                    for b in [1, -2, 3] {
                        samples.push(combo(i, a, j, b));
                    }
                }
            }
        }
        for v in &samples {
            if is_nilpotent(&self.ad_vec(v), tol) {
                return Ok(NilradicalVerdict::Fail {
                    reason: format!("complement direction {:?} has nilpotent ad", v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                });
            }
        }
        let ads: Vec<Mat<S>> = complement.iter().map(|&i| self.ad(i + 1)).collect();
        let gram = Mat::from_fn(ads.len(), ads.len(), |a, b| (&ads[a] * &ads[b]).trace());
        let dim = candidate.dim();
        if is_positive_definite(&gram, tol) {
            Ok(NilradicalVerdict::Pass { dim })
        } else {
            Ok(NilradicalVerdict::Inconclusive { dim })
        }
    }

    /// Derivations of μ subject to optional linear constraints, as a subspace
    /// of gl(7) in row-major coordinates (D_{ab} at index 7a + b, D e_b = Σ_a D_{ab} e_a).
    pub fn derivations(&self, constraints: DerivationConstraints, tol: &Tolerances) -> Result<Subspace<S>, LieError> {
        self.require_jacobi(tol)?;
        let n = DIM * DIM;
        let var = |a: usize, b: usize| a * DIM + b;
        let mut rows: Vec<Vec<S>> = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                for k in 0..DIM {
                    let mut row = vec![S::zero(); n];
                    // (D μ(e_i,e_j))_k = Σ_l D_{kl} c_{ij}^l
                    for l in 0..DIM {
                        let c = self.c0(i, j, l);
                        if !c.is_exactly_zero() {
                            row[var(k, l)] = row[var(k, l)].clone() + c.clone();
                        }
                    }
                    // - μ(D e_i, e_j)_k - μ(e_i, D e_j)_k
                    for a in 0..DIM {
                        let c1 = self.c0(a, j, k);
                        if !c1.is_exactly_zero() {
                            row[var(a, i)] = row[var(a, i)].clone() - c1.clone();
                        }
                        let c2 = self.c0(i, a, k);
                        if !c2.is_exactly_zero() {
                            row[var(a, j)] = row[var(a, j)].clone() - c2.clone();
                        }
                    }
                    if row.iter().any(|x| !x.is_exactly_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let unit_row = |idx: usize| {
            let mut row = vec![S::zero(); n];
            row[idx] = S::one();
            row
        };
        if constraints.block_diagonal {
            let block = |a: usize| match a {
                6 => 0,
                2 | 3 => 1,
                _ => 2,
            };
            for a in 0..DIM {
                for b in 0..DIM {
                    if block(a) != block(b) {
                        rows.push(unit_row(var(a, b)));
                    }
                }
            }
        }
        if constraints.kills_e7 {
            for a in 0..DIM {
                rows.push(unit_row(var(a, 6)));
            }
        }
        if constraints.su3 {
            for a in 0..DIM {
                for b in a..DIM {
                    let mut row = vec![S::zero(); n];
                    row[var(a, b)] = S::one();
                    row[var(b, a)] = row[var(b, a)].clone() + S::one();
                    rows.push(row);
                }
            }
            for form in [fixtures::omega::<S>(), fixtures::rho_plus::<S>()] {
                let images: Vec<KForm<S>> = (0..n)
                    .map(|idx| {
                        let mut e = Mat::zeros(DIM, DIM);
                        e[(idx / DIM, idx % DIM)] = S::one();
                        form.theta_mat(&e)
                    })
                    .collect();
                for comp in 0..images[0].coeffs().len() {
                    rows.push(images.iter().map(|f| f.coeffs()[comp].clone()).collect());
                }
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::full(n));
        }
        let m = Mat::from_rows(rows);
        let basis = m.null_space(tol);
        Ok(Subspace::span(n, &basis, tol))
    }

    /// Whether D (7×7) is a derivation of μ.
    pub fn is_derivation(&self, d: &Mat<S>, tol: &Tolerances) -> bool {
        self.derivation_defect(d).is_zero_tol(tol)
    }

    /// D·μ := D μ(·,·) − μ(D·,·) − μ(·,D·), the infinitesimal action of gl(7).
    pub fn derivation_defect(&self, d: &Mat<S>) -> Bracket<S> {
        let mut out = Bracket::abelian();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let ei: Vec<S> = (0..DIM).map(|r| if r == i { S::one() } else { S::zero() }).collect();
                let ej: Vec<S> = (0..DIM).map(|r| if r == j { S::one() } else { S::zero() }).collect();
                let dmu = d.mul_vec(&self.apply(&ei, &ej));
                let left = self.apply(&d.column(i), &ej);
                let right = self.apply(&ei, &d.column(j));
                for k in 0..DIM {
                    let v = dmu[k].clone() - left[k].clone() - right[k].clone();
                    out.set(i + 1, j + 1, k + 1, v);
                }
            }
        }
        out
    }

    /// Natural action h·μ = h μ(h⁻¹·, h⁻¹·).
    pub fn conjugate(&self, h: &Mat<S>, tol: &Tolerances) -> Option<Bracket<S>> {
        let inv = h.inverse(tol)?;
        let mut out = Bracket::abelian();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let v = h.mul_vec(&self.apply(&inv.column(i), &inv.column(j)));
                for (k, x) in v.into_iter().enumerate() {
                    out.set(i + 1, j + 1, k + 1, x);
                }
            }
        }
        Some(out)
    }

    pub fn is_zero_tol(&self, tol: &Tolerances) -> bool {
        self.c.iter().all(|x| x.is_zero_tol(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        self.c.iter().zip(&other.c).all(|(a, b)| (a.clone() - b.clone()).is_zero_tol(tol))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| (a.clone() - b.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// When 𝔥 = span(e₁..e₆) is an ideal, returns μ = λ + μ_A as
    /// (λ, A = ad e₇|_𝔥).
    pub fn split(&self) -> Option<(Bracket<S>, Endo<S>)> {
        for i in 0..DIM {
            for j in 0..DIM {
                if !self.c0(i, j, 6).is_exactly_zero() {
                    return None;
                }
            }
        }
        let mut lambda = Bracket::abelian();
        for i in 0..6 {
            for j in i + 1..6 {
                for k in 0..6 {
                    lambda.set(i + 1, j + 1, k + 1, self.c0(i, j, k).clone());
                }
            }
        }
        let a = Endo::new(&H, Mat::from_fn(6, 6, |k, j| self.c0(6, j, k).clone()));
        Some((lambda, a))
    }

    /// μ = λ + μ_A with μ_A(e₇, v) = A v.
    pub fn from_split(lambda: &Bracket<S>, a: &Endo<S>) -> Bracket<S> {
        let mut out = lambda.clone();
        let full = a.embed();
        for j in 0..6 {
            for k in 0..6 {
                let v = full[(k, j)].clone();
                if !v.is_exactly_zero() {
                    let current = out.c0(6, j, k).clone();
                    out.set(7, j + 1, k + 1, current + v);
                }
            }
        }
        out
    }

    /// Ricci operator of the left-invariant metric making e₁..e₇ orthonormal,
    /// computed from the Levi-Civita connection.
    pub fn ricci(&self, tol: &Tolerances) -> Result<Mat<S>, LieError> {
        self.require_jacobi(tol)?;
        let half = S::from_ratio(1, 2);
        // nabla[i] is the matrix of ∇_{e_i}: column j holds ∇_{e_i} e_j.
        let nabla: Vec<Mat<S>> = (0..DIM)
            .map(|i| {
                Mat::from_fn(DIM, DIM, |k, j| {
                    let v = self.c0(i, j, k).clone() - self.c0(j, k, i).clone() + self.c0(k, i, j).clone();
                    if v.is_exactly_zero() {
                        v
                    } else {
                        v * half.clone()
                    }
                })
            })
            .collect();
        let mut ric: Mat<S> = Mat::zeros(DIM, DIM);
        for a in 0..DIM {
            for i in 0..DIM {
                // R(e_i, e_a) = ∇_i∇_a − ∇_a∇_i − ∇_{μ(e_i,e_a)}
                let mut r = nabla[i].commutator(&nabla[a]);
                for k in 0..DIM {
                    let c = self.c0(i, a, k);
                    if !c.is_exactly_zero() {
                        r = r - nabla[k].scale(c);
                    }
                }
                // Ric(e_a, e_b) += ⟨R(e_i, e_a) e_b, e_i⟩
                for b in 0..DIM {
                    let v = r[(i, b)].clone();
                    if !v.is_exactly_zero() {
                        ric[(a, b)] = ric[(a, b)].clone() + v;
                    }
                }
            }
        }
        Ok(ric)
    }
}

/// Nilpotency through the characteristic polynomial: all non-leading
/// coefficients vanish (Faddeev-LeVerrier).
pub fn is_nilpotent<S: Scalar>(m: &Mat<S>, tol: &Tolerances) -> bool {
    charpoly(m).iter().skip(1).all(|c| c.is_zero_tol(tol))
}

/// Coefficients c₀ = 1, c₁, …, c_n of det(xI − M) = Σ c_k x^{n−k}.
pub fn charpoly<S: Scalar>(m: &Mat<S>) -> Vec<S> {
    let n = m.rows();
    let mut coeffs = vec![S::one()];
    let mut aux = Mat::<S>::zeros(n, n);
    for k in 1..=n {
        aux = &(m.clone()) * &aux + Mat::identity(n).scale(&coeffs[k - 1]);
        let prod = m * &aux;
        let ck = -(prod.trace() * S::from_ratio(1, k as i64));
        coeffs.push(ck);
    }
    coeffs
}

/// Sylvester's criterion; signs of exact minors are read from their float
/// value, which is accurate for nonzero field elements.
pub fn is_positive_definite<S: Scalar>(m: &Mat<S>, tol: &Tolerances) -> bool {
    (1..=m.rows()).all(|k| {
        let minor = Mat::from_fn(k, k, |i, j| m[(i, j)].clone());
        let det = minor.determinant(tol);
        !det.is_zero_tol(tol) && det.to_f64() > 0.0
    })
}

impl<S: Scalar> fmt::Debug for Bracket<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bracket[")?;
        for (i, j, k, v) in self.nonzero_constants() {
            write!(f, " ({i},{j};{k})={v}")?;
        }
        write!(f, " ]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ExactScalar;

    type E = ExactScalar;

    fn q(n: i64, d: i64) -> E {
        E::from_ratio(n, d)
    }

    #[test]
    fn abelian_is_trivial() {
        let tol = Tolerances::default();
        let mu = Bracket::<E>::abelian();
        assert!(mu.d(&fixtures::phi()).is_exactly_zero());
        assert!(mu.check_jacobi(&tol).passes());
        assert!(mu.unimodular(&tol).unwrap());
        assert_eq!(mu.derived_algebra(&tol).unwrap().dim(), 0);
        assert_eq!(mu.derivations(DerivationConstraints::default(), &tol).unwrap().dim(), 49);
        assert!(mu.ricci(&tol).unwrap().is_zero_tol(&tol));
    }

    #[test]
    fn jacobi_violation_located() {
        let tol = Tolerances::default();
        let mu = Bracket::from_constants(&[(1, 2, 3, q(1, 1)), (1, 3, 1, q(1, 1))]);
        let report = mu.check_jacobi(&tol);
        assert!(!report.passes());
        assert_eq!(report.violation, Some((1, 2, 3)));
        assert_eq!(mu.unimodular(&tol), Err(LieError::NotJacobi(1, 2, 3)));
    }

    #[test]
    fn d_of_one_forms_and_sign() {
        // μ(e1,e2) = e3  =>  de^3 = -e^{12}
        let mu = Bracket::from_constants(&[(1, 2, 3, q(1, 1))]);
        assert_eq!(mu.d(&KForm::basis(&[3])), -KForm::<E>::basis(&[1, 2]));
        // Heisenberg: d(e^3 ∧ e^1) = -e^{12} ∧ e^1 = 0
        assert!(mu.d(&KForm::basis(&[3, 1])).is_exactly_zero());
    }

    #[test]
    fn split_roundtrip_and_d_a_formula() {
        let a = Endo::new(&H, Mat::from_fn(6, 6, |i, j| if i == j { q(i as i64 + 1, 3) } else if j == i + 1 { q(1, 2) } else { q(0, 1) }));
        let mu = Bracket::from_split(&Bracket::abelian(), &a);
        let (lambda, a2) = mu.split().unwrap();
        assert!(lambda.is_zero_tol(&Tolerances::default()));
        assert_eq!(a2, a);
        // d_A α = (-1)^k θ(A) α ∧ e^7 for α on 𝔥
        let alpha = KForm::from_terms(2, &[(q(1, 1), &[1, 3]), (q(2, 1), &[4, 6])]);
        let expected = alpha.theta(&a).w(&KForm::basis(&[7]));
        assert_eq!(mu.d(&alpha), expected);
    }

    #[test]
    fn charpoly_of_nilpotent_and_diagonal() {
        let tol = Tolerances::default();
        let n = Mat::from_fn(3, 3, |i, j| if j == i + 1 { q(1, 1) } else { q(0, 1) });
        assert!(is_nilpotent(&n, &tol));
        let d = Mat::diagonal(&[q(1, 1), q(2, 1)]);
        assert_eq!(charpoly(&d), vec![q(1, 1), q(-3, 1), q(2, 1)]);
    }

    #[test]
    fn nilradical_rejects_non_solvable_and_non_ideal() {
        let tol = Tolerances::default();
        // so(3) on e1,e2,e3
        let so3 = Bracket::from_constants(&[(1, 2, 3, q(1, 1)), (2, 3, 1, q(1, 1)), (3, 1, 2, q(1, 1))]);
        assert_eq!(so3.verify_nilradical(&Subspace::zero(7), &tol), Err(LieError::NotSolvable));
        // μ(e7, e1) = e1: nilradical is span(e1..e6)
        let mu = Bracket::from_constants(&[(7, 1, 1, q(1, 1))]);
        let h = Subspace::coordinate(7, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(mu.verify_nilradical(&h, &tol).unwrap(), NilradicalVerdict::Pass { dim: 6 });
        let small = Subspace::coordinate(7, &[0, 1, 2]);
        assert!(matches!(mu.verify_nilradical(&small, &tol).unwrap(), NilradicalVerdict::Fail { .. }));
        let too_big = Subspace::full(7);
        assert!(matches!(mu.verify_nilradical(&too_big, &tol).unwrap(), NilradicalVerdict::Fail { .. }));
    }
}
