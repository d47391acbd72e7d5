//! ERP normal form: quadruples (A₁, A, B, C), their structure conditions,
//! the example catalog and the 34-coordinate chart.
//!
//! 4×4 blocks act on 𝔤₁ in the basis (e₁, e₂, e₅, e₆); A₁ acts on 𝔥₁ in the
//! basis (e₃, e₄). The bracket is ad e₇|𝔥₁ = A₁, ad e₇|𝔤₁ = A,
//! ad e₃|𝔤₁ = B, ad e₄|𝔤₁ = C, all other brackets zero.

use thiserror::Error;

use crate::exterior::{fixtures, Endo, KForm, G1, H1};
use crate::formats::{parse_quadruple, ParseError, QuadEntries};
use crate::g2core::{torsion, G2Structure};
use crate::liealg::{is_nilpotent, Bracket, LieError, NilradicalVerdict};
use crate::linalg::{Mat, Subspace};
use crate::scalars::{ExactScalar, Scalar, Tolerances};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("unknown catalog entry '{0}' (known: J, M2, M3, B, M1)")]
    UnknownName(String),
    #[error("catalog file is malformed: {0}")]
    Catalog(#[from] ParseError),
    #[error("catalog file for '{0}' contains inexact entries")]
    Inexact(String),
}

/// Names of the catalog entries, in the order they are presented.
pub const CATALOG_NAMES: [&str; 5] = ["J", "M2", "M3", "B", "M1"];

const CATALOG_SOURCES: [(&str, &str); 5] = [
    ("J", include_str!("../catalog/J.quad")),
    ("M2", include_str!("../catalog/M2.quad")),
    ("M3", include_str!("../catalog/M3.quad")),
    ("B", include_str!("../catalog/B.quad")),
    ("M1", include_str!("../catalog/M1.quad")),
];

/// Raw text of a catalog file.
pub fn catalog_source(name: &str) -> Result<&'static str, QuadError> {
    CATALOG_SOURCES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| *text)
        .ok_or_else(|| QuadError::UnknownName(name.to_string()))
}

/// Exact catalog quadruple.
pub fn catalog(name: &str) -> Result<Quadruple<ExactScalar>, QuadError> {
    let doc = parse_quadruple(catalog_source(name)?)?;
    match doc.entries {
        QuadEntries::Exact(q) => Ok(q),
        QuadEntries::Float(_) => Err(QuadError::Inexact(name.to_string())),
    }
}

/// The quadruple (A₁, A, B, C).
#[derive(Clone, Debug, PartialEq)]
pub struct Quadruple<S: Scalar> {
    pub a1: Mat<S>,
    pub a: Mat<S>,
    pub b: Mat<S>,
    pub c: Mat<S>,
}

pub fn t7<S: Scalar>() -> Mat<S> {
    Mat::diagonal(&[S::from_ratio(-1, 3), S::zero(), S::from_ratio(1, 3), S::zero()])
}

pub fn t3<S: Scalar>() -> Mat<S> {
    let mut m = Mat::zeros(4, 4);
    m[(0, 3)] = S::from_ratio(1, 3);
    m[(3, 0)] = S::from_ratio(1, 3);
    m
}

pub fn t4<S: Scalar>() -> Mat<S> {
    let mut m = Mat::zeros(4, 4);
    m[(1, 3)] = S::from_ratio(-1, 3);
    m[(3, 1)] = S::from_ratio(-1, 3);
    m
}

/// Symmetric part (X + Xᵗ)/2.
pub fn sym<S: Scalar>(x: &Mat<S>) -> Mat<S> {
    x.sym_part()
}

/// Number of free parameters of sp(𝔤₁, τ).
pub const SP_DIM: usize = 10;

/// The matrix of sp(𝔤₁, τ) with parameters
/// (E11, E12, E15, E16, E21, E25, E26, E55, E56, E65).
pub fn sp_from_params<S: Scalar>(p: &[S]) -> Mat<S> {
    assert_eq!(p.len(), SP_DIM);
    let n = |x: &S| -x.clone();
    Mat::from_rows(vec![
        vec![p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()],
        vec![p[4].clone(), n(&p[0]), p[5].clone(), p[6].clone()],
        vec![p[6].clone(), n(&p[3]), p[7].clone(), p[8].clone()],
        vec![n(&p[5]), p[2].clone(), p[9].clone(), n(&p[7])],
    ])
}

/// Reads the 10 parameters of a matrix assumed to follow the sp pattern.
pub fn sp_params<S: Scalar>(e: &Mat<S>) -> Vec<S> {
    vec![
        e[(0, 0)].clone(),
        e[(0, 1)].clone(),
        e[(0, 2)].clone(),
        e[(0, 3)].clone(),
        e[(1, 0)].clone(),
        e[(1, 2)].clone(),
        e[(1, 3)].clone(),
        e[(2, 2)].clone(),
        e[(2, 3)].clone(),
        e[(3, 2)].clone(),
    ]
}

fn sp_pattern_matches<S: Scalar>(e: &Mat<S>, tol: &Tolerances) -> bool {
    sp_from_params(&sp_params(e)).approx_eq(e, tol)
}

/// θ(E)τ = 0 for E acting on 𝔤₁, cross-checked against the explicit pattern.
pub fn sp_membership<S: Scalar>(e: &Mat<S>, tol: &Tolerances) -> bool {
    let by_theta = fixtures::tau::<S>().theta(&Endo::on_g1(e.clone())).is_zero_tol(tol);
    let by_pattern = sp_pattern_matches(e, tol);
    assert_eq!(by_theta, by_pattern, "sp(g1, τ) characterizations disagree");
    by_theta
}

/// Coordinates (a, b, c, d, E, F, G) of a quadruple: 4 + 3·10 = 34.
pub const CHART_DIM: usize = 4 + 3 * SP_DIM;

impl<S: Scalar> Quadruple<S> {
    pub fn zero() -> Self {
        Quadruple {
            a1: Mat::zeros(2, 2),
            a: Mat::zeros(4, 4),
            b: Mat::zeros(4, 4),
            c: Mat::zeros(4, 4),
        }
    }

    pub fn new(a1: Mat<S>, a: Mat<S>, b: Mat<S>, c: Mat<S>) -> Self {
        assert!(a1.rows() == 2 && a1.cols() == 2, "A1 must be 2×2");
        for m in [&a, &b, &c] {
            assert!(m.rows() == 4 && m.cols() == 4, "A, B, C must be 4×4");
        }
        Quadruple { a1, a, b, c }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Quadruple<T> {
        Quadruple {
            a1: self.a1.map(f),
            a: self.a.map(f),
            b: self.b.map(f),
            c: self.c.map(f),
        }
    }

    pub fn to_f64(&self) -> Quadruple<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        self.a1.approx_eq(&other.a1, tol)
            && self.a.approx_eq(&other.a, tol)
            && self.b.approx_eq(&other.b, tol)
            && self.c.approx_eq(&other.c, tol)
    }

    /// Entries (a, b, c, d) of A₁ = [[a, b], [c, d]].
    pub fn abcd(&self) -> [S; 4] {
        [
            self.a1[(0, 0)].clone(),
            self.a1[(0, 1)].clone(),
            self.a1[(1, 0)].clone(),
            self.a1[(1, 1)].clone(),
        ]
    }

    /// E = A − T₇, F = B − T₃, G = C − T₄.
    pub fn efg(&self) -> [Mat<S>; 3] {
        [
            self.a.clone() - t7(),
            self.b.clone() - t3(),
            self.c.clone() - t4(),
        ]
    }

    pub fn to_bracket(&self) -> Bracket<S> {
        let mut mu = Bracket::abelian();
        for (j, &ej) in H1.iter().enumerate() {
            for (i, &ei) in H1.iter().enumerate() {
                mu.set(7, ej, ei, self.a1[(i, j)].clone());
            }
        }
        for (x, m) in [(7, &self.a), (3, &self.b), (4, &self.c)] {
            for (j, &ej) in G1.iter().enumerate() {
                for (i, &ei) in G1.iter().enumerate() {
                    mu.set(x, ej, ei, m[(i, j)].clone());
                }
            }
        }
        mu
    }

    /// Reads the blocks back from a bracket of quadruple shape.
    pub fn from_bracket(mu: &Bracket<S>, tol: &Tolerances) -> Option<Self> {
        let block = |x: usize, idx: &[usize]| Mat::from_fn(idx.len(), idx.len(), |i, j| mu.get(x, idx[j], idx[i]));
        let q = Quadruple {
            a1: block(7, &H1),
            a: block(7, &G1),
            b: block(3, &G1),
            c: block(4, &G1),
        };
        if q.to_bracket().approx_eq(mu, tol) {
            Some(q)
        } else {
            None
        }
    }

    /// Chart coordinates; `None` when E, F, G are not in sp(𝔤₁, τ).
    pub fn chart(&self, tol: &Tolerances) -> Option<Vec<S>> {
        let mut x: Vec<S> = self.abcd().to_vec();
        for m in self.efg() {
            if !sp_pattern_matches(&m, tol) {
                return None;
            }
            x.extend(sp_params(&m));
        }
        Some(x)
    }

    /// Chart coordinates of a tangent vector (Ā₁, Ā, B̄, C̄): no T-shift.
    pub fn tangent_chart(&self, tol: &Tolerances) -> Option<Vec<S>> {
        let mut x: Vec<S> = self.abcd().to_vec();
        for m in [&self.a, &self.b, &self.c] {
            if !sp_pattern_matches(m, tol) {
                return None;
            }
            x.extend(sp_params(m));
        }
        Some(x)
    }

    /// Quadruple with the given chart coordinates.
    pub fn from_chart(x: &[S]) -> Self {
        let tangent = Self::tangent_from_chart(x);
        Quadruple {
            a1: tangent.a1,
            a: tangent.a + t7(),
            b: tangent.b + t3(),
            c: tangent.c + t4(),
        }
    }

    /// Tangent vector (Ā₁, Ā, B̄, C̄) with the given chart coordinates.
    pub fn tangent_from_chart(x: &[S]) -> Self {
        assert_eq!(x.len(), CHART_DIM);
        Quadruple {
            a1: Mat::from_rows(vec![vec![x[0].clone(), x[1].clone()], vec![x[2].clone(), x[3].clone()]]),
            a: sp_from_params(&x[4..14]),
            b: sp_from_params(&x[14..24]),
            c: sp_from_params(&x[24..34]),
        }
    }
}

/// Indices (1-based) of the 2-forms on 𝔤₁, in the order used for residual rows.
const G1_PAIRS: [[usize; 2]; 6] = [[1, 2], [1, 5], [1, 6], [2, 5], [2, 6], [5, 6]];

/// Rows of the residual: 6 from condition (ii), 3·16 from the Jacobi identities.
pub const RESIDUAL_DIM: usize = 6 + 3 * 16;

/// Condition (ii) is linear in the chart: (ii)(x) = M x with M of size 6×34.
pub fn condition_ii_matrix<S: Scalar>() -> Mat<S> {
    let mut m = Mat::zeros(6, CHART_DIM);
    for col in 0..CHART_DIM {
        let mut x = vec![S::zero(); CHART_DIM];
        x[col] = S::one();
        let form = condition_ii_defect(&Quadruple::from_chart(&x));
        for (r, pair) in G1_PAIRS.iter().enumerate() {
            m[(r, col)] = form.component(pair);
        }
    }
    m
}

fn push_matrix<S: Scalar>(out: &mut Vec<S>, m: &Mat<S>) {
    out.extend(m.data().iter().cloned());
}

/// Residual of condition (ii) and the Jacobi identities at chart point x,
/// given a precomputed [`condition_ii_matrix`].
pub fn residual_with<S: Scalar>(ii: &Mat<S>, x: &[S]) -> Vec<S> {
    let q = Quadruple::from_chart(x);
    let mut out = ii.mul_vec(x);
    for m in jacobi_defects(&q) {
        push_matrix(&mut out, &m);
    }
    out
}

pub fn residual<S: Scalar>(x: &[S]) -> Vec<S> {
    residual_with(&condition_ii_matrix(), x)
}

/// Derivative of the Jacobi defects at q along the tangent vector v.
pub fn jacobi_linearization<S: Scalar>(q: &Quadruple<S>, v: &Quadruple<S>) -> [Mat<S>; 3] {
    let [a, b, c, d] = q.abcd();
    let [va, vb, vc, vd] = v.abcd();
    [
        v.a.commutator(&q.b) + q.a.commutator(&v.b) - q.b.scale(&va) - v.b.scale(&a) - q.c.scale(&vc) - v.c.scale(&c),
        v.a.commutator(&q.c) + q.a.commutator(&v.c) - q.b.scale(&vb) - v.b.scale(&b) - q.c.scale(&vd) - v.c.scale(&d),
        v.b.commutator(&q.c) + q.b.commutator(&v.c),
    ]
}

/// Jacobian of [`residual_with`] at x (54×34). The residual is quadratic, so
/// this is also the linear system of first-order ERP deformations at x.
pub fn jacobian_with<S: Scalar>(ii: &Mat<S>, x: &[S]) -> Mat<S> {
    let q = Quadruple::from_chart(x);
    let mut jac = Mat::zeros(RESIDUAL_DIM, CHART_DIM);
    for col in 0..CHART_DIM {
        let mut e = vec![S::zero(); CHART_DIM];
        e[col] = S::one();
        let v = Quadruple::tangent_from_chart(&e);
        for r in 0..6 {
            jac[(r, col)] = ii[(r, col)].clone();
        }
        let mut row = 6;
        for m in jacobi_linearization(&q, &v) {
            for val in m.data() {
                jac[(row, col)] = val.clone();
                row += 1;
            }
        }
    }
    jac
}

pub fn jacobian<S: Scalar>(x: &[S]) -> Mat<S> {
    jacobian_with(&condition_ii_matrix(), x)
}

/// Flags of [`check_structure`].
#[derive(Clone, Debug, PartialEq)]
pub struct StructureVerdict {
    /// E, F, G ∈ sp(𝔤₁, τ).
    pub sp: [bool; 3],
    /// θ(Eᵗ)ω₇ + θ(Fᵗ)ω₃ + θ(Gᵗ)ω₄ = −(tr A₁)ω₇.
    pub condition_ii: bool,
    /// [A,B] = aB + cC, [A,C] = bB + dC, [B,C] = 0.
    pub jacobi: [bool; 3],
    /// The three closedness identities expressed through θ(E), θ(F), θ(G).
    pub closed: [bool; 3],
    /// Ricci constraints (i)–(iv).
    pub ricci: [bool; 4],
    /// Nilradical dimension when the candidate is a verified nilradical.
    pub nilradical_dim: Option<usize>,
    pub nilradical_verdict: Option<NilradicalVerdict>,
    /// ERP verdict with τ = e¹² − e⁵⁶ from the G2 pipeline on the bracket.
    pub erp: bool,
}

impl StructureVerdict {
    /// Every structural flag (excluding the nilradical report and the ERP cross-check).
    pub fn all_pass(&self) -> bool {
        self.sp.iter().all(|x| *x)
            && self.condition_ii
            && self.jacobi.iter().all(|x| *x)
            && self.closed.iter().all(|x| *x)
            && self.ricci.iter().all(|x| *x)
    }

    /// The flag battery and the independent ERP verdict agree.
    pub fn consistent(&self) -> bool {
        self.all_pass() == self.erp
    }

    /// Named flags in a stable order.
    pub fn named_flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("sp.E", self.sp[0]),
            ("sp.F", self.sp[1]),
            ("sp.G", self.sp[2]),
            ("condition_ii", self.condition_ii),
            ("jacobi.AB", self.jacobi[0]),
            ("jacobi.AC", self.jacobi[1]),
            ("jacobi.BC", self.jacobi[2]),
            ("closed.1", self.closed[0]),
            ("closed.2", self.closed[1]),
            ("closed.3", self.closed[2]),
            ("ricci.i", self.ricci[0]),
            ("ricci.ii", self.ricci[1]),
            ("ricci.iii", self.ricci[2]),
            ("ricci.iv", self.ricci[3]),
        ]
    }
}

fn g1_theta<S: Scalar>(m: &Mat<S>, form: &KForm<S>) -> KForm<S> {
    form.theta(&Endo::on_g1(m.clone()))
}

/// The Jacobi identities of the quadruple bracket, as matrices that must vanish.
pub fn jacobi_defects<S: Scalar>(q: &Quadruple<S>) -> [Mat<S>; 3] {
    let [a, b, c, d] = q.abcd();
    [
        q.a.commutator(&q.b) - q.b.scale(&a) - q.c.scale(&c),
        q.a.commutator(&q.c) - q.b.scale(&b) - q.c.scale(&d),
        q.b.commutator(&q.c),
    ]
}

/// Left side minus right side of θ(Eᵗ)ω₇ + θ(Fᵗ)ω₃ + θ(Gᵗ)ω₄ = −(tr A₁)ω₇.
pub fn condition_ii_defect<S: Scalar>(q: &Quadruple<S>) -> KForm<S> {
    let [e, f, g] = q.efg();
    let w7 = fixtures::omega7::<S>();
    g1_theta(&e.transpose(), &w7)
        + g1_theta(&f.transpose(), &fixtures::omega3())
        + g1_theta(&g.transpose(), &fixtures::omega4())
        + w7.scale(&q.a1.trace())
}

fn ricci_constraints<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> [bool; 4] {
    let half = S::from_ratio(1, 2);
    let third = S::from_ratio(1, 3);
    let tr_a1 = q.a1.trace();
    let (s_a1, s_a, s_b, s_c) = (sym(&q.a1), sym(&q.a), sym(&q.b), sym(&q.c));
    let i = (s_a1.frobenius(&s_a1) + s_a.frobenius(&s_a) - third.clone()).is_zero_tol(tol);
    let lhs = (q.a.commutator(&q.a.transpose()) + q.b.commutator(&q.b.transpose()) + q.c.commutator(&q.c.transpose())).scale(&half);
    let ii = lhs.approx_eq(&s_a.scale(&tr_a1), tol);
    let iii = s_a.frobenius(&s_b).is_zero_tol(tol) && s_a.frobenius(&s_c).is_zero_tol(tol);
    let gram = Mat::from_rows(vec![
        vec![s_b.frobenius(&s_b), s_b.frobenius(&s_c)],
        vec![s_b.frobenius(&s_c), s_c.frobenius(&s_c)],
    ]);
    let iv_lhs = gram - q.a1.commutator(&q.a1.transpose()).scale(&half) + s_a1.scale(&tr_a1);
    let iv = iv_lhs.approx_eq(&Mat::identity(2).scale(&third), tol);
    [i, ii, iii, iv]
}

fn closedness_identities<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> [bool; 3] {
    let [a, b, c, d] = q.abcd();
    let [e, f, g] = q.efg();
    let (w7, w3, w4) = (fixtures::omega7::<S>(), fixtures::omega3::<S>(), fixtures::omega4::<S>());
    let first = g1_theta(&f, &w7) + w3.scale(&a) + w4.scale(&c) - g1_theta(&e, &w3)
        + fixtures::omega3_bar::<S>().scale(&S::from_ratio(1, 3));
    let second = g1_theta(&g, &w7) + w3.scale(&b) + w4.scale(&d) - g1_theta(&e, &w4);
    let third = g1_theta(&f, &w4) - g1_theta(&g, &w3);
    [first.is_zero_tol(tol), second.is_zero_tol(tol), third.is_zero_tol(tol)]
}

/// Nilradical candidate: 𝔤₁ when tr A₁ = 0; otherwise the largest of
/// 𝔥, ℝe₄⊕𝔤₁, ℝe₃⊕𝔤₁, 𝔤₁ that is a nilpotent ideal containing [𝔤,𝔤].
pub fn nilradical_candidate<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<Subspace<S>, LieError> {
    let g1 = Subspace::coordinate(7, &[0, 1, 4, 5]);
    if q.a1.trace().is_zero_tol(tol) {
        return Ok(g1);
    }
    let mu = q.to_bracket();
    let derived = mu.derived_algebra(tol)?;
    let candidates = [
        Subspace::coordinate(7, &[0, 1, 2, 3, 4, 5]),
        Subspace::coordinate(7, &[0, 1, 3, 4, 5]),
        Subspace::coordinate(7, &[0, 1, 2, 4, 5]),
        g1.clone(),
    ];
    for s in candidates {
        if s.contains_subspace(&derived, tol) && mu.is_nilpotent_ideal(&s, tol)? {
            return Ok(s);
        }
    }
    Ok(g1)
}

/// Evaluates every structural identity of the ERP normal form and
/// cross-checks with the G2 torsion pipeline.
pub fn check_structure<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> StructureVerdict {
    let [e, f, g] = q.efg();
    let sp = [sp_membership(&e, tol), sp_membership(&f, tol), sp_membership(&g, tol)];
    let condition_ii = condition_ii_defect(q).is_zero_tol(tol);
    let jd = jacobi_defects(q);
    let jacobi = [jd[0].is_zero_tol(tol), jd[1].is_zero_tol(tol), jd[2].is_zero_tol(tol)];
    let closed = closedness_identities(q, tol);
    let ricci = ricci_constraints(q, tol);
    let mu = q.to_bracket();
    let report = torsion(&mu, &G2Structure::standard(), tol);
    let erp = report.erp && report.tau_is(&fixtures::tau(), tol);
    let (nilradical_dim, nilradical_verdict) = if jacobi.iter().all(|x| *x) {
        match nilradical_candidate(q, tol).and_then(|cand| mu.verify_nilradical(&cand, tol)) {
            Ok(v) => {
                let dim = match &v {
                    NilradicalVerdict::Pass { dim } => Some(*dim),
                    _ => None,
                };
                (dim, Some(v))
            }
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    StructureVerdict {
        sp,
        condition_ii,
        jacobi,
        closed,
        ricci,
        nilradical_dim,
        nilradical_verdict,
        erp,
    }
}

/// Report of [`unimodular_specialization`].
#[derive(Clone, Debug, PartialEq)]
pub enum Specialization {
    Unimodular {
        a1_zero: bool,
        symmetric: bool,
        commuting: bool,
        /// {√3A, √3B, √3C} orthonormal for the Frobenius inner product.
        orthonormal: bool,
    },
    NonUnimodular {
        nilradical_dim: usize,
        a1_normal: bool,
        a_normal: bool,
        b_nilpotent: bool,
        c_nilpotent: bool,
        a_b_symmetric: bool,
        a_b_commute: bool,
        /// b = c = 0 in A₁ = [[a, b], [c, d]].
        a1_diagonal: bool,
    },
}

impl Specialization {
    pub fn unimodular_holds(&self) -> bool {
        matches!(
            self,
            Specialization::Unimodular {
                a1_zero: true,
                symmetric: true,
                commuting: true,
                orthonormal: true
            }
        )
    }
}

fn is_normal<S: Scalar>(m: &Mat<S>, tol: &Tolerances) -> bool {
    m.commutator(&m.transpose()).is_zero_tol(tol)
}

/// Refinements in the unimodular case and the case data otherwise.
pub fn unimodular_specialization<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<Specialization, LieError> {
    if q.a1.trace().is_zero_tol(tol) {
        let mats = [&q.a, &q.b, &q.c];
        let symmetric = mats.iter().all(|m| m.is_symmetric(tol));
        let commuting = (0..3).all(|i| (i + 1..3).all(|j| mats[i].commutator(mats[j]).is_zero_tol(tol)));
        let third = S::from_ratio(1, 3);
        let orthonormal = (0..3).all(|i| {
            (0..3).all(|j| {
                let target = if i == j { third.clone() } else { S::zero() };
                (mats[i].frobenius(mats[j]) - target).is_zero_tol(tol)
            })
        });
        return Ok(Specialization::Unimodular {
            a1_zero: q.a1.is_zero_tol(tol),
            symmetric,
            commuting,
            orthonormal,
        });
    }
    let cand = nilradical_candidate(q, tol)?;
    let [_, b, c, _] = q.abcd();
    Ok(Specialization::NonUnimodular {
        nilradical_dim: cand.dim(),
        a1_normal: is_normal(&q.a1, tol),
        a_normal: is_normal(&q.a, tol),
        b_nilpotent: is_nilpotent(&q.b, tol),
        c_nilpotent: is_nilpotent(&q.c, tol),
        a_b_symmetric: q.a.is_symmetric(tol) && q.b.is_symmetric(tol),
        a_b_commute: q.a.commutator(&q.b).is_zero_tol(tol),
        a1_diagonal: b.is_zero_tol(tol) && c.is_zero_tol(tol),
    })
}
