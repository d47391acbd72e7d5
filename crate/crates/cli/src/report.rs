use std::fmt::{self, Display};

use g2erp::deform::{rigidity, DeformError, TangentReport};
use g2erp::exterior::fixtures;
use g2erp::g2core::{bryant_equality, erp_diagnostics, erp_flow, torsion, G2Structure};
use g2erp::liealg::{Bracket, NilradicalVerdict};
use g2erp::linalg::Mat;
use g2erp::quad::{check_structure, Quadruple};
use g2erp::scalars::{Scalar, Tolerances};

/// A report line: a pass/fail check or an informational value.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Check(bool),
    Info(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Line {
    pub key: String,
    pub value: Value,
}

impl Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Check(true) => write!(f, "{}=pass", self.key),
            Value::Check(false) => write!(f, "{}=fail", self.key),
            Value::Info(v) => write!(f, "{}={v}", self.key),
        }
    }
}

#[derive(Default)]
pub struct Report {
    pub lines: Vec<Line>,
}

impl Report {
    pub fn check(&mut self, key: impl Into<String>, ok: bool) {
        self.lines.push(Line { key: key.into(), value: Value::Check(ok) });
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.push(Line { key: key.into(), value: Value::Info(value.to_string()) });
    }

    pub fn failures(&self) -> Vec<&str> {
        self.lines
            .iter()
            .filter(|l| l.value == Value::Check(false))
            .map(|l| l.key.as_str())
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn render(&self) -> String {
        let mut out: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        let checks = self.lines.iter().filter(|l| matches!(l.value, Value::Check(_))).count();
        let failed = self.failures();
        if failed.is_empty() {
            out.push_str(&format!("# {checks} checks, all passed\n"));
        } else {
            out.push_str(&format!("# {checks} checks, {} failed: {}\n", failed.len(), failed.join(", ")));
        }
        out
    }
}

fn fmt_scalar<S: Scalar>(x: &S) -> String {
    format!("{:.12}", x.to_f64())
}

/// Ric = −⅓ on ⟨e₃,e₄,e₇⟩ and 0 on 𝔤₁.
fn ricci_pinched<S: Scalar>(mu: &Bracket<S>, tol: &Tolerances) -> bool {
    let t = -S::from_ratio(1, 3);
    let z = S::zero();
    let expected = Mat::diagonal(&[z.clone(), z.clone(), t.clone(), t.clone(), z.clone(), z, t]);
    mu.ricci(tol).is_ok_and(|r| r.approx_eq(&expected, tol))
}

pub fn verify_bracket<S: Scalar>(mu: &Bracket<S>, tol: &Tolerances, report: &mut Report) {
    let jac = mu.check_jacobi(tol);
    report.check("jacobi", jac.passes());
    if !jac.passes() {
        return;
    }
    let t = torsion(mu, &G2Structure::standard(), tol);
    report.check("closed", t.closed);
    if !t.closed {
        report.info("closed.residual", format!("{:.3e}", t.closed_residual));
        return;
    }
    report.check("torsion.normal", t.tau_is(&fixtures::tau(), tol));
    if let Some(n) = &t.tau_norm_sq {
        report.info("torsion.norm_sq", fmt_scalar(n));
    }
    if let Some(agree) = t.split_agrees {
        report.check("torsion.split_agrees", agree);
    }
    report.check("erp", t.erp);
    if let Ok(b) = bryant_equality(mu, tol) {
        report.check("bryant", b.equal);
    }
    if t.erp {
        report.check("ricci.pinched", ricci_pinched(mu, tol));
        match erp_diagnostics(mu, tol) {
            Ok(d) => report.check("diagnostics", d.all_pass()),
            Err(_) => report.check("diagnostics", false),
        }
    }
}

pub fn verify_quadruple<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances, report: &mut Report) {
    let verdict = check_structure(q, tol);
    for (name, ok) in verdict.named_flags() {
        report.check(format!("structure.{name}"), ok);
    }
    match (&verdict.nilradical_verdict, verdict.nilradical_dim) {
        (Some(NilradicalVerdict::Pass { dim }), _) => report.info("nilradical", format!("{dim} (verified)")),
        (Some(NilradicalVerdict::Inconclusive { dim }), _) => report.info("nilradical", format!("{dim} (inconclusive)")),
        (Some(NilradicalVerdict::Fail { reason }), _) => report.info("nilradical", format!("none ({reason})")),
        (None, _) => report.info("nilradical", "unavailable"),
    }
    verify_bracket(&q.to_bracket(), tol, report);
}

pub fn deform_report<S: Scalar>(q: &Quadruple<S>, tol: &Tolerances) -> Result<(TangentReport, Report), DeformError> {
    let r = rigidity(q, tol)?;
    let mut report = Report::default();
    report.info("tangent", r.tangent);
    report.info("orbit", r.orbit);
    report.info("derivations", r.derivations);
    report.info("sum", r.sum);
    report.check("orbit_in_tangent", r.orbit_in_tangent);
    report.check("derivations_in_tangent", r.derivations_in_tangent);
    report.info("rigid", yes_no(r.rigid));
    report.info("equivariantly_rigid", yes_no(r.equivariantly_rigid));
    Ok((r, report))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn summary_line(r: &TangentReport) -> String {
    format!(
        "T̄={}, u·μ={}, 𝔡={}, rigid={}, equivariantly_rigid={}",
        r.tangent,
        r.orbit,
        r.derivations,
        yes_no(r.rigid),
        yes_no(r.equivariantly_rigid)
    )
}

/// Flow samples pass when φ(t) is ERP with relative residual at most this.
pub const FLOW_RESIDUAL_TOL: f64 = 1e-8;

pub fn flow_report<S: Scalar>(mu: &Bracket<S>, times: &[f64], tol: &Tolerances, report: &mut Report) {
    for &t in times {
        let key = format!("flow[t={t}]");
        match erp_flow(mu, t, tol) {
            Ok(sample) => {
                report.check(format!("{key}.erp"), sample.report.erp && sample.relative_residual <= FLOW_RESIDUAL_TOL);
                report.info(format!("{key}.c"), format!("{:.12}", sample.c));
                if let Some(n) = sample.report.tau_norm_sq {
                    report.info(format!("{key}.tau_norm_sq"), format!("{n:.12}"));
                }
                report.info(format!("{key}.residual"), format!("{:.3e}", sample.relative_residual));
            }
            Err(e) => {
                report.check(format!("{key}.erp"), false);
                report.info(format!("{key}.error"), e);
            }
        }
    }
}
