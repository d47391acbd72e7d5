//! Command-line front end for the g2erp toolkit.

mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use g2erp::formats::{BracketEntries, QuadEntries};
use g2erp::quad::{catalog_source, CATALOG_NAMES};
use g2erp::scalars::Tolerances;
use g2erp::search::{find_erp, CaseConstraint, Outcome, SearchOptions};

use input::{apply_mutations, force_float, load, parse_mutation, Input};
use report::{deform_report, flow_report, summary_line, verify_bracket, verify_quadruple, Report};

#[derive(Parser)]
#[command(name = "g2erp", version, about = "Closed and ERP G2-structures on 7-dimensional Lie algebras")]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Absolute tolerance for float equality tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eq_tol: f64,
    /// Pivot threshold for float rank decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    rank_tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Check Jacobi, closedness, torsion, ERP and structure conditions.
    Verify {
        /// File path or catalog:NAME.
        path: String,
        /// Override one entry, e.g. A(3,3)=0. Repeatable.
        #[arg(long)]
        mutate: Vec<String>,
        /// Use the float backend even for exact input.
        #[arg(long)]
        float: bool,
    },
    /// Rigidity table: dims of the linearized system, orbit tangent and linear deformations.
    Deform {
        path: String,
        #[arg(long)]
        float: bool,
    },
    /// Sample the ERP Laplacian-flow line and recheck ERP along it.
    Flow {
        path: String,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-3,-1,0,1,3")]
        t: Vec<f64>,
    },
    /// Levenberg–Marquardt search for ERP quadruples.
    Search {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        /// Impose A1 = 0.
        #[arg(long, conflicts_with = "diagonal_a1")]
        unimodular: bool,
        /// Impose A1 = diag(a, d).
        #[arg(long)]
        diagonal_a1: bool,
        /// Start near this quadruple (file or catalog:NAME).
        #[arg(long)]
        near: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        noise: f64,
        /// Directory for found quadruple files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List or print the built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

/// Input problems map to exit code 2, failed checks to 1.
enum Failure {
    Input(anyhow::Error),
    Checks,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn finish(report: &Report) -> Result<(), Failure> {
    print!("{}", report.render());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn verify(path: &str, mutate: &[String], float: bool, tol: &Tolerances) -> Result<(), Failure> {
    let mutations = mutate.iter().map(|m| parse_mutation(m)).collect::<Result<Vec<_>>>()?;
    let mut report = Report::default();
    match load(path)? {
        Input::Quadruple { name, entries } => {
            let entries = force_float(apply_mutations(entries, &mutations), float);
            println!("# {} ({})", name.as_deref().unwrap_or(path), backend(&entries));
            match entries {
                QuadEntries::Exact(q) => verify_quadruple(&q, tol, &mut report),
                QuadEntries::Float(q) => verify_quadruple(&q, tol, &mut report),
            }
        }
        Input::Bracket(entries) => {
            if !mutations.is_empty() {
                return Err(Failure::Input(anyhow::anyhow!("--mutate applies to quadruple files only")));
            }
            match entries {
                BracketEntries::Exact(mu) if !float => verify_bracket(&mu, tol, &mut report),
                BracketEntries::Exact(mu) => verify_bracket(&mu.to_f64(), tol, &mut report),
                BracketEntries::Float(mu) => verify_bracket(&mu, tol, &mut report),
            }
        }
    }
    finish(&report)
}

fn backend(entries: &QuadEntries) -> &'static str {
    match entries {
        QuadEntries::Exact(_) => "exact",
        QuadEntries::Float(_) => "float",
    }
}

fn quadruple_input(path: &str) -> Result<QuadEntries> {
    match load(path)? {
        Input::Quadruple { entries, .. } => Ok(entries),
        Input::Bracket(_) => anyhow::bail!("{path}: expected a quadruple file"),
    }
}

fn deform(path: &str, float: bool, tol: &Tolerances) -> Result<(), Failure> {
    let entries = force_float(quadruple_input(path)?, float);
    let result = match &entries {
        QuadEntries::Exact(q) => deform_report(q, tol),
        QuadEntries::Float(q) => deform_report(q, tol),
    };
    match result {
        Ok((tangent, report)) => {
            println!("{}", summary_line(&tangent));
            finish(&report)
        }
        Err(e) => {
            println!("error={e}");
            Err(Failure::Checks)
        }
    }
}

fn flow(path: &str, times: &[f64], tol: &Tolerances) -> Result<(), Failure> {
    let mut report = Report::default();
    match load(path)? {
        Input::Quadruple { entries, .. } => match entries {
            QuadEntries::Exact(q) => flow_report(&q.to_bracket(), times, tol, &mut report),
            QuadEntries::Float(q) => flow_report(&q.to_bracket(), times, tol, &mut report),
        },
        Input::Bracket(BracketEntries::Exact(mu)) => flow_report(&mu, times, tol, &mut report),
        Input::Bracket(BracketEntries::Float(mu)) => flow_report(&mu, times, tol, &mut report),
    }
    finish(&report)
}

#[allow(clippy::too_many_arguments)]
fn search(
    seed: u64,
    restarts: usize,
    max_iters: usize,
    constraint: CaseConstraint,
    near: Option<&str>,
    noise: f64,
    out: Option<&PathBuf>,
    tol: &Tolerances,
) -> Result<(), Failure> {
    let start = match near {
        Some(path) => Some(
            quadruple_input(path)?
                .to_f64()
                .chart(tol)
                .context("starting quadruple has no chart coordinates")?,
        ),
        None => None,
    };
    let opts = SearchOptions { seed, restarts, max_iters, constraint, start, noise };
    let result = find_erp(&opts, tol).map_err(anyhow::Error::from)?;
    let mut report = Report::default();
    report.info("restarts", restarts);
    report.info("not_converged", result.count(|o| matches!(o, Outcome::NotConverged { .. })));
    report.info("degenerate", result.count(|o| *o == Outcome::Degenerate));
    report.info("not_erp", result.count(|o| *o == Outcome::NotErp));
    report.info("duplicates", result.count(|o| *o == Outcome::Duplicate));
    report.info("found", result.hits.len());
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    for (k, hit) in result.hits.iter().enumerate() {
        report.info(format!("hit[{k}].restart"), hit.restart);
        report.info(format!("hit[{k}].residual"), format!("{:.3e}", hit.residual_norm));
        report.check(format!("hit[{k}].erp"), hit.erp);
        if let Some(dir) = out {
            let path = dir.join(format!("hit_{k}.quad"));
            fs::write(&path, hit.render(&format!("hit_{k}"))).with_context(|| format!("cannot write {}", path.display()))?;
            report.info(format!("hit[{k}].file"), path.display());
        }
    }
    report.check("found_any", !result.hits.is_empty());
    finish(&report)
}

fn catalog(action: &CatalogAction) -> Result<(), Failure> {
    match action {
        CatalogAction::List => {
            for name in CATALOG_NAMES {
                println!("{name}");
            }
        }
        CatalogAction::Show { name } => print!("{}", catalog_source(name).map_err(anyhow::Error::from)?),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let tol = Tolerances { eq_tol: cli.tol.eq_tol, rank_tol: cli.tol.rank_tol };
    match &cli.command {
        Command::Verify { path, mutate, float } => verify(path, mutate, *float, &tol),
        Command::Deform { path, float } => deform(path, *float, &tol),
        Command::Flow { path, t } => flow(path, t, &tol),
        Command::Search { seed, restarts, max_iters, unimodular, diagonal_a1, near, noise, out } => {
            let constraint = if *unimodular {
                CaseConstraint::Unimodular
            } else if *diagonal_a1 {
                CaseConstraint::DiagonalA1
            } else {
                CaseConstraint::Free
            };
            search(*seed, *restarts, *max_iters, constraint, near.as_deref(), *noise, out.as_ref(), &tol)
        }
        Command::Catalog { action } => catalog(action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
