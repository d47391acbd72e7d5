use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use g2erp::formats::{is_quadruple_text, parse_bracket, parse_entry, parse_quadruple, BracketEntries, Entry, QuadEntries};
use g2erp::quad::catalog_source;

/// A loaded input file in the backend its entries were written in.
pub enum Input {
    Quadruple { name: Option<String>, entries: QuadEntries },
    Bracket(BracketEntries),
}

/// Reads `catalog:NAME` or a file path.
pub fn read_source(path: &str) -> Result<String> {
    match path.strip_prefix("catalog:") {
        Some(name) => Ok(catalog_source(name)?.to_string()),
        None => fs::read_to_string(path).with_context(|| format!("cannot read {path}")),
    }
}

pub fn load(path: &str) -> Result<Input> {
    let text = read_source(path)?;
    if is_quadruple_text(&text) {
        let doc = parse_quadruple(&text).with_context(|| path.to_string())?;
        Ok(Input::Quadruple { name: doc.name, entries: doc.entries })
    } else {
        Ok(Input::Bracket(parse_bracket(&text).with_context(|| path.to_string())?))
    }
}

/// One entry override `X(i,j)=value` with 1-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Mutation {
    pub block: String,
    pub row: usize,
    pub col: usize,
    pub value: Entry,
}

pub fn parse_mutation(spec: &str) -> Result<Mutation> {
    let bad = || anyhow!("malformed mutation '{spec}', expected e.g. A(3,3)=0");
    let (lhs, value) = spec.split_once('=').ok_or_else(bad)?;
    let (block, rest) = lhs.split_once('(').ok_or_else(bad)?;
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let (i, j) = inner.split_once(',').ok_or_else(bad)?;
    let row: usize = i.trim().parse().map_err(|_| bad())?;
    let col: usize = j.trim().parse().map_err(|_| bad())?;
    let block = block.trim().to_string();
    let size = match block.as_str() {
        "A1" => 2,
        "A" | "B" | "C" => 4,
        _ => bail!("unknown block '{block}' in mutation '{spec}'"),
    };
    if row == 0 || col == 0 || row > size || col > size {
        bail!("index out of range in mutation '{spec}'");
    }
    let value = parse_entry(value.trim(), 0).map_err(|e| anyhow!("mutation '{spec}': {}", e.message))?;
    Ok(Mutation { block, row, col, value })
}

pub fn apply_mutations(entries: QuadEntries, mutations: &[Mutation]) -> QuadEntries {
    let any_float = mutations.iter().any(|m| matches!(m.value, Entry::Float(_)));
    match entries {
        QuadEntries::Exact(mut q) if !any_float => {
            for m in mutations {
                let Entry::Exact(v) = &m.value else { unreachable!() };
                let target = match m.block.as_str() {
                    "A1" => &mut q.a1,
                    "A" => &mut q.a,
                    "B" => &mut q.b,
                    _ => &mut q.c,
                };
                target[(m.row - 1, m.col - 1)] = v.clone();
            }
            QuadEntries::Exact(q)
        }
        other => {
            let mut q = other.to_f64();
            for m in mutations {
                let target = match m.block.as_str() {
                    "A1" => &mut q.a1,
                    "A" => &mut q.a,
                    "B" => &mut q.b,
                    _ => &mut q.c,
                };
                target[(m.row - 1, m.col - 1)] = m.value.to_f64();
            }
            QuadEntries::Float(q)
        }
    }
}

/// Converts the entries to floats when requested.
pub fn force_float(entries: QuadEntries, float: bool) -> QuadEntries {
    match entries {
        QuadEntries::Exact(q) if float => QuadEntries::Float(q.to_f64()),
        other => other,
    }
}
