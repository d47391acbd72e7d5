//! Text formats for quadruples and raw brackets.
//!
//! Quadruple files:
//!
//! ```text
//! # comment
//! name = M2
//! notes = free text
//! [A1]
//! 0 0
//! 0 1/3
//! [A]
//! ... four rows of four entries ...
//! [B]
//! [C]
//! ```
//!
//! Bracket files list nonzero structure constants, one `i j k value` per line,
//! meaning ⟨μ(e_i, e_j), e_k⟩ = value with i < j.
//!
//! Entries are surd literals (exact) or decimals (float). Entries may not
//! contain whitespace. A document is exact iff every entry is a surd literal.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::liealg::Bracket;
use crate::linalg::Mat;
use crate::quad::Quadruple;
use crate::scalars::{parse_surd, ExactScalar, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// A parsed entry: exact when it is a surd literal.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Entry {
    Exact(ExactScalar),
    Float(f64),
}

impl Entry {
    pub fn to_f64(&self) -> f64 {
        match self {
            Entry::Exact(x) => x.to_f64(),
            Entry::Float(x) => *x,
        }
    }
}

pub fn parse_entry(token: &str, line: usize) -> Result<Entry, ParseError> {
    match parse_surd(token) {
        Ok(x) => Ok(Entry::Exact(x)),
        Err(surd_error) => {
            let looks_decimal = token.contains(['.', 'e', 'E']) && !token.contains("sqrt");
            match token.parse::<f64>() {
                Ok(v) if looks_decimal && v.is_finite() => Ok(Entry::Float(v)),
                _ => Err(err(line, format!("bad entry '{token}': {surd_error}"))),
            }
        }
    }
}

/// Quadruple entries in the backend they were written in.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadEntries {
    Exact(Quadruple<ExactScalar>),
    Float(Quadruple<f64>),
}

impl QuadEntries {
    pub fn to_f64(&self) -> Quadruple<f64> {
        match self {
            QuadEntries::Exact(q) => q.to_f64(),
            QuadEntries::Float(q) => q.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadrupleDoc {
    pub name: Option<String>,
    pub notes: Option<String>,
    pub entries: QuadEntries,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    }
    .trim()
}

/// True when the text looks like a quadruple file (has a section header).
pub fn is_quadruple_text(text: &str) -> bool {
    text.lines().any(|l| strip_comment(l).starts_with('['))
}

pub fn parse_quadruple(text: &str) -> Result<QuadrupleDoc, ParseError> {
    const SECTIONS: [(&str, usize); 4] = [("A1", 2), ("A", 4), ("B", 4), ("C", 4)];
    let mut name = None;
    let mut notes = None;
    let mut blocks: [Option<Vec<Vec<Entry>>>; 4] = Default::default();
    let mut current: Option<usize> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let label = header
                .strip_suffix(']')
                .ok_or_else(|| err(line_no, "unterminated section header"))?
                .trim();
            let s = SECTIONS
                .iter()
                .position(|(n, _)| n.eq_ignore_ascii_case(label))
                .ok_or_else(|| err(line_no, format!("unknown section [{label}]")))?;
            if blocks[s].is_some() {
                return Err(err(line_no, format!("duplicate section [{label}]")));
            }
            blocks[s] = Some(Vec::new());
            current = Some(s);
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            if current.is_none() {
                match key.trim() {
                    "name" => name = Some(value.trim().to_string()),
                    "notes" => notes = Some(value.trim().to_string()),
                    other => return Err(err(line_no, format!("unknown field '{other}'"))),
                }
                continue;
            }
        }
        let s = current.ok_or_else(|| err(line_no, "matrix row outside a section"))?;
        let size = SECTIONS[s].1;
        let row = line
            .split_whitespace()
            .map(|t| parse_entry(t, line_no))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != size {
            return Err(err(line_no, format!("[{}] rows need {size} entries, found {}", SECTIONS[s].0, row.len())));
        }
        let rows = blocks[s].as_mut().expect("section opened");
        if rows.len() == size {
            return Err(err(line_no, format!("[{}] has more than {size} rows", SECTIONS[s].0)));
        }
        rows.push(row);
    }
    let mut mats = Vec::new();
    for (s, (label, size)) in SECTIONS.iter().enumerate() {
        let rows = blocks[s].take().ok_or_else(|| err(last_line, format!("missing section [{label}]")))?;
        if rows.len() != *size {
            return Err(err(last_line, format!("[{label}] needs {size} rows, found {}", rows.len())));
        }
        mats.push(rows);
    }
    let exact = mats.iter().flatten().flatten().all(|e| matches!(e, Entry::Exact(_)));
    let entries = if exact {
        let m = |rows: &Vec<Vec<Entry>>| {
            Mat::from_rows(
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(|e| match e {
                                Entry::Exact(x) => x.clone(),
                                Entry::Float(_) => unreachable!("checked exact"),
                            })
                            .collect()
                    })
                    .collect(),
            )
        };
        QuadEntries::Exact(Quadruple::new(m(&mats[0]), m(&mats[1]), m(&mats[2]), m(&mats[3])))
    } else {
        let m = |rows: &Vec<Vec<Entry>>| Mat::from_rows(rows.iter().map(|r| r.iter().map(Entry::to_f64).collect()).collect());
        QuadEntries::Float(Quadruple::new(m(&mats[0]), m(&mats[1]), m(&mats[2]), m(&mats[3])))
    };
    Ok(QuadrupleDoc { name, notes, entries })
}

/// Bracket entries in the backend they were written in.
#[derive(Clone, Debug, PartialEq)]
pub enum BracketEntries {
    Exact(Bracket<ExactScalar>),
    Float(Bracket<f64>),
}

pub fn parse_bracket(text: &str) -> Result<BracketEntries, ParseError> {
    let mut seen = BTreeSet::new();
    let mut entries: Vec<(usize, usize, usize, Entry)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(err(line_no, "expected 'i j k value'"));
        }
        let index = |t: &str| -> Result<usize, ParseError> {
            match t.parse::<usize>() {
                Ok(v) if (1..=7).contains(&v) => Ok(v),
                _ => Err(err(line_no, format!("index '{t}' not in 1..7"))),
            }
        };
        let (i, j, k) = (index(tokens[0])?, index(tokens[1])?, index(tokens[2])?);
        if i >= j {
            return Err(err(line_no, format!("need i < j, got {i} {j}")));
        }
        if !seen.insert((i, j, k)) {
            return Err(err(line_no, format!("duplicate constant ({i},{j},{k})")));
        }
        entries.push((i, j, k, parse_entry(tokens[3], line_no)?));
    }
    let exact = entries.iter().all(|e| matches!(e.3, Entry::Exact(_)));
    Ok(if exact {
        let list: Vec<_> = entries
            .into_iter()
            .map(|(i, j, k, e)| match e {
                Entry::Exact(x) => (i, j, k, x),
                Entry::Float(_) => unreachable!("checked exact"),
            })
            .collect();
        BracketEntries::Exact(Bracket::from_constants(&list))
    } else {
        let list: Vec<_> = entries.into_iter().map(|(i, j, k, e)| (i, j, k, e.to_f64())).collect();
        BracketEntries::Float(Bracket::from_constants(&list))
    })
}

fn format_entry<S: Scalar>(x: &S) -> String {
    if S::is_exact() {
        x.to_string()
    } else {
        // Debug formatting of f64 always carries a '.' or exponent.
        format!("{:?}", x.to_f64())
    }
}

fn render_block<S: Scalar>(out: &mut String, label: &str, m: &Mat<S>) {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| format_entry(&m[(i, j)])).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    writeln!(out, "[{label}]").unwrap();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:<width$}")).collect();
        writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
    }
}

/// Quadruple file text; floats print with full round-trip precision.
pub fn render_quadruple<S: Scalar>(q: &Quadruple<S>, name: Option<&str>, notes: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        writeln!(out, "name = {n}").unwrap();
    }
    if let Some(n) = notes {
        writeln!(out, "notes = {n}").unwrap();
    }
    for (label, m) in [("A1", &q.a1), ("A", &q.a), ("B", &q.b), ("C", &q.c)] {
        out.push('\n');
        render_block(&mut out, label, m);
    }
    out
}

pub fn render_bracket<S: Scalar>(mu: &Bracket<S>) -> String {
    let mut out = String::new();
    for (i, j, k, v) in mu.nonzero_constants() {
        writeln!(out, "{i} {j} {k} {}", format_entry(&v)).unwrap();
    }
    out
}
