//! Matrix text format.
//!
//! ```text
//! 3 2
//! 1 0 1
//! 2 1 1
//! 0 2 0
//! ```
//!
//! The first line holds `n` and the subdiagonal value `s`, then come `n`
//! rows of `n` entries. Entries are integers or `p/q`. Entries below the
//! subdiagonal must be `0` and subdiagonal entries must equal `s`. Blank
//! lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use bohemian_core::arith::parse_scalar;
use bohemian_core::{HessMatrix, Scalar};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Whitespace-separated tokens with 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((c, b))) => {
                out.push((c, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out
}

fn scalar(line: usize, column: usize, text: &str) -> Result<Scalar, ParseError> {
    parse_scalar(text).ok_or_else(|| err(line, column, format!("{text:?} is not an integer or p/q rational")))
}

pub fn parse_matrix(text: &str) -> Result<HessMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let Some((hl, header)) = lines.next() else {
        return Err(err(1, 1, "empty input, expected a header line \"n s\""));
    };
    let head = tokens(header);
    if head.len() != 2 {
        let col = head.get(2).map_or(1, |t| t.0);
        return Err(err(hl, col, "header must be \"n s\""));
    }
    let n: usize = head[0]
        .1
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| err(hl, head[0].0, format!("{:?} is not a positive dimension", head[0].1)))?;
    let s = scalar(hl, head[1].0, head[1].1)?;
    let mut upper = Vec::with_capacity(n * (n + 1) / 2);
    let mut last_line = hl;
    for i in 0..n {
        let Some((ln, row)) = lines.next() else {
            return Err(err(last_line + 1, 1, format!("expected {n} rows, found {i}")));
        };
        last_line = ln;
        let toks = tokens(row);
        if toks.len() != n {
            let col = toks.get(n).map_or(row.chars().count() + 1, |t| t.0);
            return Err(err(ln, col, format!("row {} has {} entries, expected {n}", i + 1, toks.len())));
        }
        for (j, &(col, tok)) in toks.iter().enumerate() {
            let v = scalar(ln, col, tok)?;
            let at = format!("entry ({}, {})", i + 1, j + 1);
            if j + 1 < i && !v.is_zero() {
                return Err(err(ln, col, format!("{at} lies below the subdiagonal and must be 0")));
            }
            if j + 1 == i && v != s {
                return Err(err(ln, col, format!("{at} is on the subdiagonal and must equal s = {s}")));
            }
            if j >= i {
                upper.push(v);
            }
        }
    }
    if let Some((ln, row)) = lines.next() {
        let col = tokens(row).first().map_or(1, |t| t.0);
        return Err(err(ln, col, format!("unexpected content after {n} rows")));
    }
    Ok(HessMatrix::new(n, s, upper).expect("entry count matches n"))
}

/// Text form accepted by [`parse_matrix`].
pub fn write_matrix(m: &HessMatrix) -> String {
    let mut out = format!("{} {}\n", m.n(), m.subdiag());
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}
