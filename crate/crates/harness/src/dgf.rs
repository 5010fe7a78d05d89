//! The DGF text format: a header line `n <N>`, then one arc `u v` per
//! line with 0-based endpoints. `#` starts a comment; blank lines are
//! ignored. Only 7-bit ASCII is accepted.

use std::collections::HashSet;
use std::fmt::Write;

use dichroma_core::Digraph;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Whitespace-separated tokens of `s` with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (ch.is_ascii_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((st + 1, &s[st..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn number(tok: (usize, &str), line: usize) -> Result<usize, ParseError> {
    tok.1.parse().map_err(|_| err(line, tok.0, format!("expected a non-negative integer, found `{}`", tok.1)))
}

pub fn parse_dgf(text: &str) -> Result<Digraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if let Some(pos) = raw.find(|c: char| !c.is_ascii()) {
            let column = raw[..pos].chars().count() + 1;
            return Err(err(line, column, "non-ASCII character"));
        }
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        if toks.is_empty() {
            continue;
        }
        let Some(order) = n else {
            if toks[0].1 != "n" {
                return Err(err(line, toks[0].0, "expected header `n <N>`"));
            }
            let Some(&count) = toks.get(1) else {
                return Err(err(line, body.len() + 1, "missing vertex count"));
            };
            if let Some(extra) = toks.get(2) {
                return Err(err(line, extra.0, "unexpected token after vertex count"));
            }
            n = Some(number(count, line)?);
            continue;
        };
        if toks.len() != 2 {
            let column = toks.get(2).map_or(body.len() + 1, |t| t.0);
            return Err(err(line, column, "expected an arc `u v`"));
        }
        let (u, v) = (number(toks[0], line)?, number(toks[1], line)?);
        for (&tok, x) in toks.iter().zip([u, v]) {
            if x >= order {
                return Err(err(line, tok.0, format!("vertex {x} out of range for n = {order}")));
            }
        }
        if u == v {
            return Err(err(line, toks[0].0, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u, v)) {
            return Err(err(line, toks[0].0, format!("duplicate arc {u} {v}")));
        }
        arcs.push((u, v));
    }
    let n = n.ok_or_else(|| err(text.lines().count() + 1, 1, "missing header `n <N>`"))?;
    Ok(Digraph::from_arcs(n, arcs).expect("arcs validated above"))
}

/// Canonical text: the header, then arcs in lexicographic order.
pub fn emit_dgf(d: &Digraph) -> String {
    let mut arcs: Vec<(usize, usize)> = d.arcs().collect();
    arcs.sort_unstable();
    let mut s = format!("n {}\n", d.n());
    for (u, v) in arcs {
        writeln!(s, "{u} {v}").expect("writing to a String");
    }
    s
}

pub fn emit_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialise")
}
