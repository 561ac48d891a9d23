//! Plain-text graph format: a header line `n m`, then `m` lines `u v w`.
//! Weights may be integers, decimals, or `p/q`. Lines starting with `#`
//! are comments.

use std::fmt::Write as _;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses a header `a b` followed by exactly `b` triples `u v w`.
pub(crate) fn parse_header_and_triples(text: &str) -> Result<(usize, Vec<(usize, usize, Rational, usize)>)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [a, b] = fields[..] else {
        return Err(parse_err(hline, "header must be two integers"));
    };
    let n: usize = a.parse().map_err(|_| parse_err(hline, format!("bad node count {a:?}")))?;
    let count: usize = b.parse().map_err(|_| parse_err(hline, format!("bad edge count {b:?}")))?;
    let mut triples = Vec::with_capacity(count);
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v, w] = fields[..] else {
            return Err(parse_err(line, "expected `u v w`"));
        };
        let u: usize = u.parse().map_err(|_| parse_err(line, format!("bad node id {u:?}")))?;
        let v: usize = v.parse().map_err(|_| parse_err(line, format!("bad node id {v:?}")))?;
        let w: Rational = w.parse().map_err(|_| parse_err(line, format!("bad weight {w:?}")))?;
        if !w.is_positive() {
            return Err(parse_err(line, format!("non-positive weight {w}")));
        }
        triples.push((u, v, w, line));
    }
    if triples.len() != count {
        return Err(parse_err(hline, format!("header promises {count} edges, found {}", triples.len())));
    }
    Ok((n, triples))
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let (n, triples) = parse_header_and_triples(text)?;
    let mut seen = std::collections::HashSet::new();
    for (u, v, _, line) in &triples {
        let (u, v, line) = (*u, *v, *line);
        if u >= n || v >= n {
            return Err(parse_err(line, Error::IdOutOfRange { node: u.max(v), n }.to_string()));
        }
        if u == v {
            return Err(parse_err(line, Error::SelfLoop { node: u }.to_string()));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, Error::DuplicateEdge { u, v }.to_string()));
        }
    }
    WeightedGraph::new(n, triples.into_iter().map(|(u, v, w, _)| (u, v, w)))
}

pub fn serialize_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.node_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.lo, e.hi, e.weight).unwrap();
    }
    out
}
