//! Path dump format: one path per line, the start node followed by its steps
//! as `F`, `B` or `C:u-v` (chord traversed from `u` to `v`).

use crate::error::{Error, Result};
use crate::graph::content_lines;
use crate::reduction::SpanningCycleGraph;

use super::classify::validate_walk;
use super::{SafePath, Step, StepKind};

pub fn serialize_path(p: &SafePath) -> String {
    let mut out = p.start.to_string();
    for st in &p.steps {
        out.push(' ');
        match st.kind {
            StepKind::Forward => out.push('F'),
            StepKind::Backward => out.push('B'),
            StepKind::Chord(_) => out.push_str(&format!("C:{}-{}", st.from, st.to)),
        }
    }
    out
}

pub fn serialize_paths<'a, I: IntoIterator<Item = &'a SafePath>>(paths: I) -> String {
    paths.into_iter().map(|p| serialize_path(p) + "\n").collect()
}

/// Parses one dump line against `scg`, resolving chords to their indices.
pub fn parse_path(scg: &SpanningCycleGraph, line: &str) -> Result<SafePath> {
    let parse_err = |message: String| Error::Parse { line: 1, message };
    let mut tokens = line.split_whitespace();
    let start: usize = tokens
        .next()
        .ok_or_else(|| parse_err("empty path line".into()))?
        .parse()
        .map_err(|e| parse_err(format!("bad start node: {e}")))?;
    let mut at = start;
    let mut steps = Vec::new();
    for tok in tokens {
        let st = match tok {
            "F" => Step::forward(scg, at),
            "B" => Step::backward(scg, at),
            _ => {
                let (u, v) = tok
                    .strip_prefix("C:")
                    .and_then(|rest| rest.split_once('-'))
                    .ok_or_else(|| parse_err(format!("unknown step token {tok:?}")))?;
                let u: usize = u.parse().map_err(|_| parse_err(format!("bad chord endpoint in {tok:?}")))?;
                let v: usize = v.parse().map_err(|_| parse_err(format!("bad chord endpoint in {tok:?}")))?;
                let c = scg.chord_index(u, v).ok_or(Error::MissingEdge { u, v })?;
                Step { kind: StepKind::Chord(c), from: u, to: v }
            }
        };
        at = st.to;
        steps.push(st);
    }
    validate_walk(scg, start, &steps)?;
    Ok(SafePath::new(start, steps))
}

pub fn parse_paths(scg: &SpanningCycleGraph, text: &str) -> Result<Vec<SafePath>> {
    content_lines(text)
        .map(|(line, body)| {
            parse_path(scg, body).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line, message },
                other => Error::Parse { line, message: other.to_string() },
            })
        })
        .collect()
}
