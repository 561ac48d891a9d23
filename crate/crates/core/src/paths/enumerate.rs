//! Brute-force enumerators. Output order is deterministic: paths sorted by
//! start node, then by steps.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;

use super::buckets::{bucket_bound, bucketize, edge_bound};
use super::classify::classify_path;
use super::{Mode, SafePath, Segment, SegmentTag, Step, StepKind};

/// Default cap on the number of paths an enumerator may produce.
pub const DEFAULT_PATH_LIMIT: usize = 2_000_000;

fn too_large(limit: usize) -> Error {
    Error::TooLarge(format!("more than {limit} paths"))
}

/// All edge-simple walks with exactly `k` edges, each reported once as the
/// lexicographically smaller of its two node sequences. A walk never equals
/// its own reverse: that would force its middle edge to repeat.
pub fn enumerate_edge_simple_k_paths(g: &WeightedGraph, k: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 {
        return Err(Error::BadParams("k must be at least 1".into()));
    }
    let count = AtomicUsize::new(0);
    let per_start: Result<Vec<Vec<Vec<usize>>>> = (0..g.node_count())
        .into_par_iter()
        .map(|s| {
            let mut out = Vec::new();
            let mut used = vec![false; g.edge_count()];
            let mut nodes = vec![s];
            simple_dfs(g, k, &mut used, &mut nodes, &mut out, &count, limit)?;
            Ok(out)
        })
        .collect();
    let mut all: Vec<_> = per_start?.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

fn simple_dfs(
    g: &WeightedGraph,
    k: usize,
    used: &mut [bool],
    nodes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    count: &AtomicUsize,
    limit: usize,
) -> Result<()> {
    if nodes.len() == k + 1 {
        if nodes.iter().lt(nodes.iter().rev()) {
            if count.fetch_add(1, Ordering::Relaxed) >= limit {
                return Err(too_large(limit));
            }
            out.push(nodes.clone());
        }
        return Ok(());
    }
    let at = *nodes.last().unwrap();
    for &(y, e) in g.neighbors(at) {
        if used[e] {
            continue;
        }
        used[e] = true;
        nodes.push(y);
        simple_dfs(g, k, used, nodes, out, count, limit)?;
        nodes.pop();
        used[e] = false;
    }
    Ok(())
}

/// A candidate segment: its steps, end node and chord count.
#[derive(Debug, Clone)]
struct Piece {
    steps: Vec<Step>,
    end: usize,
    chords: usize,
    s: usize,
    tag: SegmentTag,
}

/// Every edge-safe path (a single `F^s C B^s` segment), as
/// `(start, steps, segment)`, ordered by chord, direction and `s`.
pub fn edge_safe_segments(scg: &SpanningCycleGraph, eps: &Rational, extra: bool) -> Vec<SafePath> {
    let mut out = Vec::new();
    for (start, piece) in edge_pieces(scg, eps, extra) {
        let seg = Segment { tag: piece.tag, s: piece.s, span: (0, piece.steps.len()) };
        out.push(SafePath { start, steps: piece.steps, decomposition: Some(vec![seg]) });
    }
    out
}

fn edge_pieces(scg: &SpanningCycleGraph, eps: &Rational, extra: bool) -> Vec<(usize, Piece)> {
    let mut out = Vec::new();
    for (c, e) in scg.chords().iter().enumerate() {
        let bound = edge_bound(&e.weight, eps, extra).min(scg.node_count());
        for (x, y) in [(e.lo, e.hi), (e.hi, e.lo)] {
            for s in 0..=bound {
                let start = scg.shift(x, -(s as i64));
                let mut steps = Vec::with_capacity(2 * s + 1);
                let mut at = start;
                for _ in 0..s {
                    let st = Step::forward(scg, at);
                    at = st.to;
                    steps.push(st);
                }
                steps.push(Step::chord(scg, c, x));
                at = y;
                for _ in 0..s {
                    let st = Step::backward(scg, at);
                    at = st.to;
                    steps.push(st);
                }
                out.push((start, Piece { steps, end: at, chords: 1, s, tag: SegmentTag::EdgeSafe { chord: c } }));
            }
        }
    }
    out
}

/// Every bucket-safe path for bucket `bucket` with between 1 and
/// `max_chords` chords, using the bound for `k`.
pub fn bucket_safe_segments(
    scg: &SpanningCycleGraph,
    bucket: u32,
    k: usize,
    max_chords: usize,
    eps: &Rational,
    extra: bool,
) -> Vec<SafePath> {
    let Some(b) = bucketize(scg).into_iter().find(|b| b.index == bucket) else {
        return Vec::new();
    };
    let bound = bucket_bound(k, eps, bucket, extra);
    let mut out = Vec::new();
    for start in 0..scg.node_count() {
        for piece in bucket_pieces(scg, &b.chords, bucket, start, bound, max_chords) {
            let seg = Segment { tag: piece.tag, s: piece.s, span: (0, piece.steps.len()) };
            out.push(SafePath { start, steps: piece.steps, decomposition: Some(vec![seg]) });
        }
    }
    out.sort();
    out
}

/// Bucket-safe segments from `start`: non-backtracking walks whose forward
/// steps all precede their backward steps, with `f = b <= bound` and at
/// least one chord, all from `chords`.
fn bucket_pieces(
    scg: &SpanningCycleGraph,
    chords: &[usize],
    bucket: u32,
    start: usize,
    bound: usize,
    max_chords: usize,
) -> Vec<Piece> {
    struct Ctx<'a> {
        scg: &'a SpanningCycleGraph,
        member: Vec<bool>,
        bound: usize,
        max_chords: usize,
        bucket: u32,
        out: Vec<Piece>,
    }
    fn go(ctx: &mut Ctx, at: usize, f: usize, b: usize, chords: usize, steps: &mut Vec<Step>) {
        if chords >= 1 && f == b {
            ctx.out.push(Piece {
                steps: steps.clone(),
                end: at,
                chords,
                s: f,
                tag: SegmentTag::BucketSafe { bucket: ctx.bucket },
            });
        }
        let last = steps.last().map(|s| s.kind);
        if b == 0 && f < ctx.bound {
            let st = Step::forward(ctx.scg, at);
            steps.push(st);
            go(ctx, st.to, f + 1, b, chords, steps);
            steps.pop();
        }
        if b < f && last != Some(StepKind::Forward) {
            let st = Step::backward(ctx.scg, at);
            steps.push(st);
            go(ctx, st.to, f, b + 1, chords, steps);
            steps.pop();
        }
        if chords < ctx.max_chords {
            for &(_, c) in ctx.scg.chords_at(at) {
                if !ctx.member[c] || last == Some(StepKind::Chord(c)) {
                    continue;
                }
                let st = Step::chord(ctx.scg, c, at);
                steps.push(st);
                go(ctx, st.to, f, b, chords + 1, steps);
                steps.pop();
            }
        }
    }
    let mut member = vec![false; scg.chord_count()];
    for &c in chords {
        member[c] = true;
    }
    let mut ctx = Ctx { scg, member, bound: bound.min(scg.node_count()), max_chords, bucket, out: Vec::new() };
    go(&mut ctx, start, 0, 0, 0, &mut Vec::new());
    ctx.out
}

/// All safe `k`-paths of the given mode: monotone or unordered edge-safe,
/// or bucket-monotone. `extra` restricts to extra-safe paths.
pub fn enumerate_safe_k_paths(
    scg: &SpanningCycleGraph,
    k: usize,
    eps: &Rational,
    mode: Mode,
    extra: bool,
    limit: usize,
) -> Result<Vec<SafePath>> {
    if k == 0 {
        return Err(Error::BadParams("k must be at least 1".into()));
    }
    if !eps.is_positive() {
        return Err(Error::BadParams(format!("eps must be positive, got {eps}")));
    }
    let n = scg.node_count();
    // pieces[layer][node]: segments starting at node. Edge-safe modes use a
    // single layer; bucket mode has one layer per nonempty bucket.
    let layers: Vec<Vec<Vec<Piece>>> = match mode {
        Mode::EdgeSafe | Mode::EdgeSafeMonotone => {
            let mut by_start = vec![Vec::new(); n];
            for (start, p) in edge_pieces(scg, eps, extra) {
                by_start[start].push(p);
            }
            vec![by_start]
        }
        Mode::BucketMonotone => bucketize(scg)
            .into_par_iter()
            .map(|b| {
                let bound = bucket_bound(k, eps, b.index, extra);
                (0..n).map(|v| bucket_pieces(scg, &b.chords, b.index, v, bound, k)).collect()
            })
            .collect(),
    };
    let count = AtomicUsize::new(0);
    let ctx = Walker { layers: &layers, k, mode, count: &count, limit };
    let per_start: Result<Vec<Vec<SafePath>>> = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut out = Vec::new();
            ctx.extend(start, start, 0, 0, None, &mut Vec::new(), &mut Vec::new(), &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all: Vec<SafePath> = per_start?.into_iter().flatten().collect();
    all.sort();
    debug_assert!(all.iter().all(|p| {
        classify_path(scg, p.start, &p.steps, k, eps, mode, extra).ok().flatten() == p.decomposition
    }));
    Ok(all)
}

struct Walker<'a> {
    layers: &'a [Vec<Vec<Piece>>],
    k: usize,
    mode: Mode,
    count: &'a AtomicUsize,
    limit: usize,
}

impl Walker<'_> {
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        start: usize,
        at: usize,
        layer: usize,
        chords: usize,
        last_chord: Option<usize>,
        steps: &mut Vec<Step>,
        segs: &mut Vec<Segment>,
        out: &mut Vec<SafePath>,
    ) -> Result<()> {
        if chords == self.k {
            if self.count.fetch_add(1, Ordering::Relaxed) >= self.limit {
                return Err(too_large(self.limit));
            }
            out.push(SafePath { start, steps: steps.clone(), decomposition: Some(segs.clone()) });
            return Ok(());
        }
        let bucketed = self.mode == Mode::BucketMonotone;
        let layer_range = if bucketed { layer..self.layers.len() } else { 0..1 };
        for l in layer_range {
            for p in &self.layers[l][at] {
                if chords + p.chords > self.k {
                    continue;
                }
                if let SegmentTag::EdgeSafe { chord } = p.tag {
                    if self.mode == Mode::EdgeSafeMonotone && last_chord.is_some_and(|q| q >= chord) {
                        continue;
                    }
                }
                let from = steps.len();
                steps.extend_from_slice(&p.steps);
                segs.push(Segment { tag: p.tag, s: p.s, span: (from, steps.len()) });
                let next_chord = match p.tag {
                    SegmentTag::EdgeSafe { chord } => Some(chord),
                    SegmentTag::BucketSafe { .. } => None,
                };
                self.extend(start, p.end, l + 1, chords + p.chords, next_chord, steps, segs, out)?;
                segs.pop();
                steps.truncate(from);
            }
        }
        Ok(())
    }
}
