use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;

use super::buckets::{bucket_bound, bucket_of, edge_bound};
use super::{Mode, Segment, SegmentTag, Step, StepKind};

/// Checks that `steps` is a walk in `scg` starting at `start`.
pub fn validate_walk(scg: &SpanningCycleGraph, start: usize, steps: &[Step]) -> Result<()> {
    if start >= scg.node_count() {
        return Err(Error::NotAWalk(format!("start node {start} out of range")));
    }
    let mut at = start;
    for (i, st) in steps.iter().enumerate() {
        if st.from != at {
            return Err(Error::NotAWalk(format!("step {i} leaves {} but the walk is at {at}", st.from)));
        }
        let ok = match st.kind {
            StepKind::Forward => st.to == scg.forward(at),
            StepKind::Backward => st.to == scg.backward(at),
            StepKind::Chord(c) => {
                c < scg.chord_count() && {
                    let e = scg.chord(c);
                    (e.lo == at && e.hi == st.to) || (e.hi == at && e.lo == st.to)
                }
            }
        };
        if !ok {
            return Err(Error::NotAWalk(format!("step {i} ({:?} {} -> {}) is not an edge", st.kind, st.from, st.to)));
        }
        at = st.to;
    }
    Ok(())
}

/// Decides whether a walk is a safe `k`-path of the given mode and returns
/// its decomposition. `extra` tightens every `s` bound by half.
///
/// Decompositions are unique: segment boundaries sit at chords (edge-safe)
/// or at bucket changes (bucket-monotone), and the cycle steps between two
/// segments must read `B^b F^a`, which splits in exactly one way.
pub fn classify_path(
    scg: &SpanningCycleGraph,
    start: usize,
    steps: &[Step],
    k: usize,
    eps: &Rational,
    mode: Mode,
    extra: bool,
) -> Result<Option<Vec<Segment>>> {
    let chords = steps.iter().filter(|s| s.chord_index().is_some()).count();
    if chords != k {
        validate_walk(scg, start, steps)?;
        return Ok(None);
    }
    classify_with_budget(scg, start, steps, k, eps, mode, extra)
}

/// Like [`classify_path`], but accepts any positive number of chords while
/// sizing bucket windows by `k`. Hiker journeys are classified this way:
/// they are planned with budget `k` and may carry more or fewer chords.
pub fn classify_with_budget(
    scg: &SpanningCycleGraph,
    start: usize,
    steps: &[Step],
    k: usize,
    eps: &Rational,
    mode: Mode,
    extra: bool,
) -> Result<Option<Vec<Segment>>> {
    validate_walk(scg, start, steps)?;
    let chord_pos: Vec<usize> = steps.iter().enumerate().filter(|(_, s)| s.chord_index().is_some()).map(|(i, _)| i).collect();
    if k == 0 || chord_pos.is_empty() {
        return Ok(None);
    }
    if !steps[..chord_pos[0]].iter().all(Step::is_forward) {
        return Ok(None);
    }
    Ok(match mode {
        Mode::EdgeSafe | Mode::EdgeSafeMonotone => {
            edge_safe(scg, steps, &chord_pos, eps, mode == Mode::EdgeSafeMonotone, extra)
        }
        Mode::BucketMonotone => bucket_monotone(scg, steps, &chord_pos, k, eps, extra),
    })
}

/// Splits a run of cycle steps as `B^b F^a`, or `None` if it has another
/// shape.
fn split_gap(gap: &[Step]) -> Option<(usize, usize)> {
    let b = gap.iter().take_while(|s| s.is_backward()).count();
    gap[b..].iter().all(Step::is_forward).then_some((b, gap.len() - b))
}

fn edge_safe(
    scg: &SpanningCycleGraph,
    steps: &[Step],
    chord_pos: &[usize],
    eps: &Rational,
    monotone: bool,
    extra: bool,
) -> Option<Vec<Segment>> {
    let k = chord_pos.len();
    let mut segs = Vec::with_capacity(k);
    let mut prefix = chord_pos[0];
    let mut seg_start = 0;
    let mut prev: Option<usize> = None;
    for j in 0..k {
        let p = chord_pos[j];
        let c = steps[p].chord_index().unwrap();
        let next = chord_pos.get(j + 1).copied().unwrap_or(steps.len());
        let (b, a) = split_gap(&steps[p + 1..next])?;
        if j + 1 == k && a != 0 {
            return None;
        }
        if b != prefix || prefix > edge_bound(&scg.chord(c).weight, eps, extra) {
            return None;
        }
        if monotone && prev.is_some_and(|q| q >= c) {
            return None;
        }
        segs.push(Segment { tag: SegmentTag::EdgeSafe { chord: c }, s: b, span: (seg_start, p + 1 + b) });
        seg_start = p + 1 + b;
        prefix = a;
        prev = Some(c);
    }
    Some(segs)
}

fn bucket_monotone(
    scg: &SpanningCycleGraph,
    steps: &[Step],
    chord_pos: &[usize],
    k: usize,
    eps: &Rational,
    extra: bool,
) -> Option<Vec<Segment>> {
    let bucket = |p: usize| bucket_of(&scg.chord(steps[p].chord_index().unwrap()).weight);
    let mut segs = Vec::new();
    let mut seg_start = 0;
    let mut run_first = 0;
    while run_first < chord_pos.len() {
        let i = bucket(chord_pos[run_first]);
        let mut run_last = run_first;
        while run_last + 1 < chord_pos.len() && bucket(chord_pos[run_last + 1]) == i {
            run_last += 1;
        }
        let after = chord_pos[run_last] + 1;
        let next = chord_pos.get(run_last + 1).copied().unwrap_or(steps.len());
        if run_last + 1 < chord_pos.len() && bucket(chord_pos[run_last + 1]) < i {
            return None;
        }
        let (b, a) = split_gap(&steps[after..next])?;
        if next == steps.len() && a != 0 {
            return None;
        }
        let seg_end = after + b;
        let s = bucket_safe_s(&steps[seg_start..seg_end])?;
        if s > bucket_bound(k, eps, i, extra) {
            return None;
        }
        segs.push(Segment { tag: SegmentTag::BucketSafe { bucket: i }, s, span: (seg_start, seg_end) });
        seg_start = seg_end;
        run_first = run_last + 1;
    }
    Some(segs)
}

/// For a candidate bucket-safe segment: every forward step precedes every
/// backward step, there are equally many of each, and nothing backtracks.
/// Returns that common count.
fn bucket_safe_s(seg: &[Step]) -> Option<usize> {
    let mut f = 0;
    let mut b = 0;
    for (i, st) in seg.iter().enumerate() {
        match st.kind {
            StepKind::Forward if b > 0 => return None,
            StepKind::Forward => f += 1,
            StepKind::Backward => b += 1,
            StepKind::Chord(_) => {}
        }
        if i > 0 && backtracks(&seg[i - 1], st) {
            return None;
        }
    }
    (f == b).then_some(f)
}

fn backtracks(a: &Step, b: &Step) -> bool {
    match (a.kind, b.kind) {
        (StepKind::Forward, StepKind::Backward) | (StepKind::Backward, StepKind::Forward) => true,
        (StepKind::Chord(x), StepKind::Chord(y)) => x == y,
        _ => false,
    }
}
