//! Walks around a unit-weight spanning cycle and their safe decompositions.
//!
//! A walk is a start node plus a list of [`Step`]s. Each step is a forward
//! or backward move along the cycle, or a chord traversal. [`classify_path`]
//! decides whether a walk is a (monotone) safe `k`-path or a bucket-monotone
//! safe `k`-path and returns its decomposition. The enumerators produce every
//! such path on a small instance, and the hiker protocols construct them.

mod buckets;
mod classify;
mod dump;
mod enumerate;
mod hikers;

pub use buckets::{bucket_bound, bucket_of, bucketize, edge_bound, Bucket};
pub use classify::{classify_path, classify_with_budget, validate_walk};
pub use dump::{parse_path, parse_paths, serialize_path, serialize_paths};
pub use enumerate::{
    bucket_safe_segments, edge_safe_segments, enumerate_edge_simple_k_paths, enumerate_safe_k_paths,
    DEFAULT_PATH_LIMIT,
};
pub use hikers::{hiker_protocol_full, hiker_protocol_warmup, HikerDay, HikerJourney, HikerRun};

use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::reduction::SpanningCycleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StepKind {
    Forward,
    Backward,
    /// Traverses the chord with this index, in either direction.
    Chord(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub from: usize,
    pub to: usize,
}

impl Step {
    pub fn forward(scg: &SpanningCycleGraph, from: usize) -> Step {
        Step { kind: StepKind::Forward, from, to: scg.forward(from) }
    }

    pub fn backward(scg: &SpanningCycleGraph, from: usize) -> Step {
        Step { kind: StepKind::Backward, from, to: scg.backward(from) }
    }

    /// Traverses chord `idx` starting at `from`, which must be one of its
    /// endpoints.
    pub fn chord(scg: &SpanningCycleGraph, idx: usize, from: usize) -> Step {
        let c = scg.chord(idx);
        debug_assert!(from == c.lo || from == c.hi);
        Step { kind: StepKind::Chord(idx), from, to: c.other(from) }
    }

    pub fn chord_index(&self) -> Option<usize> {
        match self.kind {
            StepKind::Chord(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_forward(&self) -> bool {
        self.kind == StepKind::Forward
    }

    pub fn is_backward(&self) -> bool {
        self.kind == StepKind::Backward
    }
}

/// Which family of paths a classification or enumeration targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `k` edge-safe segments in any chord order.
    EdgeSafe,
    /// `k` edge-safe segments with chords strictly increasing in
    /// [`EdgeKey`](crate::graph::EdgeKey) order.
    EdgeSafeMonotone,
    /// Bucket-safe segments over strictly increasing buckets, `k` chords in
    /// total.
    BucketMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SegmentTag {
    EdgeSafe { chord: usize },
    BucketSafe { bucket: u32 },
}

/// One piece of a decomposition: `s` forward steps, then the chord part,
/// then `s` backward steps. `span` is the half-open step range it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Segment {
    pub tag: SegmentTag,
    pub s: usize,
    pub span: (usize, usize),
}

/// A walk plus, once classified, its decomposition. Equality and hashing
/// look at the walk only.
#[derive(Debug, Clone, Serialize)]
pub struct SafePath {
    pub start: usize,
    pub steps: Vec<Step>,
    pub decomposition: Option<Vec<Segment>>,
}

impl PartialEq for SafePath {
    fn eq(&self, other: &Self) -> bool {
        self.start == other.start && self.steps == other.steps
    }
}

impl Eq for SafePath {}

impl Hash for SafePath {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.start.hash(state);
        self.steps.hash(state);
    }
}

impl PartialOrd for SafePath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SafePath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.start, &self.steps).cmp(&(other.start, &other.steps))
    }
}

impl SafePath {
    pub fn new(start: usize, steps: Vec<Step>) -> Self {
        SafePath { start, steps, decomposition: None }
    }

    pub fn end(&self) -> usize {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    /// Chord indices in walk order, with repeats.
    pub fn chords(&self) -> Vec<usize> {
        self.steps.iter().filter_map(Step::chord_index).collect()
    }

    pub fn chord_count(&self) -> usize {
        self.steps.iter().filter(|s| s.chord_index().is_some()).count()
    }

    pub fn distinct_chords(&self) -> usize {
        let mut c = self.chords();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Node sequence visited, starting with `start`.
    pub fn nodes(&self) -> Vec<usize> {
        std::iter::once(self.start).chain(self.steps.iter().map(|s| s.to)).collect()
    }
}
