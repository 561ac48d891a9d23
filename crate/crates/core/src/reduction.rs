//! Reduction of a weighted graph to one with a unit-weight spanning cycle.
//!
//! Two stages: [`normalize_unit_mst`] rescales, subdivides heavy MST edges
//! and rounds light edges up to 1, then [`to_spanning_cycle`] lays an Euler
//! tour of the (now unit-weight) MST out as a Hamiltonian cycle and attaches
//! every other edge to copies of its endpoints.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::girth::{lightness, weighted_girth, Girth};
use crate::graph::{minimum_spanning_tree, Edge, WeightedGraph};
use crate::rational::Rational;

/// A graph on nodes `0..n` whose cycle edges `(i, i + 1 mod n)` all weigh 1,
/// plus chords of weight at least 1. The forward direction is increasing
/// index.
#[derive(Debug, Clone)]
pub struct SpanningCycleGraph {
    n: usize,
    chords: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
    at: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for SpanningCycleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.chords == other.chords
    }
}

impl Eq for SpanningCycleGraph {}

impl SpanningCycleGraph {
    pub fn new<I>(n: usize, chords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let bad = |msg: String| Error::InvalidCycleGraph(msg);
        if n < 3 {
            return Err(bad(format!("a spanning cycle needs at least 3 nodes, got {n}")));
        }
        let mut list = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (u, v, w) in chords {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::IdOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { node: u });
            }
            if (u + 1) % n == v || (v + 1) % n == u {
                return Err(bad(format!("chord ({u}, {v}) duplicates a cycle edge")));
            }
            if w < Rational::one() {
                return Err(bad(format!("chord ({u}, {v}) has weight {w} < 1")));
            }
            let (lo, hi) = (u.min(v), u.max(v));
            if !seen.insert((lo, hi)) {
                return Err(Error::DuplicateEdge { u, v });
            }
            list.push(Edge { lo, hi, weight: w });
        }
        list.sort_by_key(|a| a.key());
        let mut index = HashMap::new();
        let mut at = vec![Vec::new(); n];
        for (i, c) in list.iter().enumerate() {
            index.insert((c.lo, c.hi), i);
            at[c.lo].push((c.hi, i));
            at[c.hi].push((c.lo, i));
        }
        Ok(SpanningCycleGraph { n, chords: list, index, at })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Chords in [`EdgeKey`](crate::graph::EdgeKey) order; a chord's index is
    /// its rank.
    pub fn chords(&self) -> &[Edge] {
        &self.chords
    }

    pub fn chord(&self, i: usize) -> &Edge {
        &self.chords[i]
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn chord_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    /// `(other endpoint, chord index)` for chords touching `v`.
    pub fn chords_at(&self, v: usize) -> &[(usize, usize)] {
        &self.at[v]
    }

    pub fn forward(&self, v: usize) -> usize {
        (v + 1) % self.n
    }

    pub fn backward(&self, v: usize) -> usize {
        (v + self.n - 1) % self.n
    }

    /// Node reached from `v` after `s` forward steps (negative: backward).
    pub fn shift(&self, v: usize, s: i64) -> usize {
        (v as i64 + s).rem_euclid(self.n as i64) as usize
    }

    /// Total chord weight, `w(H \ C)`.
    pub fn chord_weight(&self) -> Rational {
        self.chords.iter().map(|c| &c.weight).sum()
    }

    /// Heaviest edge weight, counting the unit cycle edges.
    pub fn max_weight(&self) -> Rational {
        self.chords.iter().map(|c| c.weight.clone()).max().unwrap_or_else(Rational::one).max(Rational::one())
    }

    pub fn total_weight(&self) -> Rational {
        &self.chord_weight() + &Rational::from(self.n)
    }

    /// The same graph with the spanning cycle materialized as edges.
    pub fn to_graph(&self) -> WeightedGraph {
        let cycle = (0..self.n).map(|i| (i, (i + 1) % self.n, Rational::one()));
        let chords = self.chords.iter().map(|c| (c.lo, c.hi, c.weight.clone()));
        WeightedGraph::new(self.n, cycle.chain(chords)).expect("cycle and chords are disjoint")
    }

    /// The same cycle keeping only chords for which `keep` holds.
    pub fn retain_chords<F: FnMut(usize, &Edge) -> bool>(&self, mut keep: F) -> SpanningCycleGraph {
        let chords: Vec<_> = self
            .chords
            .iter()
            .enumerate()
            .filter(|(i, c)| keep(*i, c))
            .map(|(_, c)| (c.lo, c.hi, c.weight.clone()))
            .collect();
        SpanningCycleGraph::new(self.n, chords).expect("subset of a valid chord set")
    }
}

/// Text format: a header `n c`, then `c` chord lines `u v w`. Cycle edges
/// are implicit.
pub fn parse_scg(text: &str) -> Result<SpanningCycleGraph> {
    let (n, triples) = crate::graph::parse_header_and_triples(text)?;
    let lines: Vec<usize> = triples.iter().map(|t| t.3).collect();
    let mut chords = Vec::with_capacity(triples.len());
    for (i, (u, v, w, _)) in triples.into_iter().enumerate() {
        // Validate one chord at a time so errors carry the right line.
        SpanningCycleGraph::new(n.max(3), [(u, v, w.clone())])
            .map_err(|e| Error::Parse { line: lines[i], message: e.to_string() })?;
        chords.push((u, v, w));
    }
    SpanningCycleGraph::new(n, chords).map_err(|e| Error::Parse { line: 1, message: e.to_string() })
}

pub fn serialize_scg(scg: &SpanningCycleGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", scg.node_count(), scg.chord_count()).unwrap();
    for c in scg.chords() {
        writeln!(out, "{} {} {}", c.lo, c.hi, c.weight).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub total_weight: Rational,
    pub mst_weight: Rational,
    pub lightness: Rational,
    pub weighted_girth: Girth<Rational>,
}

impl GraphStats {
    pub fn of(g: &WeightedGraph) -> Result<Self> {
        let mst_weight = minimum_spanning_tree(g).into_iter().map(|i| &g.edge(i).weight).sum();
        Ok(GraphStats {
            nodes: g.node_count(),
            edges: g.edge_count(),
            total_weight: g.total_weight(),
            mst_weight,
            lightness: lightness(g, g)?,
            weighted_girth: weighted_girth(g).value,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Subdivision {
    pub lo: usize,
    pub hi: usize,
    /// Number of edges the MST edge became.
    pub pieces: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionTrace {
    pub scale_factor: Rational,
    pub subdivisions: Vec<Subdivision>,
    /// For each output node, the input node it copies; `None` for nodes
    /// introduced by subdivision.
    pub node_map: Vec<Option<usize>>,
    pub original: GraphStats,
    pub reduced: GraphStats,
}

impl ReductionTrace {
    /// `lightness(reduced) / lightness(original)`.
    pub fn lightness_ratio(&self) -> Rational {
        &self.reduced.lightness / &self.original.lightness
    }
}

fn require_connected(h: &WeightedGraph) -> Result<()> {
    if h.node_count() < 2 {
        return Err(Error::PreconditionViolated("need at least two nodes".into()));
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Rescales so the MST has average edge weight 1, subdivides every MST edge
/// of weight `w > 1` into `ceil(w)` edges of weight `w / ceil(w)`, then
/// raises every weight below 1 to exactly 1.
///
/// Trees are accepted here; [`full_reduction`] is the stage that refuses
/// forests.
pub fn normalize_unit_mst(h: &WeightedGraph) -> Result<(WeightedGraph, ReductionTrace)> {
    require_connected(h)?;
    let n = h.node_count();
    let mst = minimum_spanning_tree(h);
    let mst_weight: Rational = mst.iter().map(|&i| &h.edge(i).weight).sum();
    let scale = &Rational::from(n - 1) / &mst_weight;
    let mut in_mst = vec![false; h.edge_count()];
    for &i in &mst {
        in_mst[i] = true;
    }

    let one = Rational::one();
    let mut next = n;
    let mut edges = Vec::new();
    let mut subdivisions = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        let w = &e.weight * &scale;
        if in_mst[i] && w > one {
            let pieces = w.ceil().try_into().expect("subdivision count fits in usize");
            let piece = &w / &Rational::from(pieces);
            let mut prev = e.lo;
            for _ in 1..pieces {
                edges.push((prev, next, piece.clone()));
                prev = next;
                next += 1;
            }
            edges.push((prev, e.hi, piece));
            subdivisions.push(Subdivision { lo: e.lo, hi: e.hi, pieces });
        } else {
            edges.push((e.lo, e.hi, w));
        }
    }
    let raised = edges.into_iter().map(|(u, v, w)| (u, v, if w < one { one.clone() } else { w }));
    let out = WeightedGraph::new(next, raised)?;
    let node_map = (0..next).map(|v| (v < n).then_some(v)).collect();
    let trace = ReductionTrace {
        scale_factor: scale,
        subdivisions,
        node_map,
        original: GraphStats::of(h)?,
        reduced: GraphStats::of(&out)?,
    };
    Ok((out, trace))
}

/// Euler tour of a tree rooted at 0, children in ascending id, without the
/// final return to the root: exactly `2n - 2` entries.
fn euler_tour(n: usize, tree_edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut children = vec![Vec::new(); n];
    for (u, v) in tree_edges {
        children[u].push(v);
        children[v].push(u);
    }
    for c in &mut children {
        c.sort_unstable();
    }
    let mut tour = vec![0];
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    parent[0] = 0;
    while let Some((v, next)) = stack.last_mut() {
        let v = *v;
        if let Some(&c) = children[v].get(*next) {
            *next += 1;
            if parent[v] == c {
                continue;
            }
            parent[c] = v;
            tour.push(c);
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some((p, _)) = stack.last() {
                tour.push(*p);
            }
        }
    }
    tour.pop();
    tour
}

/// Maps an MST tour onto a unit-weight spanning cycle of `2n - 2` nodes.
/// Each non-MST edge is attached between the first tour occurrences of its
/// endpoints and keeps its weight.
pub fn to_spanning_cycle(h: &WeightedGraph) -> Result<(SpanningCycleGraph, ReductionTrace)> {
    require_connected(h)?;
    let n = h.node_count();
    if n < 3 {
        return Err(Error::PreconditionViolated("a tour of two nodes is not a cycle".into()));
    }
    let one = Rational::one();
    if let Some(e) = h.edges().iter().find(|e| e.weight < one) {
        return Err(Error::PreconditionViolated(format!("edge ({}, {}) weighs {} < 1", e.lo, e.hi, e.weight)));
    }
    let mst = minimum_spanning_tree(h);
    if let Some(&i) = mst.iter().find(|&&i| h.edge(i).weight != one) {
        let e = h.edge(i);
        return Err(Error::PreconditionViolated(format!("MST edge ({}, {}) weighs {}", e.lo, e.hi, e.weight)));
    }
    let mut in_mst = vec![false; h.edge_count()];
    for &i in &mst {
        in_mst[i] = true;
    }
    let tour = euler_tour(n, mst.iter().map(|&i| (h.edge(i).lo, h.edge(i).hi)));
    debug_assert_eq!(tour.len(), 2 * n - 2);
    let mut first = vec![usize::MAX; n];
    for (pos, &v) in tour.iter().enumerate() {
        if first[v] == usize::MAX {
            first[v] = pos;
        }
    }
    let chords = h
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !in_mst[*i])
        .map(|(_, e)| (first[e.lo], first[e.hi], e.weight.clone()));
    let scg = SpanningCycleGraph::new(tour.len(), chords)?;
    let trace = ReductionTrace {
        scale_factor: Rational::one(),
        subdivisions: Vec::new(),
        node_map: tour.iter().map(|&v| Some(v)).collect(),
        original: GraphStats::of(h)?,
        reduced: GraphStats::of(&scg.to_graph())?,
    };
    Ok((scg, trace))
}

/// Both stages composed. Refuses disconnected graphs and forests.
pub fn full_reduction(h: &WeightedGraph) -> Result<(SpanningCycleGraph, ReductionTrace)> {
    require_connected(h)?;
    if h.is_forest() {
        return Err(Error::IsForest);
    }
    let (normalized, first) = normalize_unit_mst(h)?;
    let (scg, second) = to_spanning_cycle(&normalized)?;
    let node_map = second.node_map.iter().map(|v| v.and_then(|v| first.node_map[v])).collect();
    let trace = ReductionTrace {
        scale_factor: first.scale_factor,
        subdivisions: first.subdivisions,
        node_map,
        original: first.original,
        reduced: second.reduced,
    };
    Ok((scg, trace))
}
