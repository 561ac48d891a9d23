//! The greedy spanner and an all-pairs stretch checker.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{dijkstra, EdgeKey, WeightedGraph};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct SpannerResult {
    pub spanner: WeightedGraph,
    pub stretch: Rational,
    /// Accepted edges in scan order (nondecreasing [`EdgeKey`]).
    pub added: Vec<EdgeKey>,
    pub rejected: Vec<EdgeKey>,
}

/// Scans edges in [`EdgeKey`] order and keeps `(u, v)` iff the spanner built
/// so far has `dist(u, v) > t * w(u, v)`.
///
/// Each distance query is cut off at `t * w(u, v)`: only the comparison
/// matters, so the search can stop once it is decided.
pub fn greedy_spanner(g: &WeightedGraph, t: &Rational) -> Result<SpannerResult> {
    if t < &Rational::one() {
        return Err(Error::InvalidStretch(t.clone()));
    }
    let n = g.node_count();
    let mut adjacency: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    let mut kept = Vec::new();
    let mut added = Vec::new();
    let mut rejected = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let budget = t * &e.weight;
        let search = dijkstra(n, e.lo, Some(e.hi), Some(&budget), |x| {
            adjacency[x].iter().map(|(y, w)| (*y, w))
        });
        if search.dist[e.hi].is_some() {
            rejected.push(e.key());
        } else {
            adjacency[e.lo].push((e.hi, e.weight.clone()));
            adjacency[e.hi].push((e.lo, e.weight.clone()));
            kept.push(i);
            added.push(e.key());
        }
    }
    Ok(SpannerResult { spanner: g.subgraph(kept), stretch: t.clone(), added, rejected })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StretchViolation {
    pub u: usize,
    pub v: usize,
    /// `None` when `v` is unreachable from `u` in the subgraph.
    pub dist_sub: Option<Rational>,
    pub dist_host: Rational,
}

/// All pairs `u < v` with `dist_h(u, v) > t * dist_g(u, v)`. Pairs that are
/// disconnected in `g` impose no constraint.
pub fn verify_stretch(g: &WeightedGraph, h: &WeightedGraph, t: &Rational) -> Result<Vec<StretchViolation>> {
    if !h.is_subgraph_of(g) {
        return Err(Error::NotSubgraph(format!(
            "{} nodes / {} edges against host with {} nodes",
            h.node_count(),
            h.edge_count(),
            g.node_count()
        )));
    }
    let mut violations = Vec::new();
    for u in 0..g.node_count() {
        let dg = g.distances_from(u)?;
        let dh = h.distances_from(u)?;
        for v in u + 1..g.node_count() {
            let Some(host) = &dg[v] else { continue };
            let ok = dh[v].as_ref().is_some_and(|d| d <= &(t * host));
            if !ok {
                violations.push(StretchViolation { u, v, dist_sub: dh[v].clone(), dist_host: host.clone() });
            }
        }
    }
    Ok(violations)
}
