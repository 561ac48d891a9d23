//! Undirected simple graphs with exact positive rational edge weights.

mod io;
mod mst;
mod paths;

pub use io::{parse_graph, serialize_graph};
pub(crate) use io::{content_lines, parse_header_and_triples};
pub use mst::{component_count, minimum_spanning_tree, UnionFind};
pub(crate) use paths::dijkstra;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Canonical edge order: by weight, then by the smaller endpoint, then by
/// the larger one. Every "distinct weights" argument uses this as its
/// tiebreak.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeKey {
    pub weight: Rational,
    pub lo: usize,
    pub hi: usize,
}

impl EdgeKey {
    pub fn new(u: usize, v: usize, weight: Rational) -> Self {
        EdgeKey { weight, lo: u.min(v), hi: u.max(v) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn key(&self) -> EdgeKey {
        EdgeKey { weight: self.weight.clone(), lo: self.lo, hi: self.hi }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

/// An undirected graph on nodes `0..n` with at most one edge per unordered
/// pair. Edges are stored sorted by [`EdgeKey`], so an edge index doubles as
/// its rank in the canonical order.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for WeightedGraph {}

impl WeightedGraph {
    /// Builds a graph, validating ids, weights, self-loops and duplicates.
    pub fn new<I>(n: usize, edge_list: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut edges = Vec::new();
        let mut seen = HashMap::new();
        for (u, v, w) in edge_list {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::IdOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { node: u });
            }
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight { u, v, weight: w });
            }
            let (lo, hi) = (u.min(v), u.max(v));
            if seen.insert((lo, hi), ()).is_some() {
                return Err(Error::DuplicateEdge { u, v });
            }
            edges.push(Edge { lo, hi, weight: w });
        }
        edges.sort_by_key(|a| a.key());
        Ok(Self::from_sorted(n, edges))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.lo].push((e.hi, i));
            adjacency[e.hi].push((e.lo, i));
            index.insert((e.lo, e.hi), i);
        }
        WeightedGraph { n, edges, adjacency, index }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    /// `(neighbor, edge index)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&Edge> {
        self.edge_index(u, v).map(|i| &self.edges[i])
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    /// The edge-subgraph on the same node set keeping the given edges.
    pub fn subgraph<I: IntoIterator<Item = usize>>(&self, edge_indices: I) -> WeightedGraph {
        let mut keep: Vec<usize> = edge_indices.into_iter().collect();
        keep.sort_unstable();
        keep.dedup();
        let edges = keep.into_iter().map(|i| self.edges[i].clone()).collect();
        Self::from_sorted(self.n, edges)
    }

    /// Applies `f` to every weight. `f` must keep weights positive.
    pub fn map_weights<F: FnMut(&Edge) -> Rational>(&self, mut f: F) -> Result<WeightedGraph> {
        WeightedGraph::new(self.n, self.edges.iter().map(|e| (e.lo, e.hi, f(e))))
    }

    /// True when every edge of `self` appears in `host` with the same weight
    /// and both graphs share a node set.
    pub fn is_subgraph_of(&self, host: &WeightedGraph) -> bool {
        self.n == host.n
            && self
                .edges
                .iter()
                .all(|e| host.edge_between(e.lo, e.hi).is_some_and(|h| h.weight == e.weight))
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || component_count(self) == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + component_count(self) == self.n
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::IdOutOfRange { node: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Exact shortest-path distance from `u` to `v`, or `None` when `v` is
    /// unreachable.
    ///
    /// With a cutoff the search stops as soon as every remaining distance
    /// exceeds it and reports `None`; any distance `<= cutoff` is returned
    /// exactly as without the cutoff.
    pub fn shortest_path_distance(
        &self,
        u: usize,
        v: usize,
        cutoff: Option<&Rational>,
    ) -> Result<Option<Rational>> {
        self.check_node(u)?;
        self.check_node(v)?;
        let search = dijkstra(self.n, u, Some(v), cutoff, |x| {
            self.adjacency[x].iter().map(|&(y, e)| (y, &self.edges[e].weight))
        });
        Ok(search.dist[v].clone())
    }

    /// Distances from `source` to every node.
    pub fn distances_from(&self, source: usize) -> Result<Vec<Option<Rational>>> {
        self.check_node(source)?;
        let search = dijkstra(self.n, source, None, None, |x| {
            self.adjacency[x].iter().map(|&(y, e)| (y, &self.edges[e].weight))
        });
        Ok(search.dist)
    }
}

/// Constructs a graph from `(u, v, w)` triples. Thin alias for
/// [`WeightedGraph::new`].
pub fn build_graph<I>(n: usize, edge_list: I) -> Result<WeightedGraph>
where
    I: IntoIterator<Item = (usize, usize, Rational)>,
{
    WeightedGraph::new(n, edge_list)
}
