use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::rational::Rational;

pub(crate) struct Search {
    pub dist: Vec<Option<Rational>>,
    pub pred: Vec<Option<usize>>,
}

/// Dijkstra over an implicit adjacency. Stops early once `target` is
/// settled, or once the smallest tentative distance exceeds `cutoff` (in
/// which case unsettled nodes, including `target`, report `None`).
pub(crate) fn dijkstra<'a, F, I>(
    n: usize,
    source: usize,
    target: Option<usize>,
    cutoff: Option<&Rational>,
    mut neighbors: F,
) -> Search
where
    F: FnMut(usize) -> I,
    I: Iterator<Item = (usize, &'a Rational)>,
{
    let mut best: Vec<Option<Rational>> = vec![None; n];
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut heap = BinaryHeap::new();
    best[source] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), source)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if dist[x].is_some() {
            continue;
        }
        if cutoff.is_some_and(|c| &d > c) {
            break;
        }
        dist[x] = Some(d.clone());
        if target == Some(x) {
            break;
        }
        for (y, w) in neighbors(x) {
            if dist[y].is_some() {
                continue;
            }
            let nd = &d + w;
            if cutoff.is_some_and(|c| &nd > c) {
                continue;
            }
            if best[y].as_ref().is_none_or(|b| &nd < b) {
                best[y] = Some(nd.clone());
                pred[y] = Some(x);
                heap.push(Reverse((nd, y)));
            }
        }
    }
    Search { dist, pred }
}

impl Search {
    /// Node sequence `source ..= target` along predecessor links.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        self.dist[target].as_ref()?;
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.pred[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}
