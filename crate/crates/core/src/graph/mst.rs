use super::WeightedGraph;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Kruskal's algorithm in [`super::EdgeKey`] order. Returns edge indices of
/// a minimum spanning forest (a tree when the graph is connected).
pub fn minimum_spanning_tree(g: &WeightedGraph) -> Vec<usize> {
    let mut uf = UnionFind::new(g.node_count());
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| uf.union(e.lo, e.hi))
        .map(|(i, _)| i)
        .collect()
}

pub fn component_count(g: &WeightedGraph) -> usize {
    let mut uf = UnionFind::new(g.node_count());
    let joins = g.edges().iter().filter(|e| uf.union(e.lo, e.hi)).count();
    g.node_count() - joins
}
