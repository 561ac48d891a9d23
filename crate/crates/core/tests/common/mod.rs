//! Instance suites shared by the integration tests.
#![allow(dead_code)]

use lightspan::generate::{generate, Family, GeneratorSpec, WeightSpec};
use lightspan::{Rational, SpanningCycleGraph, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Pairs `(u, v)` with `u < v` on `n` nodes, in a fixed order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Edge masks on `n` nodes: every connected labeled graph when `up_to_iso`
/// is false, one representative per isomorphism class otherwise.
pub fn connected_structures(n: usize, up_to_iso: bool) -> Vec<Vec<(usize, usize)>> {
    let ps = pairs(n);
    let index = |u: usize, v: usize| ps.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms = if up_to_iso { permutations(n) } else { vec![] };
    // For each permutation, where each pair bit goes.
    let maps: Vec<Vec<usize>> = perms.iter().map(|p| ps.iter().map(|&(u, v)| index(p[u], p[v])).collect()).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << ps.len()) {
        let edges: Vec<(usize, usize)> = (0..ps.len()).filter(|i| mask >> i & 1 == 1).map(|i| ps[i]).collect();
        if n > 1 && !connected(n, &edges) {
            continue;
        }
        if up_to_iso {
            let canonical = maps.iter().all(|m| {
                let image: u32 = (0..ps.len()).filter(|i| mask >> i & 1 == 1).map(|i| 1 << m[i]).sum();
                image >= mask
            });
            if !canonical {
                continue;
            }
        }
        out.push(edges);
    }
    out
}

/// The small-graph suite: every weighting from `{1, 3/2, 2}` of every
/// connected labeled graph on 2 to 4 nodes; on 5 and 6 nodes one graph per
/// isomorphism class with every weighting when there are at most 2187,
/// otherwise 2187 seeded random weightings.
pub fn small_graph_suite() -> Vec<WeightedGraph> {
    let weights = [q("1"), q("3/2"), q("2")];
    let mut out = Vec::new();
    for n in 2..=6 {
        for edges in connected_structures(n, n >= 5) {
            let m = edges.len();
            let total = 3usize.checked_pow(m as u32).unwrap_or(usize::MAX);
            let weightings: Vec<Vec<usize>> = if total <= 2187 {
                (0..total).map(|mut x| (0..m).map(|_| { let d = x % 3; x /= 3; d }).collect()).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(edges.iter().fold(n as u64, |h, &(u, v)| h.wrapping_mul(31).wrapping_add((u * 8 + v) as u64)));
                (0..2187).map(|_| (0..m).map(|_| rng.gen_range(0..3)).collect()).collect()
            };
            for w in weightings {
                out.push(WeightedGraph::new(n, edges.iter().zip(&w).map(|(&(u, v), &d)| (u, v, weights[d].clone()))).unwrap());
            }
        }
    }
    out
}

/// `count` random connected graphs on `n` nodes (each from `ns`) with
/// weights drawn from `weights`.
pub fn random_graphs(ns: &[usize], count: usize, weights: &WeightSpec, seed: u64, min_extra: usize) -> Vec<WeightedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = ns[i % ns.len()];
            let max_m = n * (n - 1) / 2;
            let lo = (n - 1 + min_extra).min(max_m);
            let m = rng.gen_range(lo..=max_m.min(3 * n).max(lo));
            let spec = GeneratorSpec { family: Family::Gnm { n, m }, weights: weights.clone(), seed: rng.gen() };
            generate(&spec).unwrap()
        })
        .collect()
}

/// Every spanning-cycle graph on 4 to `max_n` nodes with at most
/// `max_chords` chords, chord weights from `weights`.
pub fn scg_suite(max_n: usize, max_chords: usize, weights: &[Rational]) -> Vec<SpanningCycleGraph> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        let cands: Vec<(usize, usize)> =
            pairs(n).into_iter().filter(|&(u, v)| v - u >= 2 && !(u == 0 && v == n - 1)).collect();
        let mut sets: Vec<Vec<usize>> = vec![vec![]];
        for size in 1..=max_chords {
            sets.extend(combinations(cands.len(), size));
        }
        for set in sets {
            let c = set.len();
            for mut x in 0..weights.len().pow(c as u32) {
                let chords: Vec<(usize, usize, Rational)> = set
                    .iter()
                    .map(|&i| {
                        let w = weights[x % weights.len()].clone();
                        x /= weights.len();
                        (cands[i].0, cands[i].1, w)
                    })
                    .collect();
                out.push(SpanningCycleGraph::new(n, chords).unwrap());
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The instance on which unordered safe paths collide although the girth
/// hypothesis for monotone paths holds (`k = 3`, `eps = 1/4`, weighted
/// girth 10 > 9). `s = 50`, `a = 100`, `c = 92`, `b = 420`, `t = 370`,
/// `d = 412` on a 640-node cycle.
pub fn collision_instance() -> SpanningCycleGraph {
    SpanningCycleGraph::new(
        640,
        [(50, 100, q("1")), (50, 92, q("1")), (100, 420, q("32")), (370, 420, q("1")), (370, 412, q("1"))],
    )
    .unwrap()
}
