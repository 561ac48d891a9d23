//! Seeded instance generators.
//!
//! Every family is deterministic in its seed (ChaCha8). Random families are
//! made connected by adding edges along a random node order between
//! components that are still separate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{UnionFind, WeightedGraph};
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;

/// How random families draw edge weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightSpec {
    #[default]
    Unit,
    /// Integer weights uniform in `lo..=hi`.
    Uniform { lo: u32, hi: u32 },
    /// Uniform choice from a fixed list.
    Choice { values: Vec<Rational> },
}

impl WeightSpec {
    fn validate(&self) -> Result<()> {
        match self {
            WeightSpec::Unit => Ok(()),
            WeightSpec::Uniform { lo, hi } if *lo >= 1 && lo <= hi => Ok(()),
            WeightSpec::Uniform { lo, hi } => Err(Error::BadParams(format!("weight range {lo}..={hi}"))),
            WeightSpec::Choice { values } if !values.is_empty() && values.iter().all(Rational::is_positive) => Ok(()),
            WeightSpec::Choice { .. } => Err(Error::BadParams("weight choices must be positive".into())),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Rational {
        match self {
            WeightSpec::Unit => Rational::one(),
            WeightSpec::Uniform { lo, hi } => Rational::from(rng.gen_range(*lo..=*hi) as i64),
            WeightSpec::Choice { values } => values[rng.gen_range(0..values.len())].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Gnm { n: usize, m: usize },
    /// Points in the unit square joined when closer than `radius`.
    Geometric { n: usize, radius: Rational },
    Grid { rows: usize, cols: usize },
    /// A unit cycle on `n` nodes plus `chords` random chords.
    CyclePlusChords { n: usize, chords: usize },
    Petersen,
    Complete { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub weights: WeightSpec,
    #[serde(default)]
    pub seed: u64,
}

pub fn generate(spec: &GeneratorSpec) -> Result<WeightedGraph> {
    spec.weights.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.family {
        Family::Gnm { n, m } => gnm(*n, *m, &spec.weights, &mut rng),
        Family::Geometric { n, radius } => geometric(*n, radius, &mut rng),
        Family::Grid { rows, cols } => grid(*rows, *cols, &spec.weights, &mut rng),
        Family::CyclePlusChords { n, chords } => {
            Ok(cycle_plus_chords(*n, *chords, &spec.weights, &mut rng)?.to_graph())
        }
        Family::Petersen => Ok(petersen()),
        Family::Complete { n } => complete(*n, &spec.weights, &mut rng),
    }
}

/// The cycle-plus-chords family as a [`SpanningCycleGraph`]; the same
/// seed gives the same instance as [`generate`].
pub fn generate_scg(spec: &GeneratorSpec) -> Result<SpanningCycleGraph> {
    spec.weights.validate()?;
    match &spec.family {
        Family::CyclePlusChords { n, chords } => {
            cycle_plus_chords(*n, *chords, &spec.weights, &mut ChaCha8Rng::seed_from_u64(spec.seed))
        }
        other => Err(Error::BadParams(format!("{other:?} does not produce a spanning-cycle graph"))),
    }
}

/// Adds edges between consecutive nodes of a random order whenever they lie
/// in different components.
fn connect(
    n: usize,
    edges: &mut Vec<(usize, usize, Rational)>,
    rng: &mut ChaCha8Rng,
    mut weight: impl FnMut(usize, usize, &mut ChaCha8Rng) -> Rational,
) {
    let mut uf = UnionFind::new(n);
    for (u, v, _) in edges.iter() {
        uf.union(*u, *v);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for w in order.windows(2) {
        if uf.union(w[0], w[1]) {
            let wt = weight(w[0], w[1], rng);
            edges.push((w[0], w[1], wt));
        }
    }
}

pub fn gnm(n: usize, m: usize, weights: &WeightSpec, rng: &mut ChaCha8Rng) -> Result<WeightedGraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if n == 0 || m > pairs {
        return Err(Error::BadParams(format!("cannot place {m} edges on {n} nodes")));
    }
    let mut edges: Vec<_> = rand::seq::index::sample(rng, pairs, m)
        .into_iter()
        .map(|p| {
            let (u, v) = unrank_pair(p);
            (u, v, weights.draw(rng))
        })
        .collect();
    connect(n, &mut edges, rng, |_, _, rng| weights.draw(rng));
    WeightedGraph::new(n, edges)
}

/// The `p`-th unordered pair `(u, v)`, `u < v`, in colex order.
fn unrank_pair(p: usize) -> (usize, usize) {
    let mut v = ((((8 * p + 1) as f64).sqrt() + 1.0) / 2.0) as usize;
    while v * (v - 1) / 2 > p {
        v -= 1;
    }
    while (v + 1) * v / 2 <= p {
        v += 1;
    }
    (p - v * (v - 1) / 2, v)
}

const GRID: i64 = 1 << 20;

/// Euclidean distance rounded to the nearest multiple of `2^-20`, at least
/// `2^-20`.
fn rounded_distance(a: (i64, i64), b: (i64, i64)) -> Rational {
    let (dx, dy) = ((a.0 - b.0) as f64, (a.1 - b.1) as f64);
    let d = (dx * dx + dy * dy).sqrt().round().max(1.0) as i64;
    Rational::new(d, GRID)
}

pub fn geometric(n: usize, radius: &Rational, rng: &mut ChaCha8Rng) -> Result<WeightedGraph> {
    if n == 0 || !radius.is_positive() {
        return Err(Error::BadParams(format!("geometric graph with n={n} radius={radius}")));
    }
    let points: Vec<(i64, i64)> = (0..n).map(|_| (rng.gen_range(0..=GRID), rng.gen_range(0..=GRID))).collect();
    let r = radius * &Rational::from(GRID);
    let r2 = &r * &r;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (dx, dy) = (points[u].0 - points[v].0, points[u].1 - points[v].1);
            if Rational::from(dx * dx + dy * dy) <= r2 {
                edges.push((u, v, rounded_distance(points[u], points[v])));
            }
        }
    }
    connect(n, &mut edges, rng, |u, v, _| rounded_distance(points[u], points[v]));
    WeightedGraph::new(n, edges)
}

pub fn grid(rows: usize, cols: usize, weights: &WeightSpec, rng: &mut ChaCha8Rng) -> Result<WeightedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::BadParams(format!("grid {rows}x{cols}")));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), weights.draw(rng)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), weights.draw(rng)));
            }
        }
    }
    WeightedGraph::new(rows * cols, edges)
}

/// A unit cycle plus `chords` distinct random chords. Chord weights come
/// from `weights`, raised to 1 when smaller.
pub fn cycle_plus_chords(
    n: usize,
    chords: usize,
    weights: &WeightSpec,
    rng: &mut ChaCha8Rng,
) -> Result<SpanningCycleGraph> {
    if n < 3 {
        return Err(Error::BadParams(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 2..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u == 0 && v == n - 1))
        .collect();
    if chords > candidates.len() {
        return Err(Error::BadParams(format!("only {} chords fit on {n} nodes", candidates.len())));
    }
    let picked = rand::seq::index::sample(rng, candidates.len(), chords);
    let mut list = Vec::with_capacity(chords);
    for p in picked {
        let (u, v) = candidates[p];
        let w = weights.draw(rng).max(Rational::one());
        list.push((u, v, w));
    }
    SpanningCycleGraph::new(n, list)
}

pub fn petersen() -> WeightedGraph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let edges = outer.chain(spokes).chain(inner).map(|(u, v)| (u, v, Rational::one()));
    WeightedGraph::new(10, edges).expect("Petersen graph is simple")
}

pub fn complete(n: usize, weights: &WeightSpec, rng: &mut ChaCha8Rng) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::BadParams("complete graph on 0 nodes".into()));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, weights.draw(rng)));
        }
    }
    WeightedGraph::new(n, edges)
}
