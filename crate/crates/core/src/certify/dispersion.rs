use std::collections::BTreeMap;

use crate::error::Result;
use crate::girth::{unweighted_girth, weighted_girth, CycleWitness, Girth};
use crate::graph::WeightedGraph;
use crate::paths::{enumerate_edge_simple_k_paths, enumerate_safe_k_paths, serialize_path, Mode, SafePath, DEFAULT_PATH_LIMIT};
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;
use crate::report::LemmaReport;

use super::{check_eps, check_k, full_girth_threshold, require_girth, warmup_girth_threshold};

/// Pairs of distinct paths with the same `(start, end)`, one pair per
/// colliding endpoint pair.
pub fn endpoint_collisions(paths: &[SafePath]) -> Vec<(SafePath, SafePath)> {
    let mut groups: BTreeMap<(usize, usize), Vec<&SafePath>> = BTreeMap::new();
    for p in paths {
        groups.entry((p.start, p.end())).or_default().push(p);
    }
    groups
        .into_values()
        .filter(|g| g.len() > 1)
        .map(|g| (g[0].clone(), g[1].clone()))
        .collect()
}

/// The lightest (by normalized weight) cycle inside the union of two walks,
/// or `None` when the union is a forest (walks that retrace their edges).
pub fn implied_cycle(scg: &SpanningCycleGraph, a: &SafePath, b: &SafePath) -> Option<CycleWitness> {
    let full = scg.to_graph();
    let mut used = Vec::new();
    for st in a.steps.iter().chain(&b.steps) {
        used.push(full.edge_index(st.from, st.to).expect("walk steps are edges"));
    }
    weighted_girth(&full.subgraph(used)).witness
}

/// No two edge-simple `k`-paths share an unordered endpoint pair when the
/// girth exceeds `2k`.
pub fn check_unweighted_dispersion(g: &WeightedGraph, k: usize) -> Result<LemmaReport> {
    check_k(k)?;
    let n = g.node_count();
    let mut report = LemmaReport::new("moore-dispersion", format!("n={} m={} k={}", n, g.edge_count(), k));
    let girth = unweighted_girth(g);
    let holds = match girth {
        Girth::Finite(l) => l > 2 * k,
        Girth::Infinite => true,
    };
    report
        .set("n", n)
        .set("m", g.edge_count())
        .set("k", k)
        .set("girth", girth.to_string())
        .set("hypothesis", holds)
        .set("node_pairs", n * n.saturating_sub(1) / 2);
    if !holds {
        report.not_applicable(format!("girth {girth} is not above {}", 2 * k));
        return Ok(report);
    }
    let paths = enumerate_edge_simple_k_paths(g, k, DEFAULT_PATH_LIMIT)?;
    let mut by_pair: BTreeMap<(usize, usize), Vec<&Vec<usize>>> = BTreeMap::new();
    for p in &paths {
        let (s, t) = (p[0], p[k]);
        by_pair.entry((s.min(t), s.max(t))).or_default().push(p);
    }
    report.set("paths", paths.len()).set("endpoint_pairs", by_pair.len());
    for group in by_pair.values().filter(|g| g.len() > 1) {
        report.fail(format!("{:?} and {:?} share endpoints", group[0], group[1]));
    }
    Ok(report)
}

fn safe_dispersion(
    lemma: &str,
    scg: &SpanningCycleGraph,
    k: usize,
    eps: &Rational,
    mode: Mode,
    threshold: Rational,
) -> Result<LemmaReport> {
    check_k(k)?;
    check_eps(eps)?;
    let n = scg.node_count();
    let mut report =
        LemmaReport::new(lemma, format!("n={} chords={} k={} eps={}", n, scg.chord_count(), k, eps));
    report.set("n", n).set("chords", scg.chord_count()).set("k", k).set("eps", eps);
    let (_, holds) = require_girth(&mut report, scg, &threshold);
    if !holds {
        return Ok(report);
    }
    let paths = enumerate_safe_k_paths(scg, k, eps, mode, false, DEFAULT_PATH_LIMIT)?;
    let collisions = endpoint_collisions(&paths);
    report.set("paths", paths.len()).set("collisions", collisions.len());
    if mode == Mode::BucketMonotone {
        report.set("n_squared", n * n).set("within_n_squared", paths.len() <= n * n);
    }
    for (a, b) in &collisions {
        let cycle = implied_cycle(scg, a, b).map(|c| c.to_string()).unwrap_or_else(|| "no cycle".into());
        report.fail(format!("[{}] and [{}] share endpoints; implied {}", serialize_path(a), serialize_path(b), cycle));
    }
    Ok(report)
}

/// Monotone safe `k`-paths have distinct `(start, end)` pairs when the
/// weighted girth exceeds `(1 + 2 eps) * 2k`.
pub fn check_monotone_dispersion(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<LemmaReport> {
    safe_dispersion("warmup-dispersion", scg, k, eps, Mode::EdgeSafeMonotone, warmup_girth_threshold(k, eps))
}

/// Bucket-monotone safe `k`-paths have distinct `(start, end)` pairs when
/// the weighted girth exceeds `(1 + 4 eps) * 2k`; hence at most `n^2` of
/// them.
pub fn check_bucket_monotone_dispersion(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<LemmaReport> {
    safe_dispersion("full-dispersion", scg, k, eps, Mode::BucketMonotone, full_girth_threshold(k, eps))
}

/// The same test for unordered safe `k`-paths under the monotone girth
/// hypothesis. Dispersion is false for this family; the report exhibits
/// collisions rather than certifying anything.
pub fn check_safe_dispersion(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<LemmaReport> {
    safe_dispersion("safe-dispersion", scg, k, eps, Mode::EdgeSafe, warmup_girth_threshold(k, eps))
}
