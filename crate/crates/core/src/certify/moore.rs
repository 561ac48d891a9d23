use crate::error::Result;
use crate::girth::{unweighted_girth, Girth};
use crate::graph::WeightedGraph;
use crate::rational::Rational;
use crate::reduction::full_reduction;
use crate::report::{LemmaReport, Verdict};

use super::{
    check_bmsdistinct, check_bucket_monotone_dispersion, check_eps, check_k, check_unweighted_dispersion,
    check_weak_counting, full_girth_threshold, require_girth, Protocol,
};

/// `m / n^(1 + 1/k)` as a symbolic string `m/n^((k+1)/k)` and a float.
fn density_ratio(m: usize, n: usize, k: usize) -> (String, f64) {
    let symbolic = if k == 1 { format!("{m}/{n}^2") } else { format!("{m}/{n}^({}/{k})", k + 1) };
    (symbolic, m as f64 / (n as f64).powf(1.0 + 1.0 / k as f64))
}

/// Girth `> 2k` bounds the edge count by `O(n^(1 + 1/k))`. Records `n`,
/// `m`, the girth, the number of edge-simple `k`-paths, the dispersion
/// verdict, and the ratio `m / n^(1 + 1/k)`. Weights are ignored.
pub fn moore_bound_report(g: &WeightedGraph, k: usize) -> Result<LemmaReport> {
    check_k(k)?;
    let (n, m) = (g.node_count(), g.edge_count());
    let dispersion = check_unweighted_dispersion(g, k)?;
    let mut report = LemmaReport::new("moore-bound", format!("n={n} m={m} k={k}"));
    let girth = unweighted_girth(g);
    let (symbolic, ratio) = density_ratio(m, n, k);
    report
        .set("n", n)
        .set("m", m)
        .set("k", k)
        .set("girth", girth.to_string())
        .set("ratio", symbolic)
        .set("ratio_f64", ratio)
        .set("dispersion", dispersion.verdict.to_string());
    if let Some(p) = dispersion.int("paths") {
        report.set("paths", p);
    }
    match dispersion.verdict {
        Verdict::NotApplicable => {
            report.not_applicable(format!("girth {girth} is not above {}", 2 * k));
        }
        Verdict::Fail => {
            for w in &dispersion.witnesses {
                report.fail(w.clone());
            }
        }
        Verdict::Pass => {}
    }
    if matches!(girth, Girth::Infinite) {
        report.set("forest", true);
    }
    Ok(report)
}

/// End to end: reduce `h` to a spanning-cycle graph, check the girth
/// hypothesis `(1 + 4 eps) * 2k`, then run bucket-monotone dispersion, weak
/// counting (full protocol) and the distinct-chords claim on the result.
/// Records `w(H)`, `n` and `w'(H) / (n^(1 + 1/k) / eps)`, where `w'` is the
/// weight after scaling the MST to `n - 1`.
pub fn main_theorem_report(h: &WeightedGraph, k: usize, eps: &Rational) -> Result<LemmaReport> {
    check_k(k)?;
    check_eps(eps)?;
    let (scg, trace) = full_reduction(h)?;
    let n = h.node_count();
    let mut report =
        LemmaReport::new("main-theorem", format!("n={} m={} k={} eps={}", n, h.edge_count(), k, eps));
    let normalized = &trace.lightness_ratio() * &Rational::from(n - 1);
    let denom = (n as f64).powf(1.0 + 1.0 / k as f64) / eps.to_f64();
    report
        .set("n", n)
        .set("m", h.edge_count())
        .set("k", k)
        .set("eps", eps)
        .set("weight", &trace.original.total_weight)
        .set("mst_weight", &trace.original.mst_weight)
        .set("normalized_weight", &normalized)
        .set("reduced_nodes", scg.node_count())
        .set("reduced_chords", scg.chord_count())
        .set("ratio", normalized.to_f64() / denom);
    if !require_girth(&mut report, &scg, &full_girth_threshold(k, eps)).1 {
        return Ok(report);
    }
    let subs = [
        check_bucket_monotone_dispersion(&scg, k, eps)?,
        check_weak_counting(&scg, k, eps, Protocol::Full)?,
        check_bmsdistinct(&scg, k, eps)?,
    ];
    for sub in &subs {
        report.set(&format!("{}_verdict", sub.lemma), sub.verdict.to_string());
        if let Some(p) = sub.int("paths") {
            report.set(&format!("{}_paths", sub.lemma), p);
        }
        if sub.is_fail() {
            for w in &sub.witnesses {
                report.fail(format!("{}: {w}", sub.lemma));
            }
        }
    }
    Ok(report)
}
