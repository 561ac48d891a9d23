use std::collections::HashMap;

use crate::error::Result;
use crate::paths::{
    bucket_safe_segments, bucketize, edge_safe_segments, enumerate_safe_k_paths, serialize_path, Mode, SafePath,
    SegmentTag, DEFAULT_PATH_LIMIT,
};
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;
use crate::report::LemmaReport;

use super::{check_eps, check_k, distinct_girth_threshold, full_girth_threshold, require_girth, warmup_girth_threshold};

/// Among `paths`, finds two distinct ones sharing a start (or an end) node
/// whose `key` agrees.
fn shared_endpoint_clash<K, F>(paths: &[SafePath], key: F) -> Vec<(SafePath, SafePath)>
where
    K: std::hash::Hash + Eq,
    F: Fn(&SafePath) -> K,
{
    let mut out = Vec::new();
    for by_end in [true, false] {
        let mut seen: HashMap<(usize, K), &SafePath> = HashMap::new();
        for p in paths {
            let node = if by_end { p.end() } else { p.start };
            match seen.get(&(node, key(p))) {
                Some(q) if *q != p => out.push(((*q).clone(), p.clone())),
                Some(_) => {}
                None => {
                    seen.insert((node, key(p)), p);
                }
            }
        }
    }
    out
}

fn new_report(lemma: &str, scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> LemmaReport {
    let mut r = LemmaReport::new(lemma, format!("n={} chords={} k={} eps={}", scg.node_count(), scg.chord_count(), k, eps));
    r.set("k", k).set("eps", eps);
    r
}

/// Two distinct edge-safe paths that share an endpoint are safe for
/// different chords. Checked for shared ends and shared starts.
pub fn check_esmatching(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<LemmaReport> {
    check_k(k)?;
    check_eps(eps)?;
    let mut report = new_report("esmatching", scg, k, eps);
    if !require_girth(&mut report, scg, &warmup_girth_threshold(k, eps)).1 {
        return Ok(report);
    }
    let segs = edge_safe_segments(scg, eps, false);
    report.set("paths", segs.len());
    let clashes = shared_endpoint_clash(&segs, |p| p.chords()[0]);
    for (a, b) in clashes {
        report.fail(format!("[{}] and [{}] share an endpoint and a chord", serialize_path(&a), serialize_path(&b)));
    }
    Ok(report)
}

/// Two distinct bucket-safe paths (at most `k` chords) that share an
/// endpoint traverse different oriented chord sequences.
pub fn check_bsmatching(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<LemmaReport> {
    check_k(k)?;
    check_eps(eps)?;
    let mut report = new_report("bsmatching", scg, k, eps);
    if !require_girth(&mut report, scg, &full_girth_threshold(k, eps)).1 {
        return Ok(report);
    }
    let mut total = 0;
    for b in bucketize(scg) {
        let segs = bucket_safe_segments(scg, b.index, k, k, eps, false);
        total += segs.len();
        let oriented = |p: &SafePath| -> Vec<(usize, usize)> {
            p.steps.iter().filter(|s| s.chord_index().is_some()).map(|s| (s.from, s.to)).collect()
        };
        for (a, c) in shared_endpoint_clash(&segs, oriented) {
            report.fail(format!(
                "bucket {}: [{}] and [{}] share an endpoint and a chord sequence",
                b.index,
                serialize_path(&a),
                serialize_path(&c)
            ));
        }
    }
    report.set("paths", total);
    Ok(report)
}

/// Every bucket-monotone safe `k`-path uses `k` distinct chords once the
/// weighted girth exceeds `(1 + 2 eps) * k`.
pub fn check_bmsdistinct(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<LemmaReport> {
    check_k(k)?;
    check_eps(eps)?;
    let mut report = new_report("bmsdistinct", scg, k, eps);
    if !require_girth(&mut report, scg, &distinct_girth_threshold(k, eps)).1 {
        return Ok(report);
    }
    let paths = enumerate_safe_k_paths(scg, k, eps, Mode::BucketMonotone, false, DEFAULT_PATH_LIMIT)?;
    report.set("paths", paths.len());
    for p in paths.iter().filter(|p| p.distinct_chords() < k) {
        report.fail(format!("[{}] repeats a chord", serialize_path(p)));
    }
    Ok(report)
}

/// Segment tag helper for callers that want per-chord grouping.
#[allow(dead_code)]
fn segment_chord(p: &SafePath) -> Option<usize> {
    match p.decomposition.as_ref()?.first()?.tag {
        SegmentTag::EdgeSafe { chord } => Some(chord),
        SegmentTag::BucketSafe { .. } => None,
    }
}
