use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::paths::{
    bucket_bound, bucket_of, classify_path, edge_bound, enumerate_safe_k_paths, hiker_protocol_full,
    hiker_protocol_warmup, serialize_path, HikerRun, Mode, SafePath, Step, StepKind, DEFAULT_PATH_LIMIT,
};
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;
use crate::report::LemmaReport;

use super::{check_eps, check_k, full_girth_threshold, warmup_girth_threshold};

/// Which hiker protocol (and which family of safe paths) a counting
/// certifier works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Protocol {
    /// Monotone safe paths; one day per chord.
    Warmup,
    /// Bucket-monotone safe paths; one day per bucket.
    Full,
}

impl Protocol {
    pub fn mode(self) -> Mode {
        match self {
            Protocol::Warmup => Mode::EdgeSafeMonotone,
            Protocol::Full => Mode::BucketMonotone,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Protocol::Warmup => "warmup",
            Protocol::Full => "full",
        }
    }

    /// The density threshold on `w(chords)`: `k n / eps` (warmup) or
    /// `4 n / eps` (full).
    pub fn weight_threshold(self, n: usize, k: usize, eps: &Rational) -> Rational {
        let factor = match self {
            Protocol::Warmup => k,
            Protocol::Full => 4,
        };
        &Rational::from(factor * n) / eps
    }

    fn run(self, scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<HikerRun> {
        match self {
            Protocol::Warmup => hiker_protocol_warmup(scg, eps),
            Protocol::Full => hiker_protocol_full(scg, k, eps),
        }
    }
}

fn instance(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> String {
    format!("n={} chords={} k={} eps={}", scg.node_count(), scg.chord_count(), k, eps)
}

/// Runs the hiker protocol. When `w(chords)` meets the density threshold,
/// some journey must carry at least `k` chords. Protocol invariants (every
/// journey classifies, end-of-day layouts are permutations) are checked
/// too, since a violation there is a bug rather than a failed hypothesis.
pub fn check_weak_counting(scg: &SpanningCycleGraph, k: usize, eps: &Rational, protocol: Protocol) -> Result<LemmaReport> {
    check_k(k)?;
    check_eps(eps)?;
    let n = scg.node_count();
    let mut report = LemmaReport::new("weak-counting", instance(scg, k, eps));
    let weight = scg.chord_weight();
    let threshold = protocol.weight_threshold(n, k, eps);
    let holds = weight >= threshold;
    report
        .set("protocol", protocol.prefix())
        .set("n", n)
        .set("k", k)
        .set("eps", eps)
        .set("chord_weight", &weight)
        .set("weight_threshold", &threshold)
        .set("density", &weight / &Rational::from(n))
        .set("hypothesis", holds);
    let run = match protocol.run(scg, k, eps) {
        Ok(run) => run,
        Err(Error::OverlappingWindows { u, v }) => {
            report.not_applicable(format!("safe-path windows of chord ({u}, {v}) overlap"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let invalid: Vec<&SafePath> =
        run.journeys.iter().filter(|j| j.chords_hiked > 0 && j.path.decomposition.is_none()).map(|j| &j.path).collect();
    report
        .set("max_journey_chords", run.max_chords())
        .set("total_traversals", run.total_traversals())
        .set("invalid_journeys", invalid.len())
        .set("positions_are_permutations", run.positions_are_permutations());
    if protocol == Protocol::Full {
        let idle: Rational = scg
            .chords()
            .iter()
            .filter(|c| bucket_bound(k, eps, bucket_of(&c.weight), true) == 0)
            .map(|c| c.weight.clone())
            .sum();
        report.set("zero_budget_weight", idle);
    }
    for p in invalid {
        report.fail(format!("journey [{}] is not a valid extra-safe path", serialize_path(p)));
    }
    if !run.positions_are_permutations() {
        report.fail("end-of-day hiker positions are not a permutation");
    }
    match run.first_with(k) {
        Some(j) => {
            report.witness(format!("hiker {}: [{}]", j.hiker, serialize_path(&j.path)));
        }
        None if holds => {
            report.fail(format!("density threshold met but the longest journey has {} chords", run.max_chords()));
        }
        None => {}
    }
    Ok(report)
}

/// Outcome of the deletion loop behind medium counting.
#[derive(Debug, Clone)]
pub struct MediumRun {
    pub report: LemmaReport,
    /// Recorded safe `k`-paths, expressed in the input graph.
    pub recorded: Vec<SafePath>,
    pub rounds: usize,
}

/// The first `k` chords of an extra-safe journey, closed off as an
/// extra-safe `k`-path of the same family.
fn base_path(scg: &SpanningCycleGraph, journey: &SafePath, k: usize, protocol: Protocol) -> (SafePath, Vec<(usize, usize)>) {
    let segs = journey.decomposition.as_ref().expect("journey classifies");
    match protocol {
        Protocol::Warmup => {
            let spans: Vec<(usize, usize)> = segs[..k].iter().map(|s| s.span).collect();
            let end = spans[k - 1].1;
            (SafePath::new(journey.start, journey.steps[..end].to_vec()), spans)
        }
        Protocol::Full => {
            let cut = journey.steps.iter().enumerate().filter(|(_, s)| s.chord_index().is_some()).nth(k - 1).unwrap().0 + 1;
            let mut steps = journey.steps[..cut].to_vec();
            let mut spans: Vec<(usize, usize)> =
                segs.iter().map(|s| s.span).take_while(|&(a, _)| a < cut).collect();
            let last = spans.last_mut().unwrap();
            let tail = &steps[last.0..];
            let f = tail.iter().filter(|s| s.is_forward()).count();
            let b = tail.iter().filter(|s| s.is_backward()).count();
            let mut at = steps.last().unwrap().to;
            for _ in b..f {
                let st = Step::backward(scg, at);
                at = st.to;
                steps.push(st);
            }
            last.1 = steps.len();
            (SafePath::new(journey.start, steps), spans)
        }
    }
}

/// `base` with `F^s` in front of and `B^s` behind every segment.
fn shifted(scg: &SpanningCycleGraph, base: &SafePath, spans: &[(usize, usize)], s: usize) -> SafePath {
    let start = scg.shift(base.start, -(s as i64));
    let mut steps = Vec::with_capacity(base.steps.len() + 2 * s * spans.len());
    let mut at = start;
    for &(a, b) in spans {
        for _ in 0..s {
            let st = Step::forward(scg, at);
            at = st.to;
            steps.push(st);
        }
        steps.extend_from_slice(&base.steps[a..b]);
        at = base.steps[b - 1].to;
        for _ in 0..s {
            let st = Step::backward(scg, at);
            at = st.to;
            steps.push(st);
        }
    }
    SafePath::new(start, steps)
}

/// Re-expresses a path found in `current` (a chord-deleted copy) in terms of
/// the chord indices of `original`.
fn remap(original: &SpanningCycleGraph, p: &SafePath) -> SafePath {
    let steps = p
        .steps
        .iter()
        .map(|st| match st.kind {
            StepKind::Chord(_) => {
                let c = original.chord_index(st.from, st.to).expect("chords survive in the original");
                Step { kind: StepKind::Chord(c), ..*st }
            }
            _ => *st,
        })
        .collect();
    SafePath::new(p.start, steps)
}

/// Repeatedly: run the hiker protocol, take the first journey with at least
/// `k` chords, record every `s`-shift of its first `k` chords as a safe
/// `k`-path, then delete its first chord `e1`. Stops once the weak-counting
/// density threshold fails. Shifts range over `0..=floor(eps w(e1) / 2)`
/// (warmup) or `0..=floor(eps k 2^(i - 1))` for the bucket `i` of `e1`
/// (full).
pub fn medium_counting(scg: &SpanningCycleGraph, k: usize, eps: &Rational, protocol: Protocol) -> Result<MediumRun> {
    check_k(k)?;
    check_eps(eps)?;
    let n = scg.node_count();
    let mode = protocol.mode();
    let mut report = LemmaReport::new("medium-counting", instance(scg, k, eps));
    report.set("protocol", protocol.prefix()).set("n", n).set("k", k).set("eps", eps);
    let threshold = protocol.weight_threshold(n, k, eps);
    let mut current = scg.clone();
    let mut recorded: Vec<SafePath> = Vec::new();
    let mut seen: HashSet<SafePath> = HashSet::new();
    let mut rounds = 0;
    let mut deleted_weight = Rational::zero();
    while current.chord_weight() >= threshold {
        let run = match protocol.run(&current, k, eps) {
            Ok(run) => run,
            Err(Error::OverlappingWindows { u, v }) => {
                report.not_applicable(format!("safe-path windows of chord ({u}, {v}) overlap"));
                break;
            }
            Err(e) => return Err(e),
        };
        let Some(journey) = run.first_with(k) else {
            report.fail(format!("round {rounds}: density threshold met but no journey has {k} chords"));
            break;
        };
        if journey.path.decomposition.is_none() {
            report.fail(format!("round {rounds}: journey [{}] does not classify", serialize_path(&journey.path)));
            break;
        }
        let (base, spans) = base_path(&current, &journey.path, k, protocol);
        let e1 = base.chords()[0];
        let w1 = current.chord(e1).weight.clone();
        let top = match protocol {
            Protocol::Warmup => edge_bound(&w1, eps, true),
            Protocol::Full => bucket_bound(k, eps, bucket_of(&w1), true),
        };
        for s in 0..=top {
            let p = remap(scg, &shifted(&current, &base, &spans, s));
            let mut p = p;
            p.decomposition = classify_path(scg, p.start, &p.steps, k, eps, mode, false)?;
            if p.decomposition.is_none() {
                report.fail(format!("round {rounds}, shift {s}: [{}] is not a safe {k}-path", serialize_path(&p)));
            }
            if !seen.insert(p.clone()) {
                report.fail(format!("round {rounds}, shift {s}: [{}] was already recorded", serialize_path(&p)));
            }
            recorded.push(p);
        }
        deleted_weight += &w1;
        let (lo, hi) = (current.chord(e1).lo, current.chord(e1).hi);
        current = current.retain_chords(|i, _| i != e1);
        report.witness(format!("round {rounds}: deleted ({lo}, {hi}), recorded {} shifts", top + 1));
        rounds += 1;
    }
    report
        .set("weight_threshold", &threshold)
        .set("chord_weight", scg.chord_weight())
        .set("rounds", rounds)
        .set("recorded", recorded.len())
        .set("deleted_weight", deleted_weight)
        .set("at_least_one_per_round", recorded.len() >= rounds);
    Ok(MediumRun { report, recorded, rounds })
}

pub fn run_medium_counting(scg: &SpanningCycleGraph, k: usize, eps: &Rational, protocol: Protocol) -> Result<LemmaReport> {
    Ok(medium_counting(scg, k, eps, protocol)?.report)
}

/// Empirical versus exact survivor counts for one seed.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloSummary {
    pub paths: usize,
    /// `sum over paths of keep_prob^(distinct chords)`.
    pub exact: Rational,
    pub mean: f64,
    /// Standard error of `mean`.
    pub se: f64,
    pub trials: usize,
    pub seed: u64,
}

impl MonteCarloSummary {
    /// `|mean - exact| <= 4 se`; with zero spread the mean must be exact.
    pub fn within_tolerance(&self) -> bool {
        let exact = self.exact.to_f64();
        if self.se == 0.0 {
            (self.mean - exact).abs() <= 1e-9 * exact.abs().max(1.0)
        } else {
            (self.mean - exact).abs() <= 4.0 * self.se
        }
    }
}

fn probability_parts(p: &Rational) -> Result<(u64, u64)> {
    if p < &Rational::zero() || p > &Rational::one() {
        return Err(Error::InvalidProbability(p.clone()));
    }
    match (p.numer().to_u64(), p.denom().to_u64()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::InvalidProbability(p.clone())),
    }
}

fn pow(p: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| &acc * p)
}

/// Keeps every chord independently with probability `keep_prob` and counts
/// the paths of `paths` whose chords all survive, over `trials` subsamples.
/// Trial `i` draws from ChaCha8 seeded with `seed` on stream `i`, so the
/// result does not depend on scheduling.
pub fn monte_carlo_summary(
    chord_count: usize,
    paths: &[SafePath],
    keep_prob: &Rational,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloSummary> {
    let (numer, denom) = probability_parts(keep_prob)?;
    if trials == 0 {
        return Err(Error::BadParams("trials must be positive".into()));
    }
    let chord_sets: Vec<Vec<usize>> = paths
        .iter()
        .map(|p| {
            let mut c = p.chords();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let exact: Rational = chord_sets.iter().map(|c| pow(keep_prob, c.len())).sum();
    let counts: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let kept: Vec<bool> = (0..chord_count).map(|_| rng.gen_range(0..denom) < numer).collect();
            chord_sets.iter().filter(|c| c.iter().all(|&i| kept[i])).count() as f64
        })
        .collect();
    let t = trials as f64;
    let mean = counts.iter().sum::<f64>() / t;
    let var = if trials > 1 { counts.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0) } else { 0.0 };
    Ok(MonteCarloSummary { paths: paths.len(), exact, mean, se: (var / t).sqrt(), trials, seed })
}

/// Subsampling experiment behind full counting: enumerates the
/// bucket-monotone safe `k`-paths, computes the exact expected number that
/// survive chord subsampling, and compares it with the empirical mean.
/// Also evaluates both sides of the density chain with realized numbers:
/// `E[w(chords')] = keep_prob * w(chords)` against `4 n / eps`.
pub fn monte_carlo_full_counting(
    scg: &SpanningCycleGraph,
    k: usize,
    eps: &Rational,
    keep_prob: &Rational,
    trials: usize,
    seed: u64,
) -> Result<LemmaReport> {
    check_k(k)?;
    check_eps(eps)?;
    probability_parts(keep_prob)?;
    let n = scg.node_count();
    let paths = enumerate_safe_k_paths(scg, k, eps, Mode::BucketMonotone, false, DEFAULT_PATH_LIMIT)?;
    let mc = monte_carlo_summary(scg.chord_count(), &paths, keep_prob, trials, seed)?;
    let mut report = LemmaReport::new("full-counting-mc", instance(scg, k, eps));
    let expected_weight = keep_prob * &scg.chord_weight();
    let threshold = Protocol::Full.weight_threshold(n, k, eps);
    let gap = &expected_weight - &threshold;
    let girth = crate::girth::weighted_girth(&scg.to_graph());
    report
        .set("n", n)
        .set("k", k)
        .set("eps", eps)
        .set("keep_prob", keep_prob)
        .set("trials", trials)
        .set("seed", seed as i64)
        .set("paths", mc.paths)
        .set("expected_survivors", &mc.exact)
        .set("expected_survivors_f64", mc.exact.to_f64())
        .set("empirical_mean", mc.mean)
        .set("standard_error", mc.se)
        .set("expected_chord_weight", &expected_weight)
        .set("weight_threshold", &threshold)
        .set("weight_gap", &gap)
        .set("girth_hypothesis", girth.value.exceeds(&full_girth_threshold(k, eps)))
        .set("monotone_girth_hypothesis", girth.value.exceeds(&warmup_girth_threshold(k, eps)));
    if gap.is_positive() {
        report.set("realized_constant", &mc.exact / &(eps * &gap));
    }
    if !mc.within_tolerance() {
        report.fail(format!(
            "empirical mean {:.6} is more than 4 standard errors ({:.6}) from {}",
            mc.mean, mc.se, mc.exact
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::r;
    use crate::report::Verdict;

    fn dense_single_bucket() -> SpanningCycleGraph {
        // 12-node cycle, chords of weight 1 between opposite-ish nodes.
        SpanningCycleGraph::new(12, [(0, 6, r("1")), (3, 9, r("1")), (1, 7, r("1")), (4, 10, r("1"))]).unwrap()
    }

    #[test]
    fn weak_counting_vacuous_below_threshold() {
        let g = dense_single_bucket();
        let rep = check_weak_counting(&g, 2, &r("1"), Protocol::Full).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.get("hypothesis"), Some(&crate::report::Quantity::Bool(false)));
        assert!(rep.int("max_journey_chords").is_some());
    }

    #[test]
    fn weak_counting_single_heavy_chord_has_overlapping_windows() {
        // Meeting k n / eps with one chord forces eps w / 2 >= n / 2, so
        // the two endpoint windows always meet.
        let g = SpanningCycleGraph::new(30, [(0, 15, r("30"))]).unwrap();
        let rep = check_weak_counting(&g, 1, &r("1"), Protocol::Warmup).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn weak_counting_warmup_many_light_chords() {
        let chords: Vec<_> = (0..8).map(|i| (i, i + 15, r("4"))).collect();
        let g = SpanningCycleGraph::new(30, chords).unwrap();
        let rep = check_weak_counting(&g, 1, &r("1"), Protocol::Warmup).unwrap();
        assert_eq!(rep.get("hypothesis"), Some(&crate::report::Quantity::Bool(true)));
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.to_text());
        assert!(rep.int("max_journey_chords").unwrap() >= 1);
    }

    #[test]
    fn medium_counting_below_threshold_records_nothing() {
        let g = dense_single_bucket();
        let run = medium_counting(&g, 2, &r("1"), Protocol::Full).unwrap();
        assert_eq!(run.recorded.len(), 0);
        assert_eq!(run.report.verdict, Verdict::Pass);
    }

    #[test]
    fn medium_counting_one_round_single_bucket() {
        // k = 1, eps = 1, n = 8: threshold 32. Both chords sit in bucket 4,
        // so t = floor(2^3) = 8, and one deletion drops the weight to 16.
        let g = SpanningCycleGraph::new(8, [(0, 4, r("16")), (2, 6, r("16"))]).unwrap();
        let run = medium_counting(&g, 1, &r("1"), Protocol::Full).unwrap();
        assert_eq!(run.rounds, 1, "{}", run.report.to_text());
        assert_eq!(run.recorded.len(), bucket_bound(1, &r("1"), 4, true) + 1);
        assert_eq!(run.recorded.len(), 9);
        assert_eq!(run.report.verdict, Verdict::Pass, "{}", run.report.to_text());
        assert!(run.recorded.iter().all(|p| p.decomposition.is_some()));
    }

    #[test]
    fn shifting_wraps_every_segment() {
        let g = SpanningCycleGraph::new(20, [(2, 10, r("4")), (12, 5, r("8"))]).unwrap();
        let base = SafePath::new(2, vec![Step::chord(&g, 0, 2), Step::forward(&g, 10), Step::forward(&g, 11), Step::chord(&g, 1, 12), Step::backward(&g, 5), Step::backward(&g, 4)]);
        let spans = [(0, 1), (1, 6)];
        let p = shifted(&g, &base, &spans, 1);
        assert_eq!(serialize_path(&p), "1 F C:2-10 B F F F C:12-5 B B B");
        let segs = classify_path(&g, p.start, &p.steps, 2, &r("1"), Mode::EdgeSafeMonotone, false).unwrap().unwrap();
        assert_eq!(segs.iter().map(|s| s.s).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn monte_carlo_degenerate_probabilities() {
        let g = SpanningCycleGraph::new(10, [(0, 5, r("1")), (2, 7, r("2"))]).unwrap();
        let one = monte_carlo_full_counting(&g, 1, &r("1"), &r("1"), 50, 3).unwrap();
        assert_eq!(one.verdict, Verdict::Pass);
        assert_eq!(one.get("expected_survivors"), Some(&crate::report::Quantity::Rational(r(&one.int("paths").unwrap().to_string()))));
        assert_eq!(one.get("standard_error"), Some(&crate::report::Quantity::Real(0.0)));
        let zero = monte_carlo_full_counting(&g, 1, &r("1"), &r("0"), 50, 3).unwrap();
        assert_eq!(zero.get("empirical_mean"), Some(&crate::report::Quantity::Real(0.0)));
        assert!(matches!(
            monte_carlo_full_counting(&g, 1, &r("1"), &r("3/2"), 5, 0),
            Err(Error::InvalidProbability(_))
        ));
    }

    #[test]
    fn monte_carlo_is_schedule_independent() {
        let g = SpanningCycleGraph::new(10, [(0, 5, r("1")), (2, 7, r("2")), (1, 6, r("3"))]).unwrap();
        let a = monte_carlo_full_counting(&g, 2, &r("1"), &r("1/2"), 300, 11).unwrap();
        let b = monte_carlo_full_counting(&g, 2, &r("1"), &r("1/2"), 300, 11).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
