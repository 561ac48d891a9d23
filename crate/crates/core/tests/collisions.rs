//! Unordered safe paths can share endpoints on graphs whose girth is large
//! enough for the monotone statements; the ordered families cannot.

mod common;

use lightspan::certify::{
    check_bucket_monotone_dispersion, check_monotone_dispersion, check_safe_dispersion, implied_cycle,
};
use lightspan::{SpanningCycleGraph, Verdict};

use common::{collision_instance, q};

#[test]
fn unordered_safe_paths_collide() {
    let scg = collision_instance();
    let r = check_safe_dispersion(&scg, 3, &q("1/4")).unwrap();
    assert_eq!(r.verdict, Verdict::Fail, "{}", r.to_text());
    assert!(!r.witnesses.is_empty());
}

#[test]
fn monotone_families_do_not() {
    let scg = collision_instance();
    let eps = q("1/4");
    let mono = check_monotone_dispersion(&scg, 3, &eps).unwrap();
    assert_eq!(mono.verdict, Verdict::Pass, "{}", mono.to_text());
    let bucket = check_bucket_monotone_dispersion(&scg, 3, &eps).unwrap();
    assert_ne!(bucket.verdict, Verdict::Fail, "{}", bucket.to_text());
}

#[test]
fn collisions_close_no_light_cycle() {
    // Some colliding pairs retrace a chord and close no cycle at all; the
    // rest close the 10-cycle through (50, 92) and (50, 100), heavier than
    // the threshold 9, so girth alone cannot rule the collision out.
    let scg = collision_instance();
    let paths = lightspan::enumerate_safe_k_paths(&scg, 3, &q("1/4"), lightspan::Mode::EdgeSafe, false, usize::MAX)
        .unwrap();
    let pairs = lightspan::certify::endpoint_collisions(&paths);
    assert_eq!(pairs.len(), 18);
    let cycles: Vec<_> = pairs.iter().filter_map(|(a, b)| implied_cycle(&scg, a, b)).collect();
    assert!(!cycles.is_empty() && cycles.len() < pairs.len());
    assert!(cycles.iter().all(|c| c.normalized_weight == q("10")));
}

#[test]
fn shrunken_instance_misses_the_girth_hypothesis() {
    let scg = SpanningCycleGraph::new(
        64,
        [(5, 10, q("1")), (5, 9, q("1")), (10, 42, q("32")), (37, 42, q("1")), (37, 41, q("1"))],
    )
    .unwrap();
    let r = check_monotone_dispersion(&scg, 3, &q("1/4")).unwrap();
    assert_eq!(r.verdict, Verdict::NotApplicable, "{}", r.to_text());
}
