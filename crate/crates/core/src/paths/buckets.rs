use serde::Serialize;

use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;

/// Chords with weight in `[2^index, 2^(index + 1))`, by chord index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bucket {
    pub index: u32,
    pub chords: Vec<usize>,
}

/// Bucket index of a weight `w >= 1`.
pub fn bucket_of(w: &Rational) -> u32 {
    let f = w.floor();
    assert!(f >= 1.into(), "bucket of weight {w} < 1");
    (f.bits() - 1) as u32
}

/// Nonempty buckets in increasing index order. Chords within a bucket keep
/// their [`EdgeKey`](crate::graph::EdgeKey) order.
pub fn bucketize(scg: &SpanningCycleGraph) -> Vec<Bucket> {
    let mut out: Vec<Bucket> = Vec::new();
    // Chords are sorted by weight, so buckets arrive in order.
    for (i, c) in scg.chords().iter().enumerate() {
        let b = bucket_of(&c.weight);
        match out.last_mut() {
            Some(last) if last.index == b => last.chords.push(i),
            _ => out.push(Bucket { index: b, chords: vec![i] }),
        }
    }
    out
}

/// Largest `s` for an edge-safe path of a chord of weight `w`:
/// `floor(eps * w)`, or `floor(eps * w / 2)` when `extra`.
pub fn edge_bound(w: &Rational, eps: &Rational, extra: bool) -> usize {
    let b = eps * w;
    if extra {
        (&b / &Rational::from_integer(2)).floor_usize()
    } else {
        b.floor_usize()
    }
}

/// Largest `s` for a bucket-safe path of bucket `i`: `floor(eps * k * 2^i)`,
/// or `floor(eps * k * 2^(i - 1))` when `extra`.
pub fn bucket_bound(k: usize, eps: &Rational, i: u32, extra: bool) -> usize {
    let exp = i as i32 - i32::from(extra);
    (&(eps * &Rational::from(k)) * &Rational::pow2(exp)).floor_usize()
}
