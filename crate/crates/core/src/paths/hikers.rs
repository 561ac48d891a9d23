//! The hiker protocols: one hiker starts at every node, and hikers swap
//! places along safe paths so that each itinerary is itself a monotone
//! (warmup) or bucket-monotone (full) extra-safe path.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;

use super::buckets::{bucket_bound, bucketize, edge_bound};
use super::classify::classify_with_budget;
use super::{Mode, SafePath, Step};

#[derive(Debug, Clone, Serialize)]
pub struct HikerDay {
    /// Chord index (warmup) or bucket index (full).
    pub day: usize,
    /// The step budget for that day.
    pub t: usize,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HikerJourney {
    pub hiker: usize,
    pub days: Vec<HikerDay>,
    /// The concatenated itinerary, classified as an extra-safe path with as
    /// many chords as it uses (bucket windows sized by the protocol's `k`).
    /// `decomposition` is `None` if the itinerary fails to classify or uses
    /// no chords.
    pub path: SafePath,
    pub chords_hiked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HikerRun {
    pub journeys: Vec<HikerJourney>,
    /// How many hikers crossed each chord.
    pub traversals: Vec<usize>,
    /// Positions of every hiker at the end of each day, `(day, positions)`.
    pub day_ends: Vec<(usize, Vec<usize>)>,
}

impl HikerRun {
    pub fn max_chords(&self) -> usize {
        self.journeys.iter().map(|j| j.chords_hiked).max().unwrap_or(0)
    }

    pub fn total_traversals(&self) -> usize {
        self.traversals.iter().sum()
    }

    /// Lowest-numbered hiker with at least `k` chords.
    pub fn first_with(&self, k: usize) -> Option<&HikerJourney> {
        self.journeys.iter().find(|j| j.chords_hiked >= k)
    }

    /// True when every recorded end-of-day layout is a permutation of nodes.
    pub fn positions_are_permutations(&self) -> bool {
        self.day_ends.iter().all(|(_, pos)| {
            let mut seen = vec![false; pos.len()];
            pos.iter().all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
        })
    }
}

fn finish(scg: &SpanningCycleGraph, k: usize, eps: &Rational, mode: Mode, days: Vec<Vec<HikerDay>>, traversals: Vec<usize>, day_ends: Vec<(usize, Vec<usize>)>) -> Result<HikerRun> {
    let mut journeys = Vec::with_capacity(days.len());
    for (hiker, days) in days.into_iter().enumerate() {
        let steps: Vec<Step> = days.iter().flat_map(|d| d.steps.iter().copied()).collect();
        let mut path = SafePath::new(hiker, steps);
        let chords_hiked = path.chord_count();
        path.decomposition = classify_with_budget(scg, hiker, &path.steps, k, eps, mode, true)?;
        journeys.push(HikerJourney { hiker, days, path, chords_hiked });
    }
    Ok(HikerRun { journeys, traversals, day_ends })
}

/// Chords are taken in increasing [`EdgeKey`](crate::graph::EdgeKey) order.
/// For chord `(u, v)` and each `s` in `0..=floor(eps * w / 2)`, the hikers at
/// `u - s` and `v - s` swap places along the two extra-safe paths
/// `F^s (u -> v) B^s` and `F^s (v -> u) B^s`.
///
/// The two endpoint windows `{u - s}` and `{v - s}` must be disjoint so
/// that no hiker walks two paths for the same chord; otherwise
/// [`Error::OverlappingWindows`] is returned.
pub fn hiker_protocol_warmup(scg: &SpanningCycleGraph, eps: &Rational) -> Result<HikerRun> {
    let n = scg.node_count();
    let mut who: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut days: Vec<Vec<HikerDay>> = vec![Vec::new(); n];
    let mut traversals = vec![0; scg.chord_count()];
    let mut day_ends = Vec::new();
    for (c, e) in scg.chords().iter().enumerate() {
        let top = edge_bound(&e.weight, eps, true);
        let window = |x: usize| (0..=top).map(move |s| scg.shift(x, -(s as i64)));
        let from_u: HashSet<usize> = window(e.lo).collect();
        if top >= n || window(e.hi).any(|y| from_u.contains(&y)) {
            return Err(Error::OverlappingWindows { u: e.lo, v: e.hi });
        }
        for s in 0..=top {
            for (x, y) in [(e.lo, e.hi), (e.hi, e.lo)] {
                let start = scg.shift(x, -(s as i64));
                let h = who[start];
                let mut steps = Vec::with_capacity(2 * s + 1);
                let mut at = start;
                for _ in 0..s {
                    steps.push(Step::forward(scg, at));
                    at = scg.forward(at);
                }
                steps.push(Step::chord(scg, c, x));
                at = y;
                for _ in 0..s {
                    steps.push(Step::backward(scg, at));
                    at = scg.backward(at);
                }
                pos[h] = at;
                days[h].push(HikerDay { day: c, t: top, steps });
            }
            let (a, b) = (scg.shift(e.lo, -(s as i64)), scg.shift(e.hi, -(s as i64)));
            who.swap(a, b);
            traversals[c] += 2;
        }
        day_ends.push((c, pos.clone()));
    }
    finish(scg, 1, eps, Mode::EdgeSafeMonotone, days, traversals, day_ends)
}

/// One day per nonempty bucket `i`, in increasing order, with budget
/// `t_i = floor(eps * k * 2^(i - 1))`; days with `t_i = 0` are skipped.
///
/// Dawn: every hiker plans `t_i` forward steps. A plan is kept as `t_i`
/// slots, each one forward step followed by a list of chords.
///
/// Morning: for each chord `(u, v)` of the bucket in
/// [`EdgeKey`](crate::graph::EdgeKey) order and each `s = 1..=t_i`, the hiker
/// planning to stand at `u` after slot `s` appends `u -> v` to that slot, the
/// hiker planning to stand at `v` appends `v -> u`, and the two exchange the
/// remainders of their plans. Every node keeps exactly one hiker planning to
/// reach it after each slot.
///
/// Afternoon: each hiker drops the `f_h` trailing forward steps that are not
/// followed by a chord, appends `t_i - f_h` backward steps, and walks.
pub fn hiker_protocol_full(scg: &SpanningCycleGraph, k: usize, eps: &Rational) -> Result<HikerRun> {
    let n = scg.node_count();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut days: Vec<Vec<HikerDay>> = vec![Vec::new(); n];
    let mut traversals = vec![0; scg.chord_count()];
    let mut day_ends = Vec::new();
    for bucket in bucketize(scg) {
        let t = bucket_bound(k, eps, bucket.index, true);
        if t == 0 {
            continue;
        }
        // plans[h][j]: chords (as (index, from)) walked after the forward
        // step of slot j. at[j][v] / end[j][h]: who stands where after slot j.
        let mut plans: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new(); t]; n];
        let mut end: Vec<Vec<usize>> = (0..t).map(|j| pos.iter().map(|&p| scg.shift(p, j as i64 + 1)).collect()).collect();
        let mut at: Vec<Vec<usize>> = vec![vec![0; n]; t];
        for j in 0..t {
            for h in 0..n {
                at[j][end[j][h]] = h;
            }
        }
        for &c in &bucket.chords {
            let (u, v) = (scg.chord(c).lo, scg.chord(c).hi);
            for j in 0..t {
                let (hu, hv) = (at[j][u], at[j][v]);
                plans[hu][j].push((c, u));
                plans[hv][j].push((c, v));
                for jj in j + 1..t {
                    let (a, b) = (std::mem::take(&mut plans[hu][jj]), std::mem::take(&mut plans[hv][jj]));
                    plans[hu][jj] = b;
                    plans[hv][jj] = a;
                }
                for jj in j..t {
                    let (eu, ev) = (end[jj][hu], end[jj][hv]);
                    end[jj][hu] = ev;
                    end[jj][hv] = eu;
                    at[jj][ev] = hu;
                    at[jj][eu] = hv;
                }
                traversals[c] += 2;
            }
        }
        for h in 0..n {
            let mut steps = Vec::new();
            if let Some(last) = plans[h].iter().rposition(|slot| !slot.is_empty()) {
                let mut here = pos[h];
                for slot in &plans[h][..=last] {
                    steps.push(Step::forward(scg, here));
                    here = scg.forward(here);
                    for &(c, from) in slot {
                        debug_assert_eq!(from, here);
                        let st = Step::chord(scg, c, from);
                        here = st.to;
                        steps.push(st);
                    }
                }
                for _ in 0..=last {
                    steps.push(Step::backward(scg, here));
                    here = scg.backward(here);
                }
                pos[h] = here;
            }
            days[h].push(HikerDay { day: bucket.index as usize, t, steps });
        }
        day_ends.push((bucket.index as usize, pos.clone()));
    }
    finish(scg, k, eps, Mode::BucketMonotone, days, traversals, day_ends)
}
