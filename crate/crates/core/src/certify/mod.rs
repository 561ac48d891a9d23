//! Certifiers for the dispersion, matching and counting arguments.
//!
//! Each certifier returns a [`LemmaReport`](crate::report::LemmaReport).
//! Statements are conditional: when the girth (or density) hypothesis fails
//! the verdict is `NotApplicable`, and a `Fail` always carries witnesses.

mod claims;
mod counting;
mod dispersion;
mod moore;

pub use claims::{check_bmsdistinct, check_bsmatching, check_esmatching};
pub use counting::{
    check_weak_counting, medium_counting, monte_carlo_full_counting, monte_carlo_summary, run_medium_counting,
    MediumRun, MonteCarloSummary, Protocol,
};
pub use dispersion::{
    check_bucket_monotone_dispersion, check_monotone_dispersion, check_safe_dispersion,
    check_unweighted_dispersion, endpoint_collisions, implied_cycle,
};
pub use moore::{main_theorem_report, moore_bound_report};

use crate::girth::{weighted_girth, WeightedGirth};
use crate::rational::Rational;
use crate::reduction::SpanningCycleGraph;
use crate::report::LemmaReport;

/// `(1 + 2 eps) * 2k`: the girth hypothesis for monotone safe paths.
pub fn warmup_girth_threshold(k: usize, eps: &Rational) -> Rational {
    girth_threshold(k, eps, 2, 2)
}

/// `(1 + 4 eps) * 2k`: the girth hypothesis for bucket-monotone safe paths.
pub fn full_girth_threshold(k: usize, eps: &Rational) -> Rational {
    girth_threshold(k, eps, 4, 2)
}

/// `(1 + 2 eps) * k`: enough girth to force distinct chords on a
/// bucket-monotone safe `k`-path.
pub fn distinct_girth_threshold(k: usize, eps: &Rational) -> Rational {
    girth_threshold(k, eps, 2, 1)
}

fn girth_threshold(k: usize, eps: &Rational, eps_factor: i64, k_factor: i64) -> Rational {
    let base = &Rational::one() + &(&Rational::from_integer(eps_factor) * eps);
    &base * &Rational::from_integer(k_factor * k as i64)
}

/// Computes the weighted girth of `scg`, records it with the threshold in
/// `report`, and marks the report `NotApplicable` (attaching the witness
/// cycle) unless the girth strictly exceeds `threshold`.
fn require_girth(report: &mut LemmaReport, scg: &SpanningCycleGraph, threshold: &Rational) -> (WeightedGirth, bool) {
    let girth = weighted_girth(&scg.to_graph());
    let holds = girth.value.exceeds(threshold);
    report
        .set("weighted_girth", girth.value.to_string())
        .set("girth_threshold", threshold)
        .set("hypothesis", holds);
    if !holds {
        report.not_applicable(format!("weighted girth {} is not above {}", girth.value, threshold));
        if let Some(w) = &girth.witness {
            report.witness(w.to_string());
        }
    }
    (girth, holds)
}

fn check_eps(eps: &Rational) -> crate::Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(crate::Error::BadParams(format!("eps must be positive, got {eps}")))
    }
}

fn check_k(k: usize) -> crate::Result<()> {
    if k >= 1 {
        Ok(())
    } else {
        Err(crate::Error::BadParams("k must be at least 1".into()))
    }
}
