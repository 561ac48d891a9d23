//! The stretch/lightness tradeoff harness.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{main_theorem_report, moore_bound_report};
use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorSpec};
use crate::girth::lightness;
use crate::graph::minimum_spanning_tree;
use crate::rational::Rational;
use crate::report::LemmaReport;
use crate::spanner::{greedy_spanner, verify_stretch};

/// Certifiers that can run on each spanner of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    MooreBound,
    MainTheorem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instances: Vec<GeneratorSpec>,
    pub ks: Vec<usize>,
    pub eps: Rational,
    /// Each instance runs with seeds `seed, seed + 1, ...`.
    #[serde(default = "one")]
    pub repetitions: usize,
    #[serde(default)]
    pub reports: Vec<ReportKind>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TradeoffRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub eps: Rational,
    pub t: Rational,
    pub spanner_edges: usize,
    pub spanner_weight: Rational,
    pub mst_weight: Rational,
    pub lightness: Rational,
    pub n_pow_1_over_k: f64,
    /// `lightness / (n^(1/k) / eps)`.
    pub ratio: f64,
}

pub const CSV_HEADER: &str = "n,m,k,eps,t,spanner_edges,spanner_weight,mst_weight,lightness,n_pow_1_over_k,ratio";

impl TradeoffRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.6},{:.6}",
            self.n,
            self.m,
            self.k,
            self.eps,
            self.t,
            self.spanner_edges,
            self.spanner_weight,
            self.mst_weight,
            self.lightness,
            self.n_pow_1_over_k,
            self.ratio
        )
    }
}

/// `(1 + eps)(2k - 1)`.
pub fn tradeoff_stretch(k: usize, eps: &Rational) -> Rational {
    &(&Rational::one() + eps) * &Rational::from(2 * k - 1)
}

/// Output of [`run_tradeoff`]: one row per (instance, repetition, k), in
/// config order, plus any requested certifier reports.
#[derive(Debug, Clone, Serialize)]
pub struct TradeoffRun {
    pub rows: Vec<TradeoffRow>,
    pub reports: Vec<LemmaReport>,
}

impl TradeoffRun {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }

    pub fn max_ratio(&self) -> Option<f64> {
        self.rows.iter().map(|r| r.ratio).reduce(f64::max)
    }

    /// Per `k`, the mean ratio at each `n` and whether it rises, falls, or
    /// neither as `n` grows.
    pub fn trends(&self) -> String {
        let mut by_k: BTreeMap<usize, BTreeMap<usize, Vec<f64>>> = BTreeMap::new();
        for r in &self.rows {
            by_k.entry(r.k).or_default().entry(r.n).or_default().push(r.ratio);
        }
        let mut out = String::new();
        for (k, by_n) in by_k {
            let means: Vec<(usize, f64)> =
                by_n.into_iter().map(|(n, v)| (n, v.iter().sum::<f64>() / v.len() as f64)).collect();
            let rising = means.windows(2).all(|w| w[1].1 >= w[0].1);
            let falling = means.windows(2).all(|w| w[1].1 <= w[0].1);
            let trend = match (rising, falling) {
                (true, true) => "flat",
                (true, false) => "increasing",
                (false, true) => "decreasing",
                (false, false) => "mixed",
            };
            let cells: Vec<String> = means.iter().map(|(n, r)| format!("n={n}:{r:.4}")).collect();
            writeln!(out, "k={k} {} ({trend})", cells.join(" ")).unwrap();
        }
        out
    }
}

fn one_row(spec: &GeneratorSpec, k: usize, eps: &Rational, reports: &[ReportKind]) -> Result<(TradeoffRow, Vec<LemmaReport>)> {
    let g = generate(spec)?;
    let t = tradeoff_stretch(k, eps);
    let h = greedy_spanner(&g, &t)?.spanner;
    let violations = verify_stretch(&g, &h, &t)?;
    if let Some(v) = violations.first() {
        return Err(Error::StretchViolated(format!("pair ({}, {}) in {:?}", v.u, v.v, spec)));
    }
    let n = g.node_count();
    let light = lightness(&h, &g)?;
    let mst_weight: Rational = minimum_spanning_tree(&g).into_iter().map(|i| &g.edge(i).weight).sum();
    let n_pow = (n as f64).powf(1.0 / k as f64);
    let ratio = light.to_f64() / (n_pow / eps.to_f64());
    let row = TradeoffRow {
        n,
        m: g.edge_count(),
        k,
        eps: eps.clone(),
        t,
        spanner_edges: h.edge_count(),
        spanner_weight: h.total_weight(),
        mst_weight,
        lightness: light,
        n_pow_1_over_k: n_pow,
        ratio,
    };
    let mut out = Vec::new();
    for kind in reports {
        out.push(match kind {
            ReportKind::MooreBound => moore_bound_report(&h, k)?,
            ReportKind::MainTheorem => main_theorem_report(&h, k, eps)?,
        });
    }
    Ok((row, out))
}

/// For each instance, repetition and `k`: greedy spanner with
/// `t = (1 + eps)(2k - 1)`, stretch verification, lightness. Instances run
/// in parallel; output order follows the config.
pub fn run_tradeoff(config: &ExperimentConfig) -> Result<TradeoffRun> {
    if !config.eps.is_positive() {
        return Err(Error::BadParams(format!("eps must be positive, got {}", config.eps)));
    }
    if config.ks.contains(&0) {
        return Err(Error::BadParams("k must be at least 1".into()));
    }
    let mut jobs = Vec::new();
    for spec in &config.instances {
        for rep in 0..config.repetitions {
            let mut spec = spec.clone();
            spec.seed = spec.seed.wrapping_add(rep as u64);
            for &k in &config.ks {
                jobs.push((spec.clone(), k));
            }
        }
    }
    let results: Vec<Result<(TradeoffRow, Vec<LemmaReport>)>> =
        jobs.par_iter().map(|(spec, k)| one_row(spec, *k, &config.eps, &config.reports)).collect();
    let mut run = TradeoffRun { rows: Vec::new(), reports: Vec::new() };
    for r in results {
        let (row, reports) = r?;
        run.rows.push(row);
        run.reports.extend(reports);
    }
    Ok(run)
}
