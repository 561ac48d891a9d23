//! Greedy graph spanners with exact rational weights, the weighted-girth
//! toolkit around them, and brute-force certifiers for the path-counting
//! arguments that bound spanner lightness.
//!
//! The crate is organised bottom-up:
//!
//! - [`rational`] and [`graph`]: exact weights, graphs, Dijkstra, Kruskal.
//! - [`spanner`] and [`girth`]: the greedy spanner, stretch checks, weighted
//!   girth and lightness.
//! - [`reduction`]: from an arbitrary graph to one whose MST is a unit-weight
//!   spanning cycle.
//! - [`paths`]: safe and bucket-safe paths, their enumerators, and the hiker
//!   protocols.
//! - [`certify`]: dispersion and counting certifiers producing
//!   [`LemmaReport`]s.
//! - [`generate`] and [`experiment`]: seeded instance families and the
//!   lightness tradeoff harness.

pub mod certify;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod girth;
pub mod graph;
pub mod paths;
pub mod rational;
pub mod reduction;
pub mod report;
pub mod spanner;

pub use error::{Error, Result};
pub use girth::{
    certify_greedy_girth, check_max_weight_bound, lightness, normalized_cycle_weight, unweighted_girth,
    weighted_girth, weighted_girth_exhaustive, CycleWitness, Girth, WeightedGirth,
};
pub use graph::{
    build_graph, minimum_spanning_tree, parse_graph, serialize_graph, Edge, EdgeKey, WeightedGraph,
};
pub use paths::{
    bucketize, classify_path, enumerate_edge_simple_k_paths, enumerate_safe_k_paths, hiker_protocol_full,
    hiker_protocol_warmup, Bucket, HikerJourney, Mode, SafePath, Segment, SegmentTag, Step, StepKind,
};
pub use rational::Rational;
pub use reduction::{
    full_reduction, normalize_unit_mst, parse_scg, serialize_scg, to_spanning_cycle, ReductionTrace,
    SpanningCycleGraph,
};
pub use report::{LemmaReport, Quantity, Verdict};
pub use spanner::{greedy_spanner, verify_stretch, SpannerResult, StretchViolation};
