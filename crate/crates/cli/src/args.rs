use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lightspan::generate::WeightSpec;
use lightspan::Rational;

#[derive(Debug, Parser)]
#[command(name = "lightspan", version, about = "Greedy spanners, weighted girth and path-counting certifiers")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Refuse brute-force enumeration on graphs with more nodes than this.
    #[arg(long = "limit-n", global = true, default_value_t = 512)]
    pub limit_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Run the greedy spanner.
    Spanner(SpannerArgs),
    /// Size, weight, lightness and girth of a graph.
    Analyze(InputArgs),
    /// Reduce a graph to a unit-weight spanning-cycle graph.
    Reduce(InputArgs),
    /// Run a certifier.
    Verify(VerifyArgs),
    /// Run the stretch/lightness tradeoff harness.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Gnm,
    Geometric,
    Grid,
    CyclePlusChords,
    Petersen,
    Complete,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub radius: Option<Rational>,
    #[arg(long)]
    pub chords: Option<usize>,
    /// `unit`, `uniform:LO:HI` or `choice:W1,W2,...`.
    #[arg(long, default_value = "unit", value_parser = parse_weights)]
    pub weights: WeightSpec,
}

pub fn parse_weights(s: &str) -> Result<WeightSpec, String> {
    if s == "unit" {
        return Ok(WeightSpec::Unit);
    }
    if let Some(rest) = s.strip_prefix("uniform:") {
        let (lo, hi) = rest.split_once(':').ok_or("expected uniform:LO:HI")?;
        return Ok(WeightSpec::Uniform {
            lo: lo.parse().map_err(|e| format!("{e}"))?,
            hi: hi.parse().map_err(|e| format!("{e}"))?,
        });
    }
    if let Some(rest) = s.strip_prefix("choice:") {
        let values = rest.split(',').map(|v| v.parse::<Rational>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        return Ok(WeightSpec::Choice { values });
    }
    Err(format!("unknown weight spec {s:?}"))
}

#[derive(Debug, Args)]
pub struct SpannerArgs {
    /// Stretch factor.
    #[arg(long)]
    pub t: Rational,
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaId {
    MooreDispersion,
    MooreBound,
    GreedyGirth,
    MaxWeight,
    WarmupDispersion,
    FullDispersion,
    SafeDispersion,
    Esmatching,
    Bsmatching,
    Bmsdistinct,
    WeakCounting,
    MediumCounting,
    FullCountingMc,
    MainTheorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolName {
    Warmup,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub lemma: LemmaId,
    /// A graph file, or a spanning-cycle graph when the name ends in `.scg`.
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value = "1/4")]
    pub eps: Rational,
    #[arg(long)]
    pub t: Option<Rational>,
    #[arg(long, value_enum, default_value_t = ProtocolName::Full)]
    pub protocol: ProtocolName,
    #[arg(long = "keep-prob", default_value = "1/2")]
    pub keep_prob: Rational,
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// A JSON experiment config; overrides the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
    pub n: Vec<usize>,
    /// Edges per node for the gnm family.
    #[arg(long, default_value_t = 4)]
    pub density: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub k: Vec<usize>,
    #[arg(long, default_value = "1/2")]
    pub eps: Rational,
    #[arg(long, default_value_t = 1)]
    pub repetitions: usize,
    #[arg(long, default_value = "uniform:1:10", value_parser = parse_weights)]
    pub weights: WeightSpec,
}
