mod args;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use lightspan::certify::{self, Protocol};
use lightspan::experiment::{run_tradeoff, ExperimentConfig};
use lightspan::generate::{generate, generate_scg, Family, GeneratorSpec};
use lightspan::reduction::GraphStats;
use lightspan::{
    certify_greedy_girth, check_max_weight_bound, full_reduction, greedy_spanner, parse_graph, parse_scg,
    serialize_graph, serialize_scg, unweighted_girth, verify_stretch, LemmaReport, SpanningCycleGraph, Verdict,
    WeightedGraph,
};

use args::{BenchArgs, Cli, Command, FamilyName, Format, GenArgs, Global, LemmaId, ProtocolName, VerifyArgs};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let (body, code) = match &cli.command {
        Command::Gen(a) => (gen(a, g)?, ExitCode::SUCCESS),
        Command::Spanner(a) => {
            let graph = read_graph(&a.input)?;
            let res = greedy_spanner(&graph, &a.t)?;
            if !verify_stretch(&graph, &res.spanner, &a.t)?.is_empty() {
                bail!("spanner output misses its stretch bound");
            }
            (serialize_graph(&res.spanner), ExitCode::SUCCESS)
        }
        Command::Analyze(a) => (analyze(&read_graph(&a.input)?, g.format)?, ExitCode::SUCCESS),
        Command::Reduce(a) => (reduce(&read_graph(&a.input)?, g.format)?, ExitCode::SUCCESS),
        Command::Verify(a) => {
            let report = verify(a, g)?;
            let code = if report.verdict == Verdict::Fail { ExitCode::from(1) } else { ExitCode::SUCCESS };
            (render_report(&report, g.format), code)
        }
        Command::Bench(a) => bench(a, g)?,
    };
    match &g.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(code)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn is_scg(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "scg")
}

fn read_graph(path: &Path) -> Result<WeightedGraph> {
    let text = read_text(path)?;
    let g = if is_scg(path) { parse_scg(&text)?.to_graph() } else { parse_graph(&text)? };
    Ok(g)
}

/// A `.scg` file as is; anything else goes through the full reduction.
fn read_scg(path: &Path) -> Result<SpanningCycleGraph> {
    let text = read_text(path)?;
    if is_scg(path) {
        Ok(parse_scg(&text)?)
    } else {
        Ok(full_reduction(&parse_graph(&text)?)?.0)
    }
}

fn gen(a: &GenArgs, g: &Global) -> Result<String> {
    let need = |v: Option<usize>, name: &str| v.with_context(|| format!("--{name} is required for this family"));
    let family = match a.family {
        FamilyName::Gnm => Family::Gnm { n: need(a.n, "n")?, m: need(a.m, "m")? },
        FamilyName::Geometric => {
            Family::Geometric { n: need(a.n, "n")?, radius: a.radius.clone().context("--radius is required")? }
        }
        FamilyName::Grid => Family::Grid { rows: need(a.rows, "rows")?, cols: need(a.cols, "cols")? },
        FamilyName::CyclePlusChords => Family::CyclePlusChords { n: need(a.n, "n")?, chords: need(a.chords, "chords")? },
        FamilyName::Petersen => Family::Petersen,
        FamilyName::Complete => Family::Complete { n: need(a.n, "n")? },
    };
    let spec = GeneratorSpec { family, weights: a.weights.clone(), seed: g.seed };
    if g.out.as_deref().is_some_and(is_scg) {
        return Ok(serialize_scg(&generate_scg(&spec)?));
    }
    Ok(serialize_graph(&generate(&spec)?))
}

fn analyze(graph: &WeightedGraph, format: Format) -> Result<String> {
    let stats = GraphStats::of(graph)?;
    let girth = unweighted_girth(graph);
    let rows = [
        ("nodes", stats.nodes.to_string()),
        ("edges", stats.edges.to_string()),
        ("total_weight", stats.total_weight.to_string()),
        ("mst_weight", stats.mst_weight.to_string()),
        ("lightness", stats.lightness.to_string()),
        ("weighted_girth", stats.weighted_girth.to_string()),
        ("girth", girth.to_string()),
    ];
    Ok(match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                rows.iter().map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone()))).collect();
            serde_json::to_string_pretty(&map)? + "\n"
        }
        Format::Csv => {
            let (keys, vals): (Vec<&str>, Vec<String>) = rows.into_iter().unzip();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        Format::Text => rows.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
    })
}

fn reduce(graph: &WeightedGraph, format: Format) -> Result<String> {
    let (scg, trace) = full_reduction(graph)?;
    Ok(match format {
        Format::Text => serialize_scg(&scg),
        Format::Json => {
            let v = serde_json::json!({ "scg": serialize_scg(&scg), "trace": trace });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => bail!("reduce has no csv output; use text or json"),
    })
}

fn guard(n: usize, g: &Global) -> Result<()> {
    if n > g.limit_n {
        bail!("instance has {n} nodes, above --limit-n {}", g.limit_n);
    }
    Ok(())
}

fn verify(a: &VerifyArgs, g: &Global) -> Result<LemmaReport> {
    let (k, eps) = (a.k, &a.eps);
    let need_t = || a.t.clone().context("--t is required for this lemma");
    let protocol = match a.protocol {
        ProtocolName::Warmup => Protocol::Warmup,
        ProtocolName::Full => Protocol::Full,
    };
    let graph_lemma = matches!(
        a.lemma,
        LemmaId::MooreDispersion | LemmaId::MooreBound | LemmaId::GreedyGirth | LemmaId::MainTheorem
    );
    if graph_lemma {
        let graph = read_graph(&a.input)?;
        guard(graph.node_count(), g)?;
        return Ok(match a.lemma {
            LemmaId::MooreDispersion => certify::check_unweighted_dispersion(&graph, k)?,
            LemmaId::MooreBound => certify::moore_bound_report(&graph, k)?,
            LemmaId::GreedyGirth => certify_greedy_girth(&graph, &need_t()?, g.limit_n.min(10))?,
            _ => certify::main_theorem_report(&graph, k, eps)?,
        });
    }
    let scg = read_scg(&a.input)?;
    guard(scg.node_count(), g)?;
    Ok(match a.lemma {
        LemmaId::MaxWeight => check_max_weight_bound(&scg, &need_t()?),
        LemmaId::WarmupDispersion => certify::check_monotone_dispersion(&scg, k, eps)?,
        LemmaId::FullDispersion => certify::check_bucket_monotone_dispersion(&scg, k, eps)?,
        LemmaId::SafeDispersion => certify::check_safe_dispersion(&scg, k, eps)?,
        LemmaId::Esmatching => certify::check_esmatching(&scg, k, eps)?,
        LemmaId::Bsmatching => certify::check_bsmatching(&scg, k, eps)?,
        LemmaId::Bmsdistinct => certify::check_bmsdistinct(&scg, k, eps)?,
        LemmaId::WeakCounting => certify::check_weak_counting(&scg, k, eps, protocol)?,
        LemmaId::MediumCounting => certify::run_medium_counting(&scg, k, eps, protocol)?,
        LemmaId::FullCountingMc => {
            certify::monte_carlo_full_counting(&scg, k, eps, &a.keep_prob, a.trials, g.seed)?
        }
        _ => unreachable!("graph lemmas handled above"),
    })
}

fn render_report(r: &LemmaReport, format: Format) -> String {
    match format {
        Format::Text => r.to_text(),
        Format::Json => r.to_json() + "\n",
        Format::Csv => {
            let mut out = String::from("key,value\n");
            writeln!(out, "lemma,{}", r.lemma).unwrap();
            writeln!(out, "verdict,{}", r.verdict).unwrap();
            for (k, v) in &r.counts {
                writeln!(out, "{k},{}", csv_field(&v.to_string())).unwrap();
            }
            for w in &r.witnesses {
                writeln!(out, "witness,{}", csv_field(w)).unwrap();
            }
            out
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn bench(a: &BenchArgs, g: &Global) -> Result<(String, ExitCode)> {
    let config = match &a.config {
        Some(path) => serde_json::from_str::<ExperimentConfig>(&read_text(path)?)
            .with_context(|| format!("parsing {}", path.display()))?,
        None => ExperimentConfig {
            instances: a
                .n
                .iter()
                .map(|&n| GeneratorSpec {
                    family: Family::Gnm { n, m: (a.density * n).min(n * (n - 1) / 2) },
                    weights: a.weights.clone(),
                    seed: g.seed,
                })
                .collect(),
            ks: a.k.clone(),
            eps: a.eps.clone(),
            repetitions: a.repetitions,
            reports: vec![],
        },
    };
    let run = run_tradeoff(&config)?;
    let failed = run.reports.iter().any(|r| r.verdict == Verdict::Fail);
    let body = match g.format {
        Format::Csv => run.to_csv(),
        Format::Json => serde_json::to_string_pretty(&run)? + "\n",
        Format::Text => {
            let mut out = run.to_csv();
            if let Some(m) = run.max_ratio() {
                writeln!(out, "\nmax ratio: {m:.6}").unwrap();
            }
            out.push_str(&run.trends());
            for r in &run.reports {
                out.push('\n');
                out.push_str(&r.to_text());
            }
            out
        }
    };
    Ok((body, if failed { ExitCode::from(1) } else { ExitCode::SUCCESS }))
}
