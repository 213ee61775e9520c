//! `hypertrans` — measure hypergraph transitivity, check measures against
//! the axiom suite, generate synthetic hypergraphs, and compare inputs with
//! null models. See FORMAT.md in the repository root for the file formats
//! and CSV column layouts.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hypertrans::analysis::{self, ObservationReport};
use hypertrans::axioms;
use hypertrans::generators::{self, GeneratorError, SizeDistribution, TheraOutput, TheraParams};
use hypertrans::hypergraph::{CandidateSet, Hypergraph, LoadError, WedgeParts};
use hypertrans::interaction::ScoreFunction;
use hypertrans::measures::{self, MeasureKind, SampleSpec, WedgeScratch};

/// Seed used when the user does not pass one; fixed, never time-based, so
/// repeated runs are comparable.
const DEFAULT_SEED: u64 = 17;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.code());
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Infeasible(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Infeasible(m) => write!(f, "{m}"),
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        match e {
            GeneratorError::BudgetInfeasible { .. }
            | GeneratorError::InfeasibleSize { .. }
            | GeneratorError::InvalidParams(_) => CliError::Infeasible(e.to_string()),
            GeneratorError::InvalidSizeDistribution(_) => CliError::Data(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

const FORMATS_HELP: &str = "\
File formats (details in FORMAT.md):
  edge list           one hyperedge per line, node ids separated by
                      whitespace or commas; '#' lines ignored
  nverts-simplices    <stem>-nverts.txt (one size per line) consumed in
                      lockstep with <stem>-simplices.txt (flat vertex stream)
  size histogram      'size count' per line, for generate --sizes

CSV columns:
  wedge scores        wedge_a,wedge_b,body_size,score
  bench               workload,algorithm,wall_ms,wedges,candidate_touches
  degree profile      degree_lo,degree_hi,mean_transitivity,node_count
  score histogram     score_lo,score_hi,count";

#[derive(Parser, Debug)]
#[command(
    name = "hypertrans",
    version,
    about = "Hypergraph transitivity: measures, axiom conformance, generators, null-model analysis",
    after_help = FORMATS_HELP
)]
struct Cli {
    /// Worker threads (0 = all cores). The HT_THREADS environment variable
    /// overrides; 1 forces the sequential path.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute graph/node/hyperedge transitivity of an input hypergraph.
    Measure(MeasureArgs),
    /// Generate a synthetic hypergraph.
    Generate(GenerateArgs),
    /// Compare an input hypergraph against degree-preserving null models.
    Analyze(AnalyzeArgs),
    /// Run the axiom-conformance suite for one measure.
    Axioms(AxiomsArgs),
    /// Time the naive and fast per-wedge algorithms on the same workload.
    Bench(BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
enum FormatArg {
    /// One hyperedge per line, ids separated by whitespace or commas.
    EdgeList,
    /// Benson-style pair of files: `<stem>-nverts.txt` + `<stem>-simplices.txt`.
    NvertsSimplices,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
enum ScoreArg {
    Coverage,
    Penalized,
}

impl ScoreArg {
    fn build(self) -> ScoreFunction {
        match self {
            ScoreArg::Coverage => ScoreFunction::Coverage,
            ScoreArg::Penalized => ScoreFunction::Penalized,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
enum ModelArg {
    Thera,
    NaiveThera,
    Hypercl,
}

#[derive(Args, Debug, Serialize)]
struct InputArgs {
    /// Input hypergraph path. For nverts-simplices, the common file stem
    /// (with or without the `-nverts.txt` suffix).
    #[arg(long)]
    input: PathBuf,

    #[arg(long, value_enum, default_value = "edge-list")]
    format: FormatArg,

    /// Keep duplicate hyperedges and singletons instead of dropping them.
    #[arg(long)]
    no_dedupe: bool,
}

impl InputArgs {
    fn load(&self) -> Result<Hypergraph, CliError> {
        let dedupe = !self.no_dedupe;
        match self.format {
            FormatArg::EdgeList => {
                let file = File::open(&self.input).map_err(|e| io_err(&self.input, e))?;
                Ok(Hypergraph::from_edge_list(BufReader::new(file), dedupe)?)
            }
            FormatArg::NvertsSimplices => {
                let stem = self
                    .input
                    .to_string_lossy()
                    .trim_end_matches("-nverts.txt")
                    .to_string();
                let nverts = PathBuf::from(format!("{stem}-nverts.txt"));
                let simplices = PathBuf::from(format!("{stem}-simplices.txt"));
                let nf = File::open(&nverts).map_err(|e| io_err(&nverts, e))?;
                let sf = File::open(&simplices).map_err(|e| io_err(&simplices, e))?;
                Ok(Hypergraph::from_nverts_simplices(
                    BufReader::new(nf),
                    BufReader::new(sf),
                    dedupe,
                )?)
            }
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct SampleArgs {
    /// Score only this fraction of hyperwedges (seeded uniform sampling).
    #[arg(long)]
    sample_rate: Option<f64>,
}

impl SampleArgs {
    fn build(&self, seed: u64) -> Result<Option<SampleSpec>, CliError> {
        match self.sample_rate {
            None => Ok(None),
            Some(rate) if rate > 0.0 && rate <= 1.0 => Ok(Some(SampleSpec { rate, seed })),
            Some(rate) => Err(CliError::Usage(format!(
                "--sample-rate must lie in (0, 1], got {rate}"
            ))),
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct MeasureArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, default_value = "hypertrans")]
    measure: String,

    #[arg(long, value_enum, default_value = "penalized")]
    score: ScoreArg,

    #[command(flatten)]
    sample: SampleArgs,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also write the per-wedge score stream as CSV.
    #[arg(long)]
    wedge_csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,

    /// Output edge-list path.
    #[arg(long)]
    out: PathBuf,

    /// Sidecar metadata path (levels, communities, clamp events).
    #[arg(long)]
    meta: Option<PathBuf>,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Node count (thera, naive-thera).
    #[arg(long)]
    n: Option<u32>,

    /// Hyperedge size histogram file: "size count" per line.
    #[arg(long)]
    sizes: Option<PathBuf>,

    /// Extract the size histogram from a reference edge-list corpus.
    #[arg(long)]
    sizes_from: Option<PathBuf>,

    /// Reference corpus for hypercl (degree weights + size sequence).
    #[arg(long)]
    r#ref: Option<PathBuf>,

    /// Community size C.
    #[arg(long, default_value_t = 10)]
    community: u32,

    /// Intra-community hyperedge ratio p.
    #[arg(long, default_value_t = 0.8)]
    intra: f64,

    /// Level-sampling coefficient.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,

    /// Level-size exponent.
    #[arg(long, default_value_t = 2)]
    beta: u32,
}

#[derive(Args, Debug, Serialize)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, value_enum, default_value = "penalized")]
    score: ScoreArg,

    #[arg(long, default_value_t = 10)]
    null_runs: usize,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(flatten)]
    sample: SampleArgs,

    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Directory for plotting CSVs (degree profiles, score histograms).
    #[arg(long)]
    csv_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct AxiomsArgs {
    /// hypertrans or b1..b9.
    #[arg(long)]
    measure: String,

    #[arg(long, value_enum, default_value = "penalized")]
    score: ScoreArg,

    /// Random search trials per axiom (fixtures always run).
    #[arg(long, default_value_t = 1000)]
    trials: u64,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Accepted for compatibility; comparison is the only mode.
    #[arg(long)]
    compare: bool,

    #[arg(long, default_value_t = 3)]
    repeats: u32,

    #[arg(long, value_enum, default_value = "penalized")]
    score: ScoreArg,

    #[command(flatten)]
    sample: SampleArgs,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = resolve_threads(cli.threads)?;
    if let Some(t) = threads {
        // ignore the error on repeated initialization (tests call run twice)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match cli.command {
        Command::Measure(args) => cmd_measure(args, threads),
        Command::Generate(args) => cmd_generate(args, threads),
        Command::Analyze(args) => cmd_analyze(args, threads),
        Command::Axioms(args) => cmd_axioms(args, threads),
        Command::Bench(args) => cmd_bench(args, threads),
    }
}

fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Ok(v) = std::env::var("HT_THREADS") {
        let t: usize = v
            .parse()
            .map_err(|_| CliError::Usage(format!("HT_THREADS must be an integer, got {v:?}")))?;
        return Ok(Some(t));
    }
    Ok(flag)
}

fn parse_measure(s: &str) -> Result<MeasureKind, CliError> {
    s.parse().map_err(CliError::Usage)
}

/// FNV-1a over the canonical config JSON; identifies a run configuration in
/// output headers.
fn config_hash(config: &serde_json::Value) -> String {
    let bytes = config.to_string().into_bytes();
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn run_meta(
    command: &str,
    seed: u64,
    threads: Option<usize>,
    config: serde_json::Value,
) -> serde_json::Value {
    let hash = config_hash(&config);
    json!({
        "tool": "hypertrans",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": seed,
        "threads": threads,
        "config": config,
        "config_hash": hash,
    })
}

fn write_json(out: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    match out {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| io_err(path, e))?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_err(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

fn cmd_measure(args: MeasureArgs, threads: Option<usize>) -> Result<(), CliError> {
    let kind = parse_measure(&args.measure)?;
    let h = args.input.load()?;
    let f = args.score.build();
    let sample = args.sample.build(args.seed)?;
    let run = measures::run_measure(&h, &f, kind, sample);
    let s = &run.summary;

    let node_t: serde_json::Map<String, serde_json::Value> = s
        .node_transitivity
        .iter()
        .map(|(&v, &t)| (h.label(v).to_string(), json!(t)))
        .collect();
    let edge_t: serde_json::Map<String, serde_json::Value> = s
        .hyperedge_transitivity
        .iter()
        .map(|(&e, &t)| (e.to_string(), json!(t)))
        .collect();

    let config = serde_json::to_value(&args).expect("args serialize");
    let report = json!({
        "meta": run_meta("measure", args.seed, threads, config),
        "input": input_summary(&h, &args.input.input),
        "measure": kind.name(),
        "score": f.name(),
        "graph_transitivity": s.graph_transitivity,
        "wedge_count": s.wedge_count,
        "sampled": s.sampled,
        "no_wedges": s.no_wedges,
        "score_guarantees_void": s.score_guarantees_void,
        "warnings": s.warnings,
        "node_transitivity": node_t,
        "hyperedge_transitivity": edge_t,
        "hyperedge_transitivity_range": s.hyperedge_transitivity_range,
    });
    write_json(args.out.as_deref(), &report)?;

    if let Some(csv) = &args.wedge_csv {
        let file = File::create(csv).map_err(|e| io_err(csv, e))?;
        let mut w = BufWriter::new(file);
        let header = format!(
            "# hypertrans {} measure={} score={} seed={}\n",
            env!("CARGO_PKG_VERSION"),
            kind.name(),
            f.name(),
            args.seed
        );
        w.write_all(header.as_bytes())
            .and_then(|_| w.write_all(b"wedge_a,wedge_b,body_size,score\n"))
            .map_err(|e| io_err(csv, e))?;
        for sc in &run.scores {
            writeln!(w, "{},{},{},{}", sc.a, sc.b, sc.body_size, sc.value)
                .map_err(|e| io_err(csv, e))?;
        }
    }
    Ok(())
}

fn input_summary(h: &Hypergraph, path: &Path) -> serde_json::Value {
    json!({
        "path": path.display().to_string(),
        "nodes_used": h.used_node_count(),
        "nodes_declared": h.declared_node_count(),
        "hyperedges": h.edge_count(),
    })
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

fn load_corpus(path: &Path) -> Result<Hypergraph, CliError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    Ok(Hypergraph::from_edge_list(BufReader::new(file), true)?)
}

fn resolve_sizes(args: &GenerateArgs) -> Result<SizeDistribution, CliError> {
    match (&args.sizes, &args.sizes_from) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            Ok(SizeDistribution::from_text(&text)?)
        }
        (None, Some(path)) => {
            let corpus = load_corpus(path)?;
            Ok(SizeDistribution::from_hypergraph(&corpus)?)
        }
        _ => Err(CliError::Usage(
            "pass exactly one of --sizes <histogram file> or --sizes-from <corpus>".into(),
        )),
    }
}

fn cmd_generate(args: GenerateArgs, threads: Option<usize>) -> Result<(), CliError> {
    let config = serde_json::to_value(&args).expect("args serialize");
    let meta_common = run_meta("generate", args.seed, threads, config);

    let (hypergraph, model_meta) = match args.model {
        ModelArg::Thera => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("--model thera requires --n".into()))?;
            let params = TheraParams {
                nodes: n,
                sizes: resolve_sizes(&args)?,
                community_size: args.community,
                intra_ratio: args.intra,
                alpha: args.alpha,
                beta: args.beta,
                seed: args.seed,
            };
            let TheraOutput {
                hypergraph,
                metadata,
            } = generators::generate_thera(&params)?;
            (hypergraph, serde_json::to_value(&metadata).unwrap())
        }
        ModelArg::NaiveThera => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("--model naive-thera requires --n".into()))?;
            let sizes = resolve_sizes(&args)?;
            let h = generators::generate_naive_thera(n, &sizes, args.community, args.seed)?;
            (
                h,
                json!({"community_size": args.community, "seed": args.seed}),
            )
        }
        ModelArg::Hypercl => {
            let path = args
                .r#ref
                .as_ref()
                .ok_or_else(|| CliError::Usage("--model hypercl requires --ref <corpus>".into()))?;
            let corpus = load_corpus(path)?;
            let h = generators::hypercl_counterpart(&corpus, args.seed)?;
            (
                h,
                json!({"ref": path.display().to_string(), "seed": args.seed}),
            )
        }
    };

    let file = File::create(&args.out).map_err(|e| io_err(&args.out, e))?;
    let mut w = BufWriter::new(file);
    hypergraph
        .write_edge_list(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| io_err(&args.out, e))?;

    if let Some(meta_path) = &args.meta {
        let sidecar = json!({
            "meta": meta_common,
            "model": format!("{:?}", args.model).to_lowercase(),
            "nodes": hypergraph.used_node_count(),
            "hyperedges": hypergraph.edge_count(),
            "out": args.out.display().to_string(),
            "model_metadata": model_meta,
        });
        write_json(Some(meta_path), &sidecar)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn cmd_analyze(args: AnalyzeArgs, threads: Option<usize>) -> Result<(), CliError> {
    if args.null_runs < 1 {
        return Err(CliError::Usage("--null-runs must be at least 1".into()));
    }
    let h = args.input.load()?;
    let f = args.score.build();
    let sample = args.sample.build(args.seed)?;
    let report = analysis::observation_report(&h, &f, args.null_runs, args.seed, sample)?;

    let config = serde_json::to_value(&args).expect("args serialize");
    let out = json!({
        "meta": run_meta("analyze", args.seed, threads, config),
        "input": input_summary(&h, &args.input.input),
        "score": f.name(),
        "wedge_count": report.real.wedge_count,
        "conventions": {
            "null_sd": "sample standard deviation (n-1 divisor)",
            "p_value": "two-sided, normal CDF",
            "degree_bins": "base-2 logarithmic",
        },
        "report": report,
    });
    write_json(args.out.as_deref(), &out)?;

    if let Some(dir) = &args.csv_dir {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        write_profile_csv(&dir.join("degree_profile_real.csv"), &report, None)?;
        write_hist_csv(&dir.join("score_histogram_real.csv"), &report, None)?;
        for i in 0..report.nulls.len() {
            write_profile_csv(
                &dir.join(format!("degree_profile_null_{i}.csv")),
                &report,
                Some(i),
            )?;
            write_hist_csv(
                &dir.join(format!("score_histogram_null_{i}.csv")),
                &report,
                Some(i),
            )?;
        }
    }
    Ok(())
}

fn write_profile_csv(
    path: &Path,
    report: &ObservationReport,
    null_index: Option<usize>,
) -> Result<(), CliError> {
    let obs = match null_index {
        None => &report.real,
        Some(i) => &report.nulls[i],
    };
    let mut text = String::from("degree_lo,degree_hi,mean_transitivity,node_count\n");
    for b in &obs.degree_profile.bins {
        text.push_str(&format!(
            "{},{},{},{}\n",
            b.degree_lo, b.degree_hi, b.mean_transitivity, b.node_count
        ));
    }
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn write_hist_csv(
    path: &Path,
    report: &ObservationReport,
    null_index: Option<usize>,
) -> Result<(), CliError> {
    let obs = match null_index {
        None => &report.real,
        Some(i) => &report.nulls[i],
    };
    let bins = obs.score_histogram.len();
    let mut text = String::from("score_lo,score_hi,count\n");
    for (i, &c) in obs.score_histogram.iter().enumerate() {
        text.push_str(&format!(
            "{},{},{}\n",
            i as f64 / bins as f64,
            (i + 1) as f64 / bins as f64,
            c
        ));
    }
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

// ---------------------------------------------------------------------------
// axioms
// ---------------------------------------------------------------------------

fn cmd_axioms(args: AxiomsArgs, threads: Option<usize>) -> Result<(), CliError> {
    if args.trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let kind = parse_measure(&args.measure)?;
    let f = args.score.build();
    let row = axioms::conformance_row(kind, &f, args.trials, args.seed);

    let verdicts: Vec<serde_json::Value> = row
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom.name(),
                "violated": v.violated,
                "trials": v.trials,
                "witness": v.witness.as_ref().map(|w| json!({
                    "description": w.description,
                    "observed": w.observed,
                    "edges": w.instance.hypergraph.edges(),
                    "candidates": w.instance.candidates.as_ref().map(|c| c.indices().to_vec()),
                    "candidates_prime": w.instance.candidates_prime.as_ref().map(|c| c.indices().to_vec()),
                })),
            })
        })
        .collect();
    // one cell per axiom family, mirroring the published table shape
    let families: serde_json::Map<String, serde_json::Value> = (1..=7u8)
        .map(|fam| {
            let violated = row.violated_families.contains(&fam);
            (
                format!("A{fam}"),
                json!(if violated { "violated" } else { "satisfied" }),
            )
        })
        .collect();

    let config = serde_json::to_value(&args).expect("args serialize");
    let out = json!({
        "meta": run_meta("axioms", args.seed, threads, config),
        "measure": kind.name(),
        "score": f.name(),
        "trials_per_axiom": args.trials,
        "conformance": families,
        "checks": verdicts,
    });
    write_json(args.out.as_deref(), &out)
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct PreparedWedge {
    parts: WedgeParts,
    candidates: CandidateSet,
}

/// Times both per-wedge algorithms over the identical wedge stream and
/// checks that they produce the same values. Candidate touches follow the
/// cost model: `|L|*|R|` per candidate for the naive scan, and
/// `min(|L|,|e|)*min(|R|,|e|)` per candidate for the sweep.
fn bench_compare(
    h: &Hypergraph,
    f: &ScoreFunction,
    repeats: u32,
    sample: Option<SampleSpec>,
) -> (Vec<serde_json::Value>, f64, u64) {
    let mut prepared = Vec::new();
    let mut collector = hypertrans::hypergraph::CandidateCollector::new(h.edge_count());
    let mut out = Vec::new();
    for w in h.hyperwedges() {
        if let Some(s) = sample {
            if !s.keeps(w.a, w.b) {
                continue;
            }
        }
        let parts = h.wedge_parts(w).expect("enumerated wedges are valid");
        collector.overlapping(h, &parts, &mut out);
        if out.is_empty() {
            continue;
        }
        prepared.push(PreparedWedge {
            parts,
            candidates: CandidateSet::new(out.clone()),
        });
    }

    let mut naive_touches = 0u64;
    let mut fast_touches = 0u64;
    for pw in &prepared {
        let pairs = pw.parts.pair_count();
        naive_touches += pairs * pw.candidates.len() as u64;
        for e in pw.candidates.iter() {
            let edge = h.edge(e);
            let tl = pw.parts.left.len().min(edge.len()) as u64;
            let tr = pw.parts.right.len().min(edge.len()) as u64;
            fast_touches += tl * tr;
        }
    }

    let mut scratch = WedgeScratch::new();
    let time_fast = |scratch: &mut WedgeScratch| {
        let t0 = Instant::now();
        let mut acc = 0.0;
        for pw in &prepared {
            acc += measures::hypertrans_fast(h, &pw.parts, &pw.candidates, f, scratch).unwrap();
        }
        (t0.elapsed().as_secs_f64() * 1e3, acc)
    };
    let time_naive = || {
        let t0 = Instant::now();
        let mut acc = 0.0;
        for pw in &prepared {
            acc += measures::hypertrans_naive(h, &pw.parts, &pw.candidates, f).unwrap();
        }
        (t0.elapsed().as_secs_f64() * 1e3, acc)
    };

    let mut fast_ms = Vec::new();
    let mut naive_ms = Vec::new();
    let mut max_diff = 0.0f64;
    for _ in 0..repeats {
        let (ms_n, sum_n) = time_naive();
        let (ms_f, sum_f) = time_fast(&mut scratch);
        naive_ms.push(ms_n);
        fast_ms.push(ms_f);
        max_diff = max_diff.max((sum_n - sum_f).abs());
    }
    let median = |xs: &mut Vec<f64>| {
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs[xs.len() / 2]
    };
    let wedges = prepared.len() as u64;
    let records = vec![
        json!({"algorithm": "naive", "wall_ms": median(&mut naive_ms), "wedges": wedges, "candidate_touches": naive_touches}),
        json!({"algorithm": "fast", "wall_ms": median(&mut fast_ms), "wedges": wedges, "candidate_touches": fast_touches}),
    ];
    (records, max_diff, wedges)
}

fn cmd_bench(args: BenchArgs, threads: Option<usize>) -> Result<(), CliError> {
    if args.repeats < 1 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    let h = args.input.load()?;
    let f = args.score.build();
    let sample = args.sample.build(args.seed)?;
    let (records, max_diff, _) = bench_compare(&h, &f, args.repeats, sample);

    let workload = args
        .input
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "input".into());
    let config = serde_json::to_value(&args).expect("args serialize");
    let meta = run_meta("bench", args.seed, threads, config);
    let mut text = format!(
        "# hypertrans {} bench config_hash={} max_value_diff={max_diff:e}\n",
        env!("CARGO_PKG_VERSION"),
        meta["config_hash"].as_str().unwrap(),
    );
    text.push_str("workload,algorithm,wall_ms,wedges,candidate_touches\n");
    for r in &records {
        text.push_str(&format!(
            "{workload},{},{},{},{}\n",
            r["algorithm"].as_str().unwrap(),
            r["wall_ms"],
            r["wedges"],
            r["candidate_touches"],
        ));
    }
    if max_diff > 1e-9 {
        return Err(CliError::Data(format!(
            "naive and fast disagree by {max_diff}; this is a bug"
        )));
    }
    write_text(args.out.as_deref(), &text)
}
