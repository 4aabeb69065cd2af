//! `kdist`: distance-k graph analysis, family construction, enumeration,
//! extremal searches and claim verification from the command line.
//!
//! Exit status: 0 on success, 2 when a verification completed but found
//! mismatches (counterexample artifacts are in the report), 1 on error.

mod output;
mod range;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kdist_core::bounds::evaluate_bounds;
use kdist_core::canon::canonical_form;
use kdist_core::enumeration::{ConnectedGraphs, FreeTrees, StreamSource};
use kdist_core::families::{self, BroomSpec};
use kdist_core::graph::Graph;
use kdist_core::graph6::{from_graph6_line, to_dot, to_graph6, Graph6Reader, HEADER};
use kdist_core::search::{
    self, lemma8_sweep, max_k_distances, verify_k2_bound, verify_star_proposition,
    verify_tree_theorem, verify_triangle_free_conjecture, Scope, SearchTask, Verdict,
    VerifyOptions,
};
use kdist_core::structure::{
    interior_vertices, min_unaffiliated, spanning_tree_lemma_check, LemmaCheckMode,
};
use range::parse_range;
use serde::Serialize;
use std::io::{BufRead, Read, Write};
use std::path::PathBuf;

#[derive(Parser, Serialize)]
#[command(name = "kdist", version, about = "Distance-k graphs: analysis, constructions, enumeration and extremal search")]
struct Cli {
    /// Worker threads for sharded searches (default: $KDIST_THREADS or 1).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the primary output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
enum Command {
    /// Analyze one graph at distance k: counts, degrees, clique number,
    /// interior set and every bound.
    Gk(GkArgs),
    /// Build a named family and emit it as graph6 or DOT.
    Construct(ConstructArgs),
    /// Evaluate the bound set on every graph of a graph6 stream.
    Bounds(BoundsArgs),
    /// Stream connected graphs or free trees, one graph6 line each.
    Enumerate(EnumerateArgs),
    /// Maximize e(G_k) over a graph stream.
    Search(SearchArgs),
    /// Run a claim verifier.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args, Serialize)]
struct GkArgs {
    /// Distance of interest.
    #[arg(long, short)]
    k: usize,
    /// Graph as a graph6 line; read from --input or stdin when omitted.
    graph6: Option<String>,
    /// File with a graph6 line (first non-header line is used).
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[command(subcommand)]
    family: Family,
    /// Output format.
    #[arg(long, value_enum, default_value = "graph6", global = true)]
    format: GraphFormat,
}

#[derive(Subcommand, Serialize, Clone)]
enum Family {
    /// Path on k-1 vertices with balanced leaf bundles at both ends.
    DoubleBroom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Hub(s) with handle paths ending in leaf bundles; cross-broom leaves
    /// sit at distance exactly k.
    TBroom {
        #[arg(long)]
        k: usize,
        /// Comma-separated leaf counts, one per broom (e.g. 3,2,2).
        #[arg(long, value_delimiter = ',')]
        leaves: Vec<usize>,
    },
    /// Two cliques sharing a vertex, with two edges swapped for one.
    GluedCliques {
        #[arg(long)]
        n: usize,
    },
    Star {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum GraphFormat {
    Graph6,
    Dot,
}

#[derive(Args, Serialize)]
struct BoundsArgs {
    /// Distance of interest.
    #[arg(long, short)]
    k: usize,
    /// graph6 stream; stdin when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct EnumerateArgs {
    /// Vertex count.
    #[arg(long)]
    n: usize,
    /// Enumerate free trees instead of connected graphs.
    #[arg(long)]
    trees: bool,
    /// Emit only one shard, as "index/total" (e.g. 0/4).
    #[arg(long)]
    shard: Option<String>,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, short)]
    k: usize,
    /// Keep only graphs with clique number of the distance-k graph at most
    /// this value.
    #[arg(long)]
    clique_cap: Option<usize>,
    /// connected: maximum over the stream; all: fold in disconnected
    /// graphs by component composition.
    #[arg(long, value_enum, default_value = "connected")]
    scope: ScopeArg,
    /// External graph6 file to scan instead of the internal generator.
    #[arg(long)]
    source: Option<PathBuf>,
    /// Number of independent shards to split the stream into.
    #[arg(long, default_value_t = 1)]
    shards: u64,
    /// Base path for per-shard checkpoint files.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum ScopeArg {
    Connected,
    All,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Serialize)]
enum VerifyCommand {
    /// Triangle-free 2-distance graphs have at most (n-1)^2/4 + 1 edges.
    K2Bound(RangeArgs),
    /// Under clique cap 2, max e(G_k) is the double-broom value and
    /// maximizers are k-isomorphic to the double broom.
    TriangleFree {
        #[arg(long, short)]
        k: usize,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Over trees, e(G_k) is maximized by a t-broom with the parity-correct
    /// width.
    TreeTheorem {
        /// Vertex counts, e.g. 5..14.
        #[arg(long)]
        n: String,
        /// Distances, e.g. 3..7.
        #[arg(long, short)]
        k: String,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// max e(G_2) = C(n-1,2), attained exactly by the star.
    Star(RangeArgs),
    /// Spanning-tree path-length dichotomy, exhaustively or on one graph.
    Lemma8(Lemma8Args),
}

#[derive(Args, Serialize)]
struct RangeArgs {
    /// Vertex counts, e.g. 5..9 (inclusive) or a single value.
    #[arg(long)]
    n: String,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Shards per search.
    #[arg(long, default_value_t = 1)]
    shards: u64,
}

#[derive(Args, Serialize)]
struct Lemma8Args {
    /// Sweep all connected graphs with these vertex counts, e.g. 4..7.
    #[arg(long, conflicts_with_all = ["graph6", "k", "r"])]
    n: Option<String>,
    /// Check a single graph given as graph6.
    graph6: Option<String>,
    #[arg(long, short, requires = "graph6")]
    k: Option<usize>,
    #[arg(long, short, requires = "graph6")]
    r: Option<usize>,
    /// auto: exhaustive when the matrix-tree count allows, sampled
    /// otherwise.
    #[arg(long, value_enum, default_value = "auto")]
    mode: LemmaModeArg,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum LemmaModeArg {
    Auto,
    Exhaustive,
    Sampled,
}

/// Everything a report needs to be reproduced: the full parsed
/// configuration travels with the payload.
#[derive(Serialize)]
struct RunEnvelope<'a, T: Serialize> {
    schema_version: u32,
    tool_version: &'static str,
    run_config: &'a Cli,
    report: T,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    });
}

fn threads(cli: &Cli) -> usize {
    cli.threads
        .or_else(|| {
            std::env::var("KDIST_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1)
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.output {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            f.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                f.write_all(b"\n")?;
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                lock.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn emit_json<T: Serialize>(cli: &Cli, report: T) -> anyhow::Result<()> {
    let envelope = RunEnvelope {
        schema_version: search::REPORT_SCHEMA_VERSION,
        tool_version: search::TOOL_VERSION,
        run_config: cli,
        report,
    };
    emit(cli, &serde_json::to_string_pretty(&envelope)?)
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Gk(args) => cmd_gk(cli, args),
        Command::Construct(args) => cmd_construct(cli, args),
        Command::Bounds(args) => cmd_bounds(cli, args),
        Command::Enumerate(args) => cmd_enumerate(cli, args),
        Command::Search(args) => cmd_search(cli, args),
        Command::Verify(args) => cmd_verify(cli, args),
    }
}

fn read_one_graph(args: &GkArgs) -> anyhow::Result<Graph> {
    if let Some(g6) = &args.graph6 {
        return Ok(from_graph6_line(g6.trim(), 1)?);
    }
    let text = match &args.input {
        Some(path) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (idx == 0 && line == HEADER) {
            continue;
        }
        return Ok(from_graph6_line(line, idx + 1)?);
    }
    bail!("no graph6 line found in the input");
}

#[derive(Serialize)]
struct GkAnalysis {
    graph: String,
    n: usize,
    k: usize,
    e_gk: usize,
    k_degrees: Vec<usize>,
    clique_number_gk: usize,
    diameter: Option<usize>,
    interior_vertices: Vec<usize>,
    min_unaffiliated: Option<usize>,
    distance_k_graph: String,
    /// Absent when k exceeds n (the bounds need 1 <= k <= n; the counts
    /// above are all zero then anyway).
    bounds: Option<kdist_core::bounds::BoundReport>,
}

fn cmd_gk(cli: &Cli, args: &GkArgs) -> anyhow::Result<i32> {
    let g = read_one_graph(args)?;
    if args.k == 0 {
        bail!("k must be at least 1");
    }
    let gk = g.distance_k_graph(args.k);
    let analysis = GkAnalysis {
        graph: canonical_form(&g).into_string(),
        n: g.n(),
        k: args.k,
        e_gk: gk.edge_count(),
        k_degrees: g.vertices().map(|v| g.k_degree(args.k, v)).collect(),
        clique_number_gk: gk.clique_number(),
        diameter: g.diameter(),
        interior_vertices: interior_vertices(&g, args.k),
        min_unaffiliated: min_unaffiliated(&g, args.k).ok(),
        distance_k_graph: to_graph6(&gk),
        bounds: if args.k <= g.n() {
            Some(evaluate_bounds(&g, args.k)?)
        } else {
            None
        },
    };
    emit_json(cli, analysis)?;
    Ok(0)
}

fn cmd_construct(cli: &Cli, args: &ConstructArgs) -> anyhow::Result<i32> {
    let (g, name) = match &args.family {
        Family::DoubleBroom { n, k } => (families::double_broom(*n, *k)?, "double_broom"),
        Family::TBroom { k, leaves } => {
            (families::t_broom(&BroomSpec::new(*k, leaves.clone())?)?, "t_broom")
        }
        Family::GluedCliques { n } => (families::glued_cliques(*n)?, "glued_cliques"),
        Family::Star { n } => (families::star(*n)?, "star"),
        Family::Path { n } => (families::path(*n)?, "path"),
        Family::Cycle { n } => (families::cycle(*n)?, "cycle"),
    };
    match args.format {
        GraphFormat::Graph6 => emit(cli, &to_graph6(&g))?,
        GraphFormat::Dot => emit(cli, &to_dot(&g, name))?,
    }
    Ok(0)
}

fn cmd_bounds(cli: &Cli, args: &BoundsArgs) -> anyhow::Result<i32> {
    let reader: Box<dyn BufRead> = match &args.input {
        Some(path) => Box::new(std::io::BufReader::new(
            std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?,
        )),
        None => Box::new(std::io::BufReader::new(std::io::stdin())),
    };
    let mut lines = Vec::new();
    for item in Graph6Reader::new(reader) {
        let (_, g) = item?;
        let report = evaluate_bounds(&g, args.k)?;
        lines.push(serde_json::to_string(&report)?);
    }
    emit(cli, &lines.join("\n"))?;
    Ok(0)
}

fn parse_shard(spec: &Option<String>) -> anyhow::Result<(u64, u64)> {
    match spec {
        None => Ok((0, 1)),
        Some(s) => {
            let (i, t) = s
                .split_once('/')
                .context("shard must look like index/total, e.g. 0/4")?;
            Ok((i.trim().parse()?, t.trim().parse()?))
        }
    }
}

fn cmd_enumerate(cli: &Cli, args: &EnumerateArgs) -> anyhow::Result<i32> {
    let (shard, total) = parse_shard(&args.shard)?;
    let mut lines = vec![HEADER.to_string()];
    if args.trees {
        for t in FreeTrees::sharded(args.n, shard, total)? {
            lines.push(to_graph6(&t));
        }
    } else {
        for g in ConnectedGraphs::sharded(args.n, shard, total)? {
            lines.push(to_graph6(&g));
        }
    }
    emit(cli, &lines.join("\n"))?;
    Ok(0)
}

fn cmd_search(cli: &Cli, args: &SearchArgs) -> anyhow::Result<i32> {
    let source = match &args.source {
        Some(path) => StreamSource::External { path: path.clone() },
        None => StreamSource::Connected { n: args.n },
    };
    let task = SearchTask {
        n: args.n,
        k: args.k,
        clique_cap: args.clique_cap,
        scope: match args.scope {
            ScopeArg::Connected => Scope::Connected,
            ScopeArg::All => Scope::All,
        },
        source,
        shards: args.shards,
        checkpoint: args.checkpoint.clone(),
        ..SearchTask::internal(args.n, args.k, None, Scope::Connected)
    };
    let report = max_k_distances(&task, threads(cli))?;
    match args.format {
        ReportFormat::Json => emit_json(cli, &report)?,
        ReportFormat::Csv => emit(cli, &output::search_csv(&report))?,
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, cmd: &VerifyCommand) -> anyhow::Result<i32> {
    let opts = |shards: u64| VerifyOptions {
        shards,
        threads: threads(cli),
    };
    match cmd {
        VerifyCommand::K2Bound(range) => {
            let report = verify_k2_bound(parse_range(&range.n)?, opts(range.shards))?;
            let verdict = report.verdict;
            match range.format {
                ReportFormat::Json => emit_json(cli, &report)?,
                ReportFormat::Csv => emit(cli, &output::k2_csv(&report))?,
            }
            Ok(exit_for(verdict))
        }
        VerifyCommand::TriangleFree { k, range } => {
            let report =
                verify_triangle_free_conjecture(*k, parse_range(&range.n)?, opts(range.shards))?;
            let verdict = report.verdict;
            match range.format {
                ReportFormat::Json => emit_json(cli, &report)?,
                ReportFormat::Csv => emit(cli, &output::triangle_free_csv(&report))?,
            }
            Ok(exit_for(verdict))
        }
        VerifyCommand::TreeTheorem { n, k, format } => {
            let report =
                verify_tree_theorem(parse_range(n)?, parse_range(k)?, VerifyOptions::default())?;
            let verdict = report.verdict;
            match format {
                ReportFormat::Json => emit_json(cli, &report)?,
                ReportFormat::Csv => emit(cli, &output::tree_csv(&report))?,
            }
            Ok(exit_for(verdict))
        }
        VerifyCommand::Star(range) => {
            let report = verify_star_proposition(parse_range(&range.n)?, opts(range.shards))?;
            let verdict = report.verdict;
            match range.format {
                ReportFormat::Json => emit_json(cli, &report)?,
                ReportFormat::Csv => emit(cli, &output::star_csv(&report))?,
            }
            Ok(exit_for(verdict))
        }
        VerifyCommand::Lemma8(args) => cmd_lemma8(cli, args),
    }
}

fn cmd_lemma8(cli: &Cli, args: &Lemma8Args) -> anyhow::Result<i32> {
    if let Some(range) = &args.n {
        let report = lemma8_sweep(parse_range(range)?)?;
        let verdict = report.verdict;
        match args.format {
            ReportFormat::Json => emit_json(cli, &report)?,
            ReportFormat::Csv => emit(cli, &output::lemma8_csv(&report))?,
        }
        return Ok(exit_for(verdict));
    }
    let g6 = args
        .graph6
        .as_ref()
        .context("give either --n for a sweep or a graph6 line with --k and --r")?;
    let (k, r) = match (args.k, args.r) {
        (Some(k), Some(r)) => (k, r),
        _ => bail!("single-graph mode needs both --k and --r"),
    };
    let g = from_graph6_line(g6.trim(), 1)?;
    let mode = match args.mode {
        LemmaModeArg::Auto => LemmaCheckMode::Auto,
        LemmaModeArg::Exhaustive => LemmaCheckMode::Exhaustive,
        LemmaModeArg::Sampled => LemmaCheckMode::Sampled {
            samples: kdist_core::structure::LEMMA8_SAMPLES,
        },
    };
    let verdict = spanning_tree_lemma_check(&g, k, r, mode)?;
    let holds = verdict.holds;
    emit_json(cli, &verdict)?;
    Ok(if holds { 0 } else { 2 })
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Consistent => 0,
        Verdict::MismatchFound => 2,
    }
}
