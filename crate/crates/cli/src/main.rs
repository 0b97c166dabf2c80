//! `pll`: build, query, verify and benchmark pruned landmark labeling indices.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pll", version, about = "Exact shortest-path distances by pruned landmark labeling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an index from an edge list and save it.
    Construct(ConstructArgs),
    /// Answer "u v" distance queries (external ids), one per line.
    Query(QueryArgs),
    /// Compare an index against BFS / Dijkstra on its graph.
    Verify(VerifyArgs),
    /// Measure query latency on random pairs.
    Bench(BenchArgs),
    /// Write pruning, coverage and label-size CSVs.
    Analyze(AnalyzeArgs),
    /// Generate a synthetic edge list.
    Gen(GenArgs),
}

/// Graph input shared by several commands.
#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge list: `u v` (or `u v w`) per line, `#` comments; `-` for stdin.
    pub graph: PathBuf,
    /// Treat each line as an arc u -> v.
    #[arg(long)]
    pub directed: bool,
    /// Read a third column of non-negative integer weights.
    #[arg(long)]
    pub weighted: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Degree,
    Random,
    Closeness,
}

#[derive(Args, Debug, Clone)]
pub struct OrderArgs {
    /// Vertex ordering strategy.
    #[arg(long, value_enum, default_value_t = OrderKind::Degree)]
    pub order: OrderKind,
    /// Seed for random orders and closeness sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampled BFS sources for closeness ordering.
    #[arg(long, default_value_t = pll_core::order::DEFAULT_CLOSENESS_SAMPLES)]
    pub closeness_samples: usize,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub input: GraphArgs,
    #[command(flatten)]
    pub order: OrderArgs,
    /// Bit-parallel roots; defaults to 16 (64 above ten million arcs).
    #[arg(long = "bp-roots")]
    pub bp_roots: Option<usize>,
    /// Chosen neighbors per bit-parallel root, 1 to 64.
    #[arg(long = "bp-width", default_value_t = pll_core::BP_WIDTH)]
    pub bp_width: usize,
    /// Record parents for path queries (no bit-parallel labels).
    #[arg(long)]
    pub paths: bool,
    /// Index file to write.
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    #[arg(long)]
    pub index: PathBuf,
    /// File of "u v" pairs; stdin when absent.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Edge list the index was built from (directedness and weights are
    /// taken from the index).
    pub graph: PathBuf,
    #[arg(long)]
    pub index: PathBuf,
    /// Check about this many pairs (whole rows from random sources)
    /// instead of all pairs.
    #[arg(long)]
    pub sampled: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub index: PathBuf,
    #[arg(long = "queries", short = 'q', default_value_t = 1_000_000)]
    pub num_queries: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Undirected, unweighted edge list; `-` for stdin.
    pub graph: PathBuf,
    #[command(flatten)]
    pub order: OrderArgs,
    #[arg(long = "bp-roots", default_value_t = 0)]
    pub bp_roots: usize,
    #[arg(long = "bp-width", default_value_t = pll_core::BP_WIDTH)]
    pub bp_width: usize,
    /// Random pairs for the coverage curves (all pairs when n^2 is smaller).
    #[arg(long, default_value_t = pll_core::analysis::DEFAULT_COVERAGE_PAIRS)]
    pub pairs: usize,
    /// Directory receiving prune.csv, coverage.csv and labels.csv.
    #[arg(long = "out-dir")]
    pub out_dir: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Uniform random graph with a fixed edge count.
    Er,
    /// Barabási-Albert preferential attachment.
    Pa,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub model: Model,
    /// Number of vertices.
    #[arg(short = 'n', long)]
    pub vertices: usize,
    /// Edge count (er).
    #[arg(short = 'm', long, default_value_t = 0)]
    pub edges: usize,
    /// Edges per new vertex (pa).
    #[arg(long, default_value_t = 3)]
    pub attach: usize,
    /// Directed arcs (er only).
    #[arg(long)]
    pub directed: bool,
    /// Uniform integer weights, e.g. `1:100`.
    #[arg(long, value_parser = commands::parse_range)]
    pub weights: Option<(u32, u32)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => commands::construct(&a),
        Command::Query(a) => commands::query(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Bench(a) => commands::bench(&a),
        Command::Analyze(a) => commands::analyze(&a),
        Command::Gen(a) => commands::generate(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
