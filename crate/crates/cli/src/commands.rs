use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use pll_core::analysis::{
    label_size_distribution, prune_profile, sample_pairs, write_label_size_csv, write_prune_csv,
    Coverage,
};
use pll_core::generate::{barabasi_albert, gnm, with_random_weights};
use pll_core::verify::VerifyMode;
use pll_core::workload::{bench_pairs, run_queries, sig3};
use pll_core::{
    build_index_directed, build_index_weighted, default_bp_roots, load_edge_list, load_index_file,
    save_index_file, AnyIndex, BuildOptions, DistanceIndex, Graph, Index, OrderStrategy,
    VertexOrder,
};

use crate::{
    AnalyzeArgs, BenchArgs, ConstructArgs, GenArgs, Model, OrderArgs, OrderKind,
    QueryArgs, VerifyArgs,
};

fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::new(file)))
}

fn read_graph(path: &Path, directed: bool, weighted: bool) -> Result<Graph> {
    load_edge_list(open_input(path)?, directed, weighted)
        .with_context(|| format!("cannot read graph {}", path.display()))
}

fn compute_order(g: &Graph, args: &OrderArgs) -> Result<VertexOrder> {
    let strategy = match args.order {
        OrderKind::Degree => OrderStrategy::Degree,
        OrderKind::Random => OrderStrategy::Random { seed: args.seed },
        OrderKind::Closeness => {
            OrderStrategy::Closeness { samples: args.closeness_samples, seed: args.seed }
        }
    };
    Ok(VertexOrder::compute(g, strategy)?)
}

fn fmt_dist(d: Option<u32>) -> String {
    d.map_or_else(|| "inf".to_string(), |d| d.to_string())
}

/// Parses `lo:hi` into an inclusive range.
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: u32 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: u32 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Summary of one construction.
#[derive(Debug)]
struct BuildReport {
    vertices: usize,
    arcs: usize,
    order: OrderStrategy,
    bp_roots: usize,
    indexing_time_s: f64,
    index_bytes: u64,
    avg_label_entries: f64,
    avg_bp_entries: f64,
    notes: Vec<String>,
}

impl BuildReport {
    fn print(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "vertices: {}", self.vertices)?;
        writeln!(out, "arcs: {}", self.arcs)?;
        writeln!(out, "order: {}", self.order)?;
        writeln!(out, "bp_roots: {}", self.bp_roots)?;
        writeln!(out, "indexing_time_s: {:.6}", self.indexing_time_s)?;
        writeln!(out, "index_bytes: {}", self.index_bytes)?;
        writeln!(out, "avg_label_entries: {:.6}", self.avg_label_entries)?;
        writeln!(out, "avg_bp_entries: {:.6}", self.avg_bp_entries)?;
        for note in &self.notes {
            writeln!(out, "note: {note}")?;
        }
        Ok(())
    }
}

pub fn construct(a: &ConstructArgs) -> Result<ExitCode> {
    let g = read_graph(&a.input.graph, a.input.directed, a.input.weighted)?;
    let order = compute_order(&g, &a.order)?;
    let strategy = order.strategy();
    let mut notes = Vec::new();

    let plain = !g.is_directed() && !g.is_weighted();
    if a.paths && !plain {
        bail!("--paths needs an undirected, unweighted graph");
    }
    if a.paths && a.bp_roots.is_some_and(|t| t > 0) {
        bail!("--paths cannot be combined with bit-parallel labels; use --bp-roots 0");
    }
    if !plain && a.bp_roots.is_some_and(|t| t > 0) {
        notes.push("bit-parallel labels need an undirected, unweighted graph; using 0 roots".into());
    }

    let start = Instant::now();
    let index: AnyIndex = if g.is_weighted() {
        build_index_weighted(&g, order)?.into()
    } else if g.is_directed() {
        build_index_directed(&g, order)?.into()
    } else {
        let requested = a.bp_roots.unwrap_or(if a.paths { 0 } else { default_bp_roots(&g) });
        let opts = BuildOptions { bp_roots: requested, bp_width: a.bp_width, record_paths: a.paths };
        let idx = Index::build(&g, order, &opts)?;
        if idx.bp_roots() < requested {
            notes.push(format!(
                "bp_roots clipped from {requested} to the {} roots available",
                idx.bp_roots()
            ));
        }
        idx.into()
    };
    let indexing_time_s = start.elapsed().as_secs_f64();
    let index_bytes = save_index_file(&index, &a.out)
        .with_context(|| format!("cannot write {}", a.out.display()))?;

    let report = BuildReport {
        vertices: g.num_vertices(),
        arcs: g.num_arcs(),
        order: strategy,
        bp_roots: index.as_plain().map_or(0, Index::bp_roots),
        indexing_time_s,
        index_bytes,
        avg_label_entries: index.avg_label_size(),
        avg_bp_entries: index.avg_bp_label_size(),
        notes,
    };
    report.print(io::stdout().lock())?;
    Ok(ExitCode::SUCCESS)
}

pub fn query(a: &QueryArgs) -> Result<ExitCode> {
    let index = load_index_file(&a.index)
        .with_context(|| format!("cannot load index {}", a.index.display()))?;
    let dense: HashMap<u64, u32> =
        index.external_ids().iter().enumerate().map(|(v, &id)| (id, v as u32)).collect();
    let input = match &a.pairs {
        Some(p) => open_input(p)?,
        None => Box::new(BufReader::new(io::stdin())),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ids: Vec<_> = line.split_whitespace().map(str::parse::<u64>).collect();
        let [Ok(u), Ok(v)] = ids[..] else {
            writeln!(out, "error: malformed pair on line {}", i + 1)?;
            continue;
        };
        match (dense.get(&u), dense.get(&v)) {
            (Some(&s), Some(&t)) => writeln!(out, "{}", fmt_dist(index.distance(s, t)))?,
            (None, _) => writeln!(out, "error: unknown vertex {u}")?,
            (_, None) => writeln!(out, "error: unknown vertex {v}")?,
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let index = load_index_file(&a.index)
        .with_context(|| format!("cannot load index {}", a.index.display()))?;
    let g = read_graph(&a.graph, index.is_directed(), index.is_weighted())?;
    let mode = a.sampled.map_or(VerifyMode::Exhaustive, VerifyMode::Sampled);
    let report = pll_core::verify::verify(&g, &index, mode, a.seed)?;
    println!("pairs_checked: {}", report.pairs_checked);
    println!("mismatches: {}", report.mismatches);
    if let Some(m) = report.first_mismatch {
        let ids = g.external_ids();
        println!(
            "witness: {} {} expected {} answered {}",
            ids[m.source as usize],
            ids[m.target as usize],
            fmt_dist(m.expected),
            fmt_dist(m.answered)
        );
    }
    if report.passed() {
        println!("result: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("result: FAIL");
        Ok(ExitCode::FAILURE)
    }
}

pub fn bench(a: &BenchArgs) -> Result<ExitCode> {
    let index = load_index_file(&a.index)
        .with_context(|| format!("cannot load index {}", a.index.display()))?;
    let n = index.num_vertices();
    let pairs = if n == 0 { Vec::new() } else { bench_pairs(n, a.num_queries, a.seed) };
    let stats = run_queries(&index, &pairs);
    println!(
        "# wall clock, one thread, {}-{}; index load and pair generation excluded",
        std::env::consts::OS,
        std::env::consts::ARCH
    );
    println!("queries: {}", stats.queries);
    println!("avg_us: {}", sig3(stats.avg_us));
    println!("p50_us: {}", sig3(stats.p50_us));
    println!("p90_us: {}", sig3(stats.p90_us));
    println!("p99_us: {}", sig3(stats.p99_us));
    println!("max_us: {}", sig3(stats.max_us));
    Ok(ExitCode::SUCCESS)
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    let file = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

pub fn analyze(a: &AnalyzeArgs) -> Result<ExitCode> {
    let g = read_graph(&a.graph, false, false)?;
    let order = compute_order(&g, &a.order)?;
    let opts = BuildOptions { bp_roots: a.bp_roots, bp_width: a.bp_width, record_paths: false };
    let index = Index::build(&g, order, &opts)?;
    std::fs::create_dir_all(&a.out_dir)
        .with_context(|| format!("cannot create {}", a.out_dir.display()))?;

    write_prune_csv(&prune_profile(&index), create(&a.out_dir, "prune.csv")?)?;
    let coverage = Coverage::compute(&index, &sample_pairs(g.num_vertices(), a.pairs, a.order.seed));
    coverage.write_csv(create(&a.out_dir, "coverage.csv")?)?;
    write_label_size_csv(&label_size_distribution(&index), create(&a.out_dir, "labels.csv")?)?;

    println!("vertices: {}", g.num_vertices());
    println!("avg_label_entries: {:.6}", index.avg_label_size());
    println!(
        "coverage_pairs: {} connected, {} disconnected",
        coverage.connected_pairs(),
        coverage.disconnected_pairs()
    );
    for d in 1..=coverage.max_distance() {
        if let Some(k) = coverage.crossing(0.9, |x| x == d) {
            println!("coverage_90_k d={d}: {k}");
        }
    }
    println!("wrote: prune.csv coverage.csv labels.csv to {}", a.out_dir.display());
    Ok(ExitCode::SUCCESS)
}

pub fn generate(a: &GenArgs) -> Result<ExitCode> {
    let g = match a.model {
        Model::Er => gnm(a.vertices, a.edges, a.directed, a.seed)?,
        Model::Pa if a.directed => bail!("preferential attachment graphs are undirected"),
        Model::Pa => barabasi_albert(a.vertices, a.attach, a.seed)?,
    };
    let g = match a.weights {
        Some((lo, hi)) => with_random_weights(&g, lo..=hi, a.seed)?,
        None => g,
    };
    match &a.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            g.write_edge_list(BufWriter::new(file))?;
        }
        None => g.write_edge_list(BufWriter::new(io::stdout().lock()))?,
    }
    Ok(ExitCode::SUCCESS)
}
