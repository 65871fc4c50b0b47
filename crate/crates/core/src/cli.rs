//! The `glg` command line.
//!
//! Exit codes: 0 success (or likely isomorphic), 1 certified non-isomorphic,
//! 2 usage or parse error, 3 step cap exceeded.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::conway::{parse_grid_size, run_pattern, ConwayPattern};
use crate::engine::{default_cap, simulate, GameParams, LifePattern, Outcome};
use crate::enumerate::{enumerate_codes, graph_from_code, EnumOptions};
use crate::error::{Error, Result};
use crate::experiments::{exhaustive_complexity, peak_m, random_ensemble, records_csv};
use crate::features::extract_features_with;
use crate::formats::{decode_graph6, encode_graph6, read_graphs};
use crate::graph::Graph;
use crate::iso::{test_isomorphism_with, IsoVerdict, ScanKeys};
use crate::metric::{find_lines, lines_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NON_ISOMORPHIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "glg", version, about = "Game of Life on graphs")]
pub struct Cli {
    /// Worker threads for parallel subcommands (default: all cores).
    #[arg(long, global = true, env = "GLG_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one single-seed game and print its trajectory.
    Simulate(SimulateArgs),
    /// Print the feature vector of every graph in a file.
    Features(FeaturesArgs),
    /// Test two graphs for isomorphism (exit 1 when certified different).
    Iso(IsoArgs),
    /// Group a corpus by feature vector and report collisions.
    Scan(ScanArgs),
    /// Distance between the feature vectors of two graphs.
    Distance(DistanceArgs),
    /// Find triples where the triangle inequality is tight; writes CSV.
    Lines(LinesArgs),
    /// Complexity and halting versus edge count; writes CSV.
    Phase(PhaseArgs),
    /// Run a Conway pattern on a torus with rule 2,5,3.
    Conway(ConwayArgs),
    /// Generate all graphs on n vertices up to isomorphism, as graph6.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    /// Rule a,d,r: survive with >= a alive and >= d dead neighbors, born with exactly r alive.
    #[arg(long, default_value = "1,1,1")]
    pub params: GameParams,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// graph6 or edge-list file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Record to use when the file holds several graphs.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// Initially alive vertex (0-indexed).
    #[arg(long)]
    pub seed: usize,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Maximum number of steps (default min(2^n + 1, 10^6)).
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub normalize: bool,
    #[command(flatten)]
    pub rule: RuleArgs,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub h: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[command(flatten)]
    pub rule: RuleArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// graph6 corpus, one record per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub h: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct LinesArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub normalize: bool,
    /// Relative tolerance: residual <= tol * d_ij.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// CSV destination (default stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Allow corpora with more than 6 vertices (the scan is cubic in corpus size).
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    /// Exhaustive mode: graph6 corpus of graphs with equal vertex count.
    #[arg(long, conflicts_with_all = ["n", "m", "samples", "seed"])]
    pub input: Option<PathBuf>,
    /// Random mode: vertex count.
    #[arg(long, requires = "m")]
    pub n: Option<usize>,
    /// Random mode: edge counts, as `a..b` (inclusive) or a comma list.
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long)]
    pub cap: Option<usize>,
    /// Report the mean per-graph total complexity instead of the per-game mean.
    #[arg(long)]
    pub graph_totals: bool,
    /// CSV file, or a directory to receive
    /// `phase_n{n}_exhaustive_{a}-{d}-{r}.csv` /
    /// `phase_n{n}_s{samples}_seed{seed}_{a}-{d}-{r}.csv` (default stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConwayArgs {
    /// blinker, block or glider.
    #[arg(long)]
    pub pattern: ConwayPattern,
    /// Torus size WxH, both at least 3.
    #[arg(long, default_value = "8x8")]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub connected: bool,
    /// Keep only regular graphs of this degree.
    #[arg(long)]
    pub regular: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parse arguments, run, and return the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Some(t) = cli.threads {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_cap_exceeded() {
                EXIT_CAP
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Features(a) => cmd_features(a),
        Command::Iso(a) => cmd_iso(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Distance(a) => cmd_distance(a),
        Command::Lines(a) => cmd_lines(a),
        Command::Phase(a) => cmd_phase(a),
        Command::Conway(a) => cmd_conway(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

fn io_err(path: &Path, e: io::Error) -> Error {
    Error::InvalidArgument(format!("{}: {e}", path.display()))
}

fn single_graph(path: &Path, index: usize) -> Result<Graph> {
    let mut graphs = read_graphs(path)?;
    if index >= graphs.len() {
        return Err(Error::InvalidArgument(format!(
            "{} holds {} graph(s), no record {index}",
            path.display(),
            graphs.len()
        )));
    }
    Ok(graphs.swap_remove(index))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            match io::stdout().write_all(text.as_bytes()) {
                // reader closed early, e.g. `glg scan ... | head`
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|e| Error::InvalidArgument(format!("stdout: {e}"))),
            }
        }
    }
}

pub fn cmd_simulate(a: SimulateArgs) -> Result<i32> {
    let g = single_graph(&a.graph, a.index)?;
    let seed = LifePattern::single(g.n(), a.seed)?;
    let cap = a.cap.unwrap_or_else(|| default_cap(g.n()));
    let traj = simulate(&g, &seed, a.rule.params, cap)?;
    let mut out = String::new();
    for (t, p) in traj.patterns.iter().enumerate() {
        out.push_str(&format!("t={t} alive={p}\n"));
    }
    let outcome = match traj.outcome {
        Outcome::Died { at } => format!("outcome=died t={at}"),
        Outcome::Cycled { entry, repeat_at } => {
            format!("outcome=cycled entry={entry} repeat_at={repeat_at}")
        }
    };
    out.push_str(&format!("complexity={} {outcome}\n", traj.complexity()));
    write_output(None, &out)?;
    Ok(EXIT_OK)
}

pub fn cmd_features(a: FeaturesArgs) -> Result<i32> {
    let graphs = read_graphs(&a.graph)?;
    let mut out = String::new();
    for g in &graphs {
        out.push_str(&extract_features_with(g, a.k, a.normalize, a.rule.params)?.to_line());
        out.push('\n');
    }
    write_output(None, &out)?;
    Ok(EXIT_OK)
}

pub fn cmd_iso(a: IsoArgs) -> Result<i32> {
    if a.k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let g = single_graph(&a.g, 0)?;
    let h = single_graph(&a.h, 0)?;
    match test_isomorphism_with(&g, &h, a.k, a.rule.params) {
        IsoVerdict::LikelyIsomorphic { k } => {
            println!("likely-isomorphic k={k}");
            Ok(EXIT_OK)
        }
        IsoVerdict::NonIsomorphic { step } => {
            println!("non-isomorphic step={step}");
            Ok(EXIT_NON_ISOMORPHIC)
        }
    }
}

const SCAN_CHUNK: usize = 1 << 16;

fn for_each_record(path: &Path, mut f: impl FnMut(usize, &str) -> Result<()>) -> Result<()> {
    let reader = BufReader::new(File::open(path).map_err(|e| io_err(path, e))?);
    let mut idx = 0;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        let rec = line.trim();
        if rec.is_empty() {
            continue;
        }
        f(idx, rec).map_err(|e| Error::Graph6(format!("line {}: {e}", lineno + 1)))?;
        idx += 1;
    }
    Ok(())
}

/// Streams the corpus in chunks so only compact keys stay in memory, then
/// re-reads it to print the records of colliding graphs.
pub fn cmd_scan(a: ScanArgs) -> Result<i32> {
    if a.k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut keys = ScanKeys::new(a.k, a.rule.params);
    let mut chunk: Vec<Graph> = Vec::with_capacity(SCAN_CHUNK);
    let mut degree_seqs: std::collections::HashMap<Vec<usize>, u32> = Default::default();
    for_each_record(&a.input, |_, rec| {
        let g = decode_graph6(rec)?;
        *degree_seqs.entry(g.degree_sequence_sorted()).or_default() += 1;
        chunk.push(g);
        if chunk.len() == SCAN_CHUNK {
            keys.extend(&chunk)?;
            chunk.clear();
        }
        Ok(())
    })?;
    keys.extend(&chunk)?;
    drop(chunk);
    let report = keys.finish();

    let colliding: Vec<&Vec<usize>> = report.collisions().collect();
    let mut wanted: std::collections::HashMap<usize, String> = colliding
        .iter()
        .flat_map(|g| g.iter().map(|&i| (i, String::new())))
        .collect();
    if !wanted.is_empty() {
        for_each_record(&a.input, |i, rec| {
            if let Some(slot) = wanted.get_mut(&i) {
                *slot = rec.to_string();
            }
            Ok(())
        })?;
    }

    let mut out = format!(
        "total={} k={} params={} groups={} collisions={} degree_sequence_collisions={}\n",
        report.total,
        report.k,
        a.rule.params,
        report.groups.len(),
        colliding.len(),
        degree_seqs.values().filter(|&&c| c > 1).count(),
    );
    for group in colliding {
        let recs: Vec<&str> = group.iter().map(|i| wanted[i].as_str()).collect();
        out.push_str(&format!("collision {}\n", recs.join(" ")));
    }
    write_output(a.output.as_deref(), &out)?;
    Ok(EXIT_OK)
}

pub fn cmd_distance(a: DistanceArgs) -> Result<i32> {
    let g = single_graph(&a.g, 0)?;
    let h = single_graph(&a.h, 0)?;
    let d = crate::metric::glg_distance(&g, &h, a.k, a.normalize)?;
    println!("{d}");
    Ok(EXIT_OK)
}

pub fn cmd_lines(a: LinesArgs) -> Result<i32> {
    let corpus = read_graphs(&a.input)?;
    if let Some(g) = corpus.iter().find(|g| g.n() > 6) {
        if !a.allow_large {
            return Err(Error::InvalidArgument(format!(
                "corpus has graphs on {} vertices; pass --allow-large to scan corpora beyond 6 vertices",
                g.n()
            )));
        }
    }
    let lines = find_lines(&corpus, a.k, a.normalize, a.tol)?;
    write_output(a.output.as_deref(), &lines_csv(&corpus, &lines)?)?;
    let summary = format!(
        "graphs={} k={} normalize={} tol={} triples={} exact={}\n",
        corpus.len(),
        a.k,
        a.normalize,
        a.tol,
        lines.len(),
        lines.iter().filter(|t| t.exact).count()
    );
    if a.output.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(EXIT_OK)
}

/// `a..b` (inclusive) or `x,y,z`.
pub fn parse_m_values(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("bad edge-count list {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

pub fn cmd_phase(a: PhaseArgs) -> Result<i32> {
    let params = a.rule.params;
    let tag = format!("{}-{}-{}", params.a, params.d, params.r);
    let (csv, n, name, peak) = if let Some(input) = &a.input {
        let corpus = read_graphs(input)?;
        let n = corpus.first().map_or(0, Graph::n);
        let recs = exhaustive_complexity(&corpus, params, a.cap)?;
        (
            records_csv(&recs, params, None, a.graph_totals),
            n,
            format!("phase_n{n}_exhaustive_{tag}.csv"),
            peak_m(&recs),
        )
    } else {
        let (Some(n), Some(m)) = (a.n, a.m.as_deref()) else {
            return Err(Error::InvalidArgument(
                "phase needs --input, or --n and --m".into(),
            ));
        };
        let ms = parse_m_values(m)?;
        let recs = random_ensemble(n, &ms, a.samples, a.seed, params, a.cap)?;
        (
            records_csv(&recs, params, Some(a.seed), a.graph_totals),
            n,
            format!("phase_n{n}_s{}_seed{}_{tag}.csv", a.samples, a.seed),
            peak_m(&recs),
        )
    };
    let target = a.output.map(|p| if p.is_dir() { p.join(&name) } else { p });
    write_output(target.as_deref(), &csv)?;
    if let Some(p) = &target {
        let peak = peak.map_or("none".to_string(), |m| m.to_string());
        println!("wrote={} n={n} peak_m={peak}", p.display());
    }
    Ok(EXIT_OK)
}

pub fn cmd_conway(a: ConwayArgs) -> Result<i32> {
    let (w, h) = parse_grid_size(&a.grid)?;
    let r = run_pattern(a.pattern, w, h)?;
    let mut line = format!("pattern={} grid={w}x{h} period={}", r.pattern.name(), r.period);
    if let Some((t, dx, dy)) = r.translation {
        line.push_str(&format!(" translation_step={t} dx={dx} dy={dy}"));
    }
    println!("{line}");
    Ok(EXIT_OK)
}

pub fn cmd_gen(a: GenArgs) -> Result<i32> {
    let opts = EnumOptions {
        connected: a.connected,
        regular: a.regular,
    };
    let codes = enumerate_codes(a.n, opts)?;
    let mut out: Box<dyn Write> = match &a.output {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_err(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let dest = a.output.as_deref().unwrap_or(Path::new("stdout"));
    for &c in &codes {
        writeln!(out, "{}", encode_graph6(&graph_from_code(c, a.n))?).map_err(|e| io_err(dest, e))?;
    }
    out.flush().map_err(|e| io_err(dest, e))?;
    Ok(EXIT_OK)
}
