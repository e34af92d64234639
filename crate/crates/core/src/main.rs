use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use colorful_triangles::control::{adaptive_estimate, EstimatorConfig};
use colorful_triangles::exact::{count_triangles_exact, triangle_stats};
use colorful_triangles::experiment::{
    compare_samplers, run_report, stats_kv, stats_row, ReportMode, STATS_HEADER,
};
use colorful_triangles::generators::{disjoint_triangles, gnp};
use colorful_triangles::graph::{read_edge_list_file, Graph, ParseOptions, VertexIds};
use colorful_triangles::mapreduce::run_pipeline;
use colorful_triangles::{sufficient_p_chernoff, sufficient_p_second_moment, Error, Result};

#[derive(Parser)]
#[command(name = "tricount", version, about = "Exact and colorful-sampling triangle counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Edge-list file, or `disjoint-triangles:K`, or `gnp:N:P:SEED`.
    graph: String,
    /// Keep raw vertex ids (ids missing from the file become isolated vertices).
    #[arg(long)]
    raw_ids: bool,
    /// Comment prefix for edge-list files.
    #[arg(long, default_value_t = '#')]
    comment: char,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Print `key=value` lines instead of a table.
    #[arg(long)]
    kv: bool,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dataset row: n, m, t, Δ, t_max, Σδ², 3Δt.
    Stats {
        #[command(flatten)]
        input: Input,
        /// Row label (defaults to the file stem).
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        kv: bool,
    },
    /// Exact triangle count.
    Exact {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Repeated colorful-sampling estimates.
    Estimate {
        #[command(flatten)]
        input: Input,
        /// Number of colors N.
        #[arg(long, conflicts_with = "p")]
        colors: Option<u32>,
        /// Target keep rate as NUM/DEN; uses N = floor(DEN/NUM).
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also count exactly and report relative errors.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Adaptive doubling estimate with median boosting.
    Auto {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 32)]
        tau: u64,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Starting number of colors (default 2^ceil(log2 sqrt m)).
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        kv: bool,
    },
    /// Sufficient keep rates from both concentration bounds.
    Plan {
        /// Graph to compute t, Δ, t_max from; omit to pass them directly.
        graph: Option<String>,
        #[arg(long)]
        raw_ids: bool,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        tmax: Option<u64>,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long)]
        kv: bool,
    },
    /// Simulated map/shuffle/reduce run.
    Pipeline {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        colors: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        mappers: usize,
        #[arg(long)]
        kv: bool,
    },
    /// Colorful vs independent edge sampling at keep rate 1/N.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        colors: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Write a synthetic edge list to standard output.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// K vertex-disjoint triangles.
    DisjointTriangles { k: usize },
    /// Erdős–Rényi G(n, p); p as NUM/DEN or a decimal.
    Gnp { n: usize, p: String, seed: u64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Parses `a/b` or a decimal such as `0.25` into an exact fraction.
fn parse_ratio(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidArgument(format!("invalid probability {s:?}"));
    let (num, den) = if let Some((a, b)) = s.split_once('/') {
        (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    } else if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        (int * den + frac, den)
    } else {
        (s.trim().parse().map_err(|_| bad())?, 1)
    };
    if den == 0 || num > den {
        return Err(Error::InvalidProbability { num, den });
    }
    Ok((num, den))
}

fn load(input: &Input) -> Result<(Graph, String)> {
    let spec = input.graph.as_str();
    if let Some(k) = spec.strip_prefix("disjoint-triangles:") {
        let k = k.parse().map_err(|_| Error::InvalidArgument(format!("bad count in {spec:?}")))?;
        return Ok((disjoint_triangles(k), spec.to_string()));
    }
    if let Some(rest) = spec.strip_prefix("gnp:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let bad = || Error::InvalidArgument(format!("expected gnp:N:P:SEED, got {spec:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n = parts[0].parse().map_err(|_| bad())?;
        let (num, den) = parse_ratio(parts[1])?;
        let seed = parts[2].parse().map_err(|_| bad())?;
        return Ok((gnp(n, num, den, seed)?, spec.to_string()));
    }
    let path = Path::new(spec);
    let opts = ParseOptions {
        comment_prefix: input.comment,
        ids: if input.raw_ids { VertexIds::Raw } else { VertexIds::Dense },
    };
    let g = read_edge_list_file(path, &opts)?;
    let name = path.file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into());
    Ok((g, name))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Stats { input, name, kv } => {
            let (g, stem) = load(&input)?;
            let name = name.unwrap_or(stem);
            let s = triangle_stats(&g);
            if kv {
                print!("{}", stats_kv(&name, &g, &s));
            } else {
                println!("{STATS_HEADER}");
                println!("{}", stats_row(&name, &g, &s));
            }
        }
        Command::Exact { input, out } => {
            let (g, name) = load(&input)?;
            let mode = ReportMode { exact: true, ..Default::default() };
            let report = run_report(&g, &name, &mode, &EstimatorConfig::default(), 0)?;
            if out.kv {
                print!("{}", g.report());
                print!("{}", report.to_kv(out.timing));
            } else {
                print!("{}", report.to_table(out.timing));
            }
        }
        Command::Estimate { input, colors, p, reps, seed, exact, epsilon, out } => {
            let (g, name) = load(&input)?;
            let colors = match (colors, p) {
                (Some(c), None) => c,
                (None, Some(p)) => {
                    let (num, den) = parse_ratio(&p)?;
                    if num == 0 {
                        return Err(Error::InvalidProbability { num, den });
                    }
                    (den / num).max(1) as u32
                }
                _ => return Err(Error::InvalidArgument("give exactly one of --colors, --p".into())),
            };
            let cfg = EstimatorConfig { epsilon, ..Default::default() };
            let mode = ReportMode { exact, colors: Some(colors), adaptive: false, trials: reps };
            let report = run_report(&g, &name, &mode, &cfg, seed)?;
            if !out.kv {
                println!("seed\traw_T\tscaled");
            }
            for t in &report.trials {
                if out.kv {
                    println!("run.seed={} run.raw_t={} run.scaled={}", t.seed, t.raw_t, t.scaled);
                } else {
                    println!("{}\t{}\t{}", t.seed, t.raw_t, t.scaled);
                }
            }
            if out.kv {
                print!("{}", report.to_kv(out.timing));
            } else {
                print!("{}", report.to_table(out.timing));
            }
        }
        Command::Auto { input, epsilon, d, tau, reps, nmax, seed, kv } => {
            let (g, _) = load(&input)?;
            let cfg = EstimatorConfig { epsilon, d, repetitions: reps, tau, n_max: nmax };
            let out = adaptive_estimate(&g, &cfg, seed)?;
            for (i, p) in out.trace.iter().enumerate() {
                if kv {
                    println!("probe.{i}.colors={} probe.{i}.raw_t={}", p.colors, p.raw_t);
                } else {
                    println!("probe {i}: N={} raw_T={}", p.colors, p.raw_t);
                }
            }
            for (i, r) in out.runs.iter().enumerate() {
                let scaled = r.scaled.to_integer();
                if kv {
                    println!("run.{i}.raw_t={} run.{i}.scaled={scaled}", r.raw_t);
                } else {
                    println!("run {i}: raw_T={} scaled={scaled}", r.raw_t);
                }
            }
            if kv {
                println!("colors={}\nestimate={}", out.colors, out.estimate);
            } else {
                println!("chosen N={} estimate={}", out.colors, out.estimate);
            }
        }
        Command::Plan { graph, raw_ids, n, t, delta, tmax, epsilon, d, kv } => {
            let (n, t, delta, tmax) = match graph {
                Some(spec) => {
                    let input = Input { graph: spec, raw_ids, comment: '#' };
                    let (g, _) = load(&input)?;
                    let s = triangle_stats(&g);
                    (g.n() as u64, s.t, s.delta_max, s.t_max)
                }
                None => match (n, t, delta, tmax) {
                    (Some(n), Some(t), Some(dl), Some(tm)) => (n, t, dl, tm),
                    _ => {
                        return Err(Error::InvalidArgument(
                            "give a graph or all of --n --t --delta --tmax".into(),
                        ))
                    }
                },
            };
            let second = sufficient_p_second_moment(t, delta, n);
            let chern = sufficient_p_chernoff(t, tmax, n, epsilon, d);
            if let (Err(Error::NoTriangles), _) | (_, Err(Error::NoTriangles)) = (&second, &chern) {
                println!("no triangles: sampling unnecessary");
                return Ok(());
            }
            let (second, chern) = (second?, chern?);
            if kv {
                println!("second_moment.p={:.6}\nsecond_moment.colors={}", second.p, second.colors);
                println!("chernoff.p={:.6}\nchernoff.colors={}", chern.p, chern.colors);
            } else {
                println!("inputs: n={n} t={t} Delta={delta} t_max={tmax} epsilon={epsilon} d={d}");
                println!("second moment: p >= {:.6}  N = {}", second.p, second.colors);
                println!("chernoff:      p >= {:.6}  N = {}", chern.p, chern.colors);
            }
        }
        Command::Pipeline { input, colors, seed, mappers, kv } => {
            let (g, _) = load(&input)?;
            let (est, m) = run_pipeline(&g, colors, seed, mappers)?;
            let scaled = est.scaled.to_integer();
            if kv {
                println!("raw_t={}\nscaled={scaled}\nemitted_total={}", est.raw_t, m.emitted_total);
                println!("max_reducer_load={}\nrounds={}", m.max_reducer_load, m.rounds);
                for (c, (load, tri)) in m.per_color.iter().zip(&m.reducer_triangles).enumerate() {
                    println!("reducer.{c}.load={load} reducer.{c}.triangles={tri}");
                }
            } else {
                println!("estimate: raw_T={} scaled={scaled} (N={colors}, seed={seed})", est.raw_t);
                println!("emitted edges: {} of {}", m.emitted_total, g.m());
                println!("max reducer load: {}", m.max_reducer_load);
                println!("color\tload\ttriangles");
                for (c, (load, tri)) in m.per_color.iter().zip(&m.reducer_triangles).enumerate() {
                    println!("{c}\t{load}\t{tri}");
                }
            }
        }
        Command::Compare { input, colors, trials, seed, exact, epsilon, out } => {
            let (g, name) = load(&input)?;
            let t = exact.then(|| count_triangles_exact(&g).triangles);
            let (c, i) = compare_samplers(&g, &name, colors, trials, seed, t, epsilon)?;
            for r in [c, i] {
                if out.kv {
                    print!("{}", r.to_kv(out.timing));
                } else {
                    print!("{}", r.to_table(out.timing));
                }
            }
        }
        Command::Gen { kind } => {
            let g = match kind {
                GenKind::DisjointTriangles { k } => disjoint_triangles(k),
                GenKind::Gnp { n, p, seed } => {
                    let (num, den) = parse_ratio(&p)?;
                    gnp(n, num, den, seed)?
                }
            };
            print!("{}", g.to_edge_list_text());
        }
    }
    Ok(())
}
