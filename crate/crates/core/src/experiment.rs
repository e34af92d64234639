//! Repeated-trial experiments and their reports.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::control::{adaptive_estimate, EstimatorConfig};
use crate::error::{Error, Result};
use crate::exact::{count_triangles_exact, TriangleStats};
use crate::exec;
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::sampler::{estimate_once, independent_edge_estimate, Estimate};

/// Seed of trial `i` in an experiment seeded with `master`.
pub fn trial_seed(master: u64, i: usize) -> u64 {
    derive_seed(master, i as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub seed: u64,
    pub raw_t: u64,
    pub scaled: f64,
    pub work_ops: u64,
    pub sampled_edges: usize,
}

impl From<&Estimate> for Trial {
    fn from(e: &Estimate) -> Self {
        Trial {
            seed: e.seed.unwrap_or(0),
            raw_t: e.raw_t,
            scaled: e.scaled_f64(),
            work_ops: e.work_ops,
            sampled_edges: e.sampled_edges,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub graph_id: String,
    pub method: String,
    pub exact_t: Option<u64>,
    pub exact_work_ops: Option<u64>,
    pub exact_wall: Option<Duration>,
    pub trials: Vec<Trial>,
    pub sampled_wall: Option<Duration>,
    pub epsilon: f64,
    /// Predicted sampled/exact work ratio (`p²` for colorful runs).
    pub predicted_work_ratio: Option<f64>,
}

/// Aggregates over a report's trials.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub median: f64,
    pub mean_raw_t: f64,
    pub zero_raw_fraction: f64,
    pub rel_err_mean: Option<f64>,
    pub rel_err_median: Option<f64>,
    pub within_epsilon: Option<f64>,
    pub mean_work_ops: f64,
    pub work_ratio: Option<f64>,
}

impl ExperimentReport {
    pub fn summary(&self) -> Summary {
        let k = self.trials.len();
        let kf = k.max(1) as f64;
        let values: Vec<f64> = self.trials.iter().map(|t| t.scaled).collect();
        let mean = values.iter().sum::<f64>() / kf;
        let std_dev = if k > 1 {
            (values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (kf - 1.0)).sqrt()
        } else {
            0.0
        };
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted.get(k.saturating_sub(1) / 2).copied().unwrap_or(0.0);
        let mean_raw_t = self.trials.iter().map(|t| t.raw_t as f64).sum::<f64>() / kf;
        let zeros = self.trials.iter().filter(|t| t.raw_t == 0).count();
        let mean_work_ops = self.trials.iter().map(|t| t.work_ops as f64).sum::<f64>() / kf;
        let rel = |x: f64| self.exact_t.map(|t| relative_error(x, t));
        let within_epsilon = self.exact_t.map(|t| {
            let ok = values.iter().filter(|&&x| relative_error(x, t) <= self.epsilon).count();
            ok as f64 / kf
        });
        Summary {
            trials: k,
            mean,
            std_dev,
            median,
            mean_raw_t,
            zero_raw_fraction: zeros as f64 / kf,
            rel_err_mean: rel(mean),
            rel_err_median: rel(median),
            within_epsilon,
            mean_work_ops,
            work_ratio: self.exact_work_ops.filter(|&w| w > 0).map(|w| mean_work_ops / w as f64),
        }
    }

    /// One `key=value` line per metric. Timing appears only if requested,
    /// so the default output is reproducible.
    pub fn to_kv(&self, with_timing: bool) -> String {
        let s = self.summary();
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{}.{k}={v}", self.method);
        };
        kv("graph", self.graph_id.clone());
        if let Some(t) = self.exact_t {
            kv("exact_t", t.to_string());
        }
        if let Some(w) = self.exact_work_ops {
            kv("exact_work_ops", w.to_string());
        }
        kv("trials", s.trials.to_string());
        kv("mean", fmt_f(s.mean));
        kv("std_dev", fmt_f(s.std_dev));
        kv("median", fmt_f(s.median));
        kv("mean_raw_t", fmt_f(s.mean_raw_t));
        kv("zero_raw_fraction", fmt_f(s.zero_raw_fraction));
        if let Some(x) = s.rel_err_mean {
            kv("rel_err_mean", fmt_f(x));
        }
        if let Some(x) = s.rel_err_median {
            kv("rel_err_median", fmt_f(x));
        }
        if let Some(x) = s.within_epsilon {
            kv(&format!("within_eps_{}", self.epsilon), fmt_f(x));
        }
        kv("mean_work_ops", fmt_f(s.mean_work_ops));
        if let Some(x) = s.work_ratio {
            kv("work_ratio", fmt_f(x));
        }
        if let Some(x) = self.predicted_work_ratio {
            kv("predicted_work_ratio", fmt_f(x));
        }
        if with_timing {
            if let Some(d) = self.exact_wall {
                kv("exact_wall_ms", fmt_f(d.as_secs_f64() * 1e3));
            }
            if let Some(d) = self.sampled_wall {
                kv("sampled_wall_ms", fmt_f(d.as_secs_f64() * 1e3));
            }
        }
        out
    }

    pub fn to_table(&self, with_timing: bool) -> String {
        let s = self.summary();
        let mut out = String::new();
        let _ = writeln!(out, "{} on {}", self.method, self.graph_id);
        let row = |out: &mut String, k: &str, v: String| {
            let _ = writeln!(out, "  {k:<22} {v}");
        };
        if let Some(t) = self.exact_t {
            row(&mut out, "exact t", t.to_string());
        }
        if let Some(w) = self.exact_work_ops {
            row(&mut out, "exact work ops", w.to_string());
        }
        if s.trials > 0 {
            row(&mut out, "trials", s.trials.to_string());
            row(&mut out, "mean", fmt_f(s.mean));
            row(&mut out, "sample std", fmt_f(s.std_dev));
            row(&mut out, "median", fmt_f(s.median));
            row(&mut out, "mean raw T", fmt_f(s.mean_raw_t));
            row(&mut out, "P(raw T = 0)", fmt_f(s.zero_raw_fraction));
            if let (Some(a), Some(b)) = (s.rel_err_mean, s.rel_err_median) {
                row(&mut out, "rel. error (mean)", fmt_f(a));
                row(&mut out, "rel. error (median)", fmt_f(b));
            }
            if let Some(x) = s.within_epsilon {
                row(&mut out, &format!("within eps={}", self.epsilon), fmt_f(x));
            }
            if let Some(x) = s.work_ratio {
                let pred = self.predicted_work_ratio.map(fmt_f).unwrap_or_else(|| "-".into());
                row(&mut out, "work ratio (pred.)", format!("{} ({pred})", fmt_f(x)));
            }
        }
        if with_timing {
            if let Some(d) = self.exact_wall {
                row(&mut out, "exact wall ms", fmt_f(d.as_secs_f64() * 1e3));
            }
            if let Some(d) = self.sampled_wall {
                row(&mut out, "sampled wall ms", fmt_f(d.as_secs_f64() * 1e3));
            }
        }
        out
    }
}

fn relative_error(x: f64, t: u64) -> f64 {
    if t == 0 {
        x.abs()
    } else {
        (x - t as f64).abs() / t as f64
    }
}

fn fmt_f(x: f64) -> String {
    format!("{x:.6}")
}

fn run_trials<F>(trials: usize, seed: u64, run: F) -> Result<(Vec<Trial>, Duration)>
where
    F: Fn(u64) -> Result<Estimate> + Sync + Send,
{
    let start = Instant::now();
    let results = exec::map_tasks(trials, |i| run(trial_seed(seed, i)));
    let trials = results
        .into_iter()
        .map(|r| r.map(|e| Trial::from(&e)))
        .collect::<Result<Vec<_>>>()?;
    Ok((trials, start.elapsed()))
}

/// Runs colorful sampling with `colors` colors and independent edge
/// sampling with keep rate `1/colors` on the same trial seeds.
pub fn compare_samplers(
    g: &Graph,
    graph_id: &str,
    colors: u32,
    trials: usize,
    seed: u64,
    exact_t: Option<u64>,
    epsilon: f64,
) -> Result<(ExperimentReport, ExperimentReport)> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if colors == 0 {
        return Err(Error::ZeroColors);
    }
    let (colorful, cw) = run_trials(trials, seed, |s| estimate_once(g, colors, s))?;
    let (independent, iw) =
        run_trials(trials, seed, |s| independent_edge_estimate(g, 1, colors as u64, s))?;
    let base = |method: &str, trials, wall| ExperimentReport {
        graph_id: graph_id.to_string(),
        method: method.to_string(),
        exact_t,
        exact_work_ops: None,
        exact_wall: None,
        trials,
        sampled_wall: Some(wall),
        epsilon,
        predicted_work_ratio: None,
    };
    Ok((base("colorful", colorful, cw), base("independent", independent, iw)))
}

/// What [`run_report`] should do.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportMode {
    /// Count triangles exactly.
    pub exact: bool,
    /// Run `trials` colorful estimates with this many colors.
    pub colors: Option<u32>,
    /// Run `trials` adaptive estimates.
    pub adaptive: bool,
    pub trials: usize,
}

pub fn run_report(
    g: &Graph,
    graph_id: &str,
    mode: &ReportMode,
    cfg: &EstimatorConfig,
    seed: u64,
) -> Result<ExperimentReport> {
    cfg.validate()?;
    if mode.adaptive && mode.colors.is_some() {
        return Err(Error::InvalidArgument(
            "a fixed color count conflicts with adaptive mode".into(),
        ));
    }
    let sampling = mode.adaptive || mode.colors.is_some();
    if !mode.exact && !sampling {
        return Err(Error::InvalidArgument("nothing to do: choose exact, colors or adaptive".into()));
    }
    if sampling && mode.trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }

    let (exact, exact_wall) = if mode.exact {
        let start = Instant::now();
        let c = count_triangles_exact(g);
        (Some(c), Some(start.elapsed()))
    } else {
        (None, None)
    };

    let mut report = ExperimentReport {
        graph_id: graph_id.to_string(),
        method: "exact".into(),
        exact_t: exact.map(|c| c.triangles),
        exact_work_ops: exact.map(|c| c.work_ops),
        exact_wall,
        trials: Vec::new(),
        sampled_wall: None,
        epsilon: cfg.epsilon,
        predicted_work_ratio: None,
    };

    if let Some(colors) = mode.colors {
        let (trials, wall) = run_trials(mode.trials, seed, |s| estimate_once(g, colors, s))?;
        report.method = "colorful".into();
        report.trials = trials;
        report.sampled_wall = Some(wall);
        report.predicted_work_ratio = Some(1.0 / (colors as f64 * colors as f64));
    } else if mode.adaptive {
        let start = Instant::now();
        let outcomes = exec::map_tasks(mode.trials, |i| adaptive_estimate(g, cfg, trial_seed(seed, i)));
        let mut trials = Vec::with_capacity(mode.trials);
        for (i, out) in outcomes.into_iter().enumerate() {
            let out = out?;
            let raw_t = out.trace.last().map_or(0, |p| p.raw_t);
            let work_ops = out.runs.iter().map(|e| e.work_ops).sum();
            let sampled_edges = out.runs.iter().map(|e| e.sampled_edges).sum();
            trials.push(Trial {
                seed: trial_seed(seed, i),
                raw_t,
                scaled: out.estimate as f64,
                work_ops,
                sampled_edges,
            });
        }
        report.method = "adaptive".into();
        report.trials = trials;
        report.sampled_wall = Some(start.elapsed());
    }
    Ok(report)
}

/// Column names of [`stats_row`].
pub const STATS_HEADER: &str = "name\tn\tm\tt\tDelta\tt_max\tsum_delta_sq\t3*Delta*t";

/// Tab-separated dataset row: name, n, m, t, Δ, t_max, Σδ², 3Δt.
pub fn stats_row(name: &str, g: &Graph, s: &TriangleStats) -> String {
    format!(
        "{name}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        g.n(),
        g.m(),
        s.t,
        s.delta_max,
        s.t_max,
        s.sum_delta_sq,
        s.bound_3_delta_t
    )
}

pub fn stats_kv(name: &str, g: &Graph, s: &TriangleStats) -> String {
    format!(
        "name={name}\nn={}\nm={}\nmax_degree={}\nt={}\nDelta={}\nt_max={}\nsum_delta_sq={}\nbound_3_Delta_t={}\n",
        g.n(),
        g.m(),
        g.max_degree(),
        s.t,
        s.delta_max,
        s.t_max,
        s.sum_delta_sq,
        s.bound_3_delta_t
    )
}
