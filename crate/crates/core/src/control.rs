//! Choosing the number of colors.
//!
//! Two closed-form sufficient conditions on the keep rate `p` (one from a
//! second-moment argument, one from a Chernoff bound over vertex-disjoint
//! triangle classes), and an adaptive procedure that needs no prior
//! knowledge of `t`: halve `N` until the sample holds enough triangles, then
//! take the median of several independent runs at that `N`.
//!
//! Logarithms are natural throughout.

use crate::error::{Error, Result};
use crate::exact::count_triangles_exact;
use crate::exec;
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::sampler::{estimate_once, Estimate};

/// A lower bound on the keep rate and the color count it implies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeepRateBound {
    /// Bound on `p`, clamped to `(0, 1]`.
    pub p: f64,
    /// Unclamped value of the formula.
    pub raw: f64,
    /// `max(1, floor(1/p))`, so `1/colors >= p`.
    pub colors: u32,
}

impl KeepRateBound {
    fn from_raw(raw: f64) -> KeepRateBound {
        let p = raw.min(1.0);
        let colors = (1.0 / p).floor().clamp(1.0, u32::MAX as f64) as u32;
        KeepRateBound { p, raw, colors }
    }
}

/// `p >= max(Δ·ln n / t, ln n / √t)`.
pub fn sufficient_p_second_moment(t: u64, delta_max: u64, n: u64) -> Result<KeepRateBound> {
    if t == 0 {
        return Err(Error::NoTriangles);
    }
    if n < 3 || delta_max == 0 {
        return Err(Error::InvalidArgument(format!(
            "second-moment bound needs n >= 3 and Δ >= 1 (got n={n}, Δ={delta_max})"
        )));
    }
    let ln_n = (n as f64).ln();
    let t = t as f64;
    let by_delta = delta_max as f64 * ln_n / t;
    let by_count = ln_n / t.sqrt();
    Ok(KeepRateBound::from_raw(by_delta.max(by_count)))
}

/// `p² >= 4(d+3)·t_max·ln n / (ε²·t)`.
pub fn sufficient_p_chernoff(
    t: u64,
    t_max: u64,
    n: u64,
    epsilon: f64,
    d: f64,
) -> Result<KeepRateBound> {
    if t == 0 {
        return Err(Error::NoTriangles);
    }
    if t_max == 0 || n < 2 || !(epsilon > 0.0 && epsilon < 1.0) || d.is_nan() || d <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "Chernoff bound needs t_max >= 1, n >= 2, 0 < ε < 1, d > 0 \
             (got t_max={t_max}, n={n}, ε={epsilon}, d={d})"
        )));
    }
    let p2 = 4.0 * (d + 3.0) * t_max as f64 * (n as f64).ln() / (epsilon * epsilon * t as f64);
    Ok(KeepRateBound::from_raw(p2.sqrt()))
}

/// Median of `values`: the middle element after sorting, or the lower of
/// the two middle elements for even lengths.
pub fn median_boost<T: Ord + Clone>(values: &[T]) -> Result<T> {
    if values.is_empty() {
        return Err(Error::EmptyMedian);
    }
    let mut sorted = values.to_vec();
    let mid = (sorted.len() - 1) / 2;
    let (_, median, _) = sorted.select_nth_unstable(mid);
    Ok(median.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    /// Target relative error, in `(0, 1)`.
    pub epsilon: f64,
    /// Failure exponent for the Chernoff bound.
    pub d: f64,
    /// Independent runs whose median is reported; odd.
    pub repetitions: usize,
    /// Raw monochromatic triangles needed to stop halving `N`.
    pub tau: u64,
    /// Starting color count; `None` means `2^⌈log₂ √m⌉`.
    pub n_max: Option<u32>,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig { epsilon: 0.1, d: 1.0, repetitions: 5, tau: 32, n_max: None }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must be in (0, 1), got {}", self.epsilon));
        }
        if self.d.is_nan() || self.d <= 0.0 {
            return bad(format!("d must be positive, got {}", self.d));
        }
        if self.repetitions == 0 || self.repetitions.is_multiple_of(2) {
            return bad(format!("repetitions must be odd and >= 1, got {}", self.repetitions));
        }
        if self.tau == 0 {
            return bad("tau must be >= 1".into());
        }
        if self.n_max == Some(0) {
            return bad("n_max must be >= 1".into());
        }
        Ok(())
    }

    pub fn starting_colors(&self, m: usize) -> u32 {
        self.n_max.unwrap_or_else(|| default_n_max(m))
    }
}

/// Smallest power of two that is at least `√m` (1 for `m <= 1`).
pub fn default_n_max(m: usize) -> u32 {
    let mut k = 0u32;
    while k < 31 && (1u128 << (2 * k)) < m as u128 {
        k += 1;
    }
    1 << k
}

const PROBE_DOMAIN: u64 = 0;
const REPEAT_DOMAIN: u64 = 1;

/// Seed of doubling probe `k`.
pub fn probe_seed(master: u64, k: u64) -> u64 {
    derive_seed(derive_seed(master, PROBE_DOMAIN), k)
}

/// Seed of final repetition `r`.
pub fn repetition_seed(master: u64, r: u64) -> u64 {
    derive_seed(derive_seed(master, REPEAT_DOMAIN), r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub colors: u32,
    pub seed: u64,
    pub raw_t: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveOutcome {
    pub colors: u32,
    pub estimate: u128,
    pub trace: Vec<Probe>,
    /// Final runs at the chosen color count (empty when it is 1).
    pub runs: Vec<Estimate>,
}

/// Doubling-then-median estimator.
///
/// Starting at `N = n_max`, runs one colorful estimate per step and halves
/// `N` while the raw count is below `tau`. At `N = 1` the exact count is
/// returned. Otherwise `repetitions` fresh runs at the stopping `N` are made
/// and their median scaled value is returned. Probe `k` uses
/// [`probe_seed`]`(seed, k)`, repetition `r` uses [`repetition_seed`]`(seed, r)`.
pub fn adaptive_estimate(g: &Graph, cfg: &EstimatorConfig, seed: u64) -> Result<AdaptiveOutcome> {
    cfg.validate()?;
    let mut colors = cfg.starting_colors(g.m());
    let mut trace = Vec::new();
    loop {
        let probe_seed = probe_seed(seed, trace.len() as u64);
        let raw_t = if colors == 1 {
            count_triangles_exact(g).triangles
        } else {
            estimate_once(g, colors, probe_seed)?.raw_t
        };
        trace.push(Probe { colors, seed: probe_seed, raw_t });
        if colors == 1 {
            return Ok(AdaptiveOutcome { colors, estimate: raw_t as u128, trace, runs: Vec::new() });
        }
        if raw_t >= cfg.tau {
            break;
        }
        colors /= 2;
    }

    let runs = exec::map_tasks(cfg.repetitions, |r| {
        estimate_once(g, colors, repetition_seed(seed, r as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let scaled: Vec<u128> = runs.iter().map(|e| e.scaled.to_integer()).collect();
    let estimate = median_boost(&scaled)?;
    Ok(AdaptiveOutcome { colors, estimate, trace, runs })
}
