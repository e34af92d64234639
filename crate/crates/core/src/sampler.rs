//! Colorful triangle sampling and the independent edge-sampling baseline.
//!
//! Colorful sampling gives every vertex a uniform color out of `N`, keeps
//! the monochromatic edges, counts triangles among them exactly and scales
//! the count by `N²`. A triangle survives iff its three vertices share a
//! color, which happens with probability `1/N²`, so the scaled count is an
//! unbiased estimate of the triangle count. Whenever two edges of a triangle
//! are kept the third is kept too.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exact::count_triangles_exact;
use crate::exec;
use crate::graph::{Graph, Vertex};
use crate::rng;

/// A vertex coloring `f: V → {0..N-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
    seed: Option<u64>,
}

impl Coloring {
    /// Wraps an explicit color assignment.
    pub fn from_colors(colors: Vec<u32>, num_colors: u32) -> Result<Coloring> {
        if num_colors == 0 {
            return Err(Error::ZeroColors);
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(Error::InvalidArgument(format!(
                "color {bad} out of range for {num_colors} colors"
            )));
        }
        Ok(Coloring { colors, num_colors, seed: None })
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    /// Seed that produced this coloring, if it was generated.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v as usize]
    }

    #[inline]
    pub fn is_monochromatic(&self, (u, v): (Vertex, Vertex)) -> bool {
        self.colors[u as usize] == self.colors[v as usize]
    }
}

/// Outcome of one sampling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    /// Triangles counted in the sampled subgraph.
    pub raw_t: u64,
    /// Number of colors; `None` for independent edge sampling.
    pub colors: Option<u32>,
    /// Per-edge keep probability `p`.
    pub keep_rate: Ratio<u64>,
    /// `raw_t / p²` for colorful sampling, `raw_t / p³` for independent.
    pub scaled: Ratio<u128>,
    pub seed: Option<u64>,
    pub sampled_edges: usize,
    /// Node-iterator probes needed to count the sample.
    pub work_ops: u64,
    /// Merge work the forward algorithm spent on the sample.
    pub merge_ops: u64,
}

impl Estimate {
    pub fn scaled_f64(&self) -> f64 {
        *self.scaled.numer() as f64 / *self.scaled.denom() as f64
    }

    /// The scaled value when it is an integer (always, for colorful runs).
    pub fn scaled_integer(&self) -> Option<u128> {
        self.scaled.is_integer().then(|| self.scaled.to_integer())
    }
}

/// Uniform coloring of `n` vertices with `num_colors` colors.
///
/// Vertices are split into blocks of [`rng::BLOCK`]; block `b` draws its
/// colors from ChaCha stream `b` of `seed` using unbiased rejection, so the
/// result depends only on `(n, num_colors, seed)`.
pub fn random_coloring(n: usize, num_colors: u32, seed: u64) -> Result<Coloring> {
    if num_colors == 0 {
        return Err(Error::ZeroColors);
    }
    let colors = if num_colors == 1 {
        vec![0; n]
    } else {
        let blocks = n.div_ceil(rng::BLOCK);
        exec::map_tasks(blocks, |b| {
            let mut r = rng::stream_rng(seed, b as u64);
            let len = rng::BLOCK.min(n - b * rng::BLOCK);
            (0..len)
                .map(|_| rng::uniform_below(&mut r, num_colors as u64) as u32)
                .collect::<Vec<u32>>()
        })
        .concat()
    };
    Ok(Coloring { colors, num_colors, seed: Some(seed) })
}

fn filter_edges<F>(g: &Graph, keep: F) -> Vec<(Vertex, Vertex)>
where
    F: Fn(usize, &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> + Sync + Send,
{
    let edges = g.edges();
    let blocks = edges.len().div_ceil(rng::BLOCK);
    exec::map_tasks(blocks, |b| {
        let lo = b * rng::BLOCK;
        let hi = (lo + rng::BLOCK).min(edges.len());
        keep(b, &edges[lo..hi])
    })
    .concat()
}

/// The subgraph on the same vertices keeping only monochromatic edges.
pub fn monochromatic_subgraph(g: &Graph, coloring: &Coloring) -> Result<Graph> {
    if coloring.len() != g.n() {
        return Err(Error::ColoringLengthMismatch { coloring: coloring.len(), graph: g.n() });
    }
    let kept = filter_edges(g, |_, block| {
        block.iter().copied().filter(|&e| coloring.is_monochromatic(e)).collect()
    });
    Ok(g.with_edges(kept))
}

/// Colorful estimate for a given coloring.
pub fn estimate_with_coloring(g: &Graph, coloring: &Coloring) -> Result<Estimate> {
    let sample = monochromatic_subgraph(g, coloring)?;
    let counted = count_triangles_exact(&sample);
    let colors = coloring.num_colors();
    let n2 = colors as u128 * colors as u128;
    Ok(Estimate {
        raw_t: counted.triangles,
        colors: Some(colors),
        keep_rate: Ratio::new(1, colors as u64),
        scaled: Ratio::from_integer(counted.triangles as u128 * n2),
        seed: coloring.seed(),
        sampled_edges: sample.m(),
        work_ops: counted.work_ops,
        merge_ops: counted.merge_ops,
    })
}

/// One run of colorful triangle sampling with `num_colors` colors.
pub fn estimate_once(g: &Graph, num_colors: u32, seed: u64) -> Result<Estimate> {
    let coloring = random_coloring(g.n(), num_colors, seed)?;
    estimate_with_coloring(g, &coloring)
}

/// Keeps each edge independently with probability `num/den` and scales the
/// surviving triangle count by `(den/num)³`.
///
/// Edge block `b` (of [`rng::BLOCK`] edges) uses ChaCha stream `b` of `seed`.
pub fn independent_edge_estimate(g: &Graph, num: u64, den: u64, seed: u64) -> Result<Estimate> {
    if num == 0 || den == 0 || num > den {
        return Err(Error::InvalidProbability { num, den });
    }
    let kept = filter_edges(g, |b, block| {
        let mut r = rng::stream_rng(seed, b as u64);
        block.iter().copied().filter(|_| rng::bernoulli(&mut r, num, den)).collect()
    });
    let sample = g.with_edges(kept);
    let counted = count_triangles_exact(&sample);
    let p = Ratio::new(num, den);
    let (pn, pd) = (*p.numer() as u128, *p.denom() as u128);
    Ok(Estimate {
        raw_t: counted.triangles,
        colors: None,
        keep_rate: p,
        scaled: Ratio::new(counted.triangles as u128 * pd * pd * pd, pn * pn * pn),
        seed: Some(seed),
        sampled_edges: sample.m(),
        work_ops: counted.work_ops,
        merge_ops: counted.merge_ops,
    })
}
