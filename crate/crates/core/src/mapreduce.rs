//! In-process simulation of the map/shuffle/reduce formulation of colorful
//! sampling.
//!
//! Mappers see edges together with their endpoint colors and emit the
//! monochromatic ones keyed by color. The shuffle routes each color to its
//! own reducer, which counts triangles among the edges it received. A second
//! round sums the reducer counts and the driver scales the sum by `N²`.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exact::{count_triangles_exact, ExactCount};
use crate::exec;
use crate::graph::{Graph, Vertex};
use crate::sampler::{random_coloring, Coloring, Estimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeyedEdge {
    pub key: u32,
    pub edge: (Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleMetrics {
    /// Records leaving the map phase (`|E'|`).
    pub emitted_total: usize,
    /// Records produced by each mapper.
    pub per_mapper: Vec<usize>,
    /// Edges received by the reducer of each color, indexed by color.
    pub per_color: Vec<usize>,
    pub max_reducer_load: usize,
    /// Triangles counted by the reducer of each color.
    pub reducer_triangles: Vec<u64>,
    /// Map/reduce round plus the summing round.
    pub rounds: u32,
}

/// Mapper `i` of `mapper_count` handles the contiguous edge range
/// `[i·m/k, (i+1)·m/k)`. Output is the concatenation in mapper order, which
/// is the edge-list order regardless of `mapper_count`.
pub fn map_phase(g: &Graph, coloring: &Coloring, mapper_count: usize) -> Result<Vec<KeyedEdge>> {
    Ok(map_per_mapper(g, coloring, mapper_count)?.concat())
}

fn map_per_mapper(
    g: &Graph,
    coloring: &Coloring,
    mapper_count: usize,
) -> Result<Vec<Vec<KeyedEdge>>> {
    if mapper_count == 0 {
        return Err(Error::InvalidArgument("mapper_count must be >= 1".into()));
    }
    if coloring.len() != g.n() {
        return Err(Error::ColoringLengthMismatch { coloring: coloring.len(), graph: g.n() });
    }
    let edges = g.edges();
    let m = edges.len();
    Ok(exec::map_tasks(mapper_count, |i| {
        let range = &edges[i * m / mapper_count..(i + 1) * m / mapper_count];
        range
            .iter()
            .filter(|&&(u, v)| coloring.color(u) == coloring.color(v))
            .map(|&(u, v)| KeyedEdge { key: coloring.color(u), edge: (u, v) })
            .collect()
    }))
}

/// Groups records by key; each group's edges are sorted.
pub fn shuffle(records: Vec<KeyedEdge>) -> BTreeMap<u32, Vec<(Vertex, Vertex)>> {
    let mut groups: BTreeMap<u32, Vec<(Vertex, Vertex)>> = BTreeMap::new();
    for r in records {
        groups.entry(r.key).or_default().push(r.edge);
    }
    for edges in groups.values_mut() {
        edges.sort_unstable();
    }
    groups
}

/// Exact triangle count of the graph formed by `edges`. `_color` is the
/// reducer key; the count does not depend on it.
pub fn reduce_phase(_color: u32, edges: &[(Vertex, Vertex)]) -> ExactCount {
    let mut ids: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |x: Vertex| ids.binary_search(&x).expect("endpoint present") as Vertex;
    let g = Graph::from_edges(ids.len(), edges.iter().map(|&(u, v)| (local(u), local(v))))
        .expect("local ids are in range");
    count_triangles_exact(&g)
}

/// Runs the pipeline for a given coloring.
pub fn run_pipeline_with_coloring(
    g: &Graph,
    coloring: &Coloring,
    mapper_count: usize,
) -> Result<(Estimate, ShuffleMetrics)> {
    let colors = coloring.num_colors();
    let mapped = map_per_mapper(g, coloring, mapper_count)?;
    let per_mapper: Vec<usize> = mapped.iter().map(Vec::len).collect();
    let groups = shuffle(mapped.concat());

    let keys: Vec<(u32, &Vec<(Vertex, Vertex)>)> = groups.iter().map(|(&k, v)| (k, v)).collect();
    let reduced = exec::map_tasks(keys.len(), |i| reduce_phase(keys[i].0, keys[i].1));

    let mut per_color = vec![0usize; colors as usize];
    let mut reducer_triangles = vec![0u64; colors as usize];
    for (&(key, edges), out) in keys.iter().zip(&reduced) {
        per_color[key as usize] = edges.len();
        reducer_triangles[key as usize] = out.triangles;
    }

    // Second round: sum the reducer outputs, then scale once.
    let raw_t: u64 = reducer_triangles.iter().sum();
    let work_ops: u64 = reduced.iter().map(|c| c.work_ops).sum();
    let merge_ops: u64 = reduced.iter().map(|c| c.merge_ops).sum();
    let emitted_total: usize = per_mapper.iter().sum();
    let n2 = colors as u128 * colors as u128;
    let estimate = Estimate {
        raw_t,
        colors: Some(colors),
        keep_rate: Ratio::new(1, colors as u64),
        scaled: Ratio::from_integer(raw_t as u128 * n2),
        seed: coloring.seed(),
        sampled_edges: emitted_total,
        work_ops,
        merge_ops,
    };
    let metrics = ShuffleMetrics {
        emitted_total,
        per_mapper,
        max_reducer_load: per_color.iter().copied().max().unwrap_or(0),
        per_color,
        reducer_triangles,
        rounds: 2,
    };
    Ok((estimate, metrics))
}

/// Colors the graph with `random_coloring(n, colors, seed)` and runs the
/// pipeline; the estimate equals `estimate_once(g, colors, seed)`.
pub fn run_pipeline(
    g: &Graph,
    colors: u32,
    seed: u64,
    mapper_count: usize,
) -> Result<(Estimate, ShuffleMetrics)> {
    let coloring = random_coloring(g.n(), colors, seed)?;
    run_pipeline_with_coloring(g, &coloring, mapper_count)
}
