//! Synthetic graphs for experiments and tests.

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{identity_labels, Graph, Vertex};
use crate::rng;

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced a valid edge list")
}

/// `k` vertex-disjoint triangles on `3k` vertices: `{3i, 3i+1, 3i+2}`.
pub fn disjoint_triangles(k: usize) -> Graph {
    let mut edges = Vec::with_capacity(3 * k);
    for i in 0..k as Vertex {
        let b = 3 * i;
        edges.extend([(b, b + 1), (b, b + 2), (b + 1, b + 2)]);
    }
    Graph::from_canonical(3 * k, edges, identity_labels(3 * k))
}

/// Erdős–Rényi `G(n, num/den)`.
///
/// Row `u` (the pairs `(u, v)` with `v > u`) is drawn from ChaCha stream `u`
/// of `seed`, so rows can be generated in parallel and the edge set depends
/// only on `(n, num, den, seed)`.
pub fn gnp(n: usize, num: u64, den: u64, seed: u64) -> Result<Graph> {
    if den == 0 || num > den {
        return Err(Error::InvalidProbability { num, den });
    }
    let rows = exec::map_range(n, |u| {
        let mut out = Vec::new();
        if num == 0 {
            return out;
        }
        let mut r = rng::stream_rng(seed, u as u64);
        for v in u + 1..n {
            if rng::bernoulli(&mut r, num, den) {
                out.push((u as Vertex, v as Vertex));
            }
        }
        out
    });
    let edges: Vec<_> = rows.into_iter().flatten().collect();
    Ok(Graph::from_canonical(n, edges, identity_labels(n)))
}

pub fn complete(n: usize) -> Graph {
    let n32 = n as Vertex;
    build(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))).collect())
}

/// Center `0` joined to `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves as Vertex).map(|v| (0, v)).collect())
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let (a32, b32) = (a as Vertex, b as Vertex);
    build(a + b, (0..a32).flat_map(|u| (a32..a32 + b32).map(move |v| (u, v))).collect())
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n as Vertex).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    if n >= 3 {
        edges.push((0, n as Vertex - 1));
    }
    build(n, edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    build(10, edges)
}

/// `k` triangles sharing vertex `0` and otherwise disjoint.
pub fn triangle_fan(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k as Vertex {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    build(2 * k + 1, edges)
}
