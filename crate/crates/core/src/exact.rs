//! Exact triangle counting.
//!
//! Counting uses the forward (rank-ordered) node iterator: vertices are
//! ranked by `(degree, id)`, every edge is oriented from lower to higher
//! rank, and for each vertex `a` and each out-neighbor `b` the out-lists of
//! `a` (past `b`) and `b` are intersected. Every triangle is found exactly
//! once, at its lowest-ranked vertex.
//!
//! Two work counters are reported. `work_ops` is the number of adjacency
//! probes a plain node iterator makes (one per pair of neighbors of each
//! vertex, `Σ_v C(deg v, 2)`); it is the machine-independent cost of the
//! counting task. `merge_ops` is what the forward algorithm actually spends:
//! out-list elements consumed by its merge intersections.

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Graph, Vertex};

/// Default vertex limit for [`brute_force_count`].
pub const ORACLE_LIMIT: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactCount {
    pub triangles: u64,
    /// Neighbor pairs a node iterator would probe.
    pub work_ops: u64,
    /// Out-list elements consumed by the forward merges.
    pub merge_ops: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleStats {
    pub t: u64,
    /// Indexed by edge id (position in [`Graph::edges`]).
    pub delta_per_edge: Vec<u64>,
    /// Largest per-edge triangle count.
    pub delta_max: u64,
    pub t_per_vertex: Vec<u64>,
    pub t_max: u64,
    pub sum_delta_sq: u128,
    pub bound_3_delta_t: u128,
}

/// Rank-oriented copy of a graph. Out-lists hold ranks in increasing order.
struct Oriented {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    edge_ids: Vec<u32>,
    vertex_of_rank: Vec<Vertex>,
}

impl Oriented {
    fn new(g: &Graph) -> Oriented {
        let n = g.n();
        // Counting sort by degree; ties stay in id order.
        let max_deg = g.max_degree();
        let mut start = vec![0usize; max_deg + 2];
        for d in g.degrees() {
            start[d + 1] += 1;
        }
        for d in 0..=max_deg {
            start[d + 1] += start[d];
        }
        let mut order = vec![0 as Vertex; n];
        let mut rank_of = vec![0u32; n];
        for (v, d) in g.degrees().enumerate() {
            rank_of[v] = start[d] as u32;
            order[start[d]] = v as Vertex;
            start[d] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(g.m());
        let mut edge_ids = Vec::with_capacity(g.m());
        let mut scratch: Vec<(u32, u32)> = Vec::new();
        for (r, &v) in order.iter().enumerate() {
            let v = v as usize;
            scratch.clear();
            scratch.extend(g.adj(v).iter().zip(g.adj_edges(v)).filter_map(|(&w, &e)| {
                let rw = rank_of[w as usize];
                (rw > r as u32).then_some((rw, e))
            }));
            scratch.sort_unstable();
            for &(w, e) in &scratch {
                targets.push(w);
                edge_ids.push(e);
            }
            offsets.push(targets.len());
        }
        Oriented { offsets, targets, edge_ids, vertex_of_rank: order }
    }

    fn len(&self) -> usize {
        self.vertex_of_rank.len()
    }

    #[inline]
    fn out(&self, r: usize) -> (&[u32], &[u32]) {
        let span = self.offsets[r]..self.offsets[r + 1];
        (&self.targets[span.clone()], &self.edge_ids[span])
    }

    /// Calls `visit(b, c, e_ab, e_ac, e_bc)` for each triangle whose lowest
    /// rank is `a`. Returns the work spent.
    #[inline]
    fn triangles_at<F>(&self, a: usize, mut visit: F) -> u64
    where
        F: FnMut(u32, u32, u32, u32, u32),
    {
        let (out_a, eid_a) = self.out(a);
        let mut ops = 0u64;
        for (i, (&b, &e_ab)) in out_a.iter().zip(eid_a).enumerate() {
            let (xs, xe) = (&out_a[i + 1..], &eid_a[i + 1..]);
            if xs.is_empty() {
                continue;
            }
            let (ys, ye) = self.out(b as usize);
            let (mut p, mut q) = (0, 0);
            while p < xs.len() && q < ys.len() {
                match xs[p].cmp(&ys[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        visit(b, xs[p], e_ab, xe[p], ye[q]);
                        p += 1;
                        q += 1;
                    }
                }
            }
            ops += (p + q) as u64;
        }
        ops
    }

    fn canonical(&self, a: usize, b: u32, c: u32) -> (Vertex, Vertex, Vertex) {
        let mut t = [
            self.vertex_of_rank[a],
            self.vertex_of_rank[b as usize],
            self.vertex_of_rank[c as usize],
        ];
        t.sort_unstable();
        (t[0], t[1], t[2])
    }
}

/// Adjacency probes of a node iterator: `Σ_v C(deg v, 2)`.
pub fn node_iterator_probes(g: &Graph) -> u64 {
    g.degrees().map(|d| (d as u64) * (d as u64).saturating_sub(1) / 2).sum()
}

/// Exact triangle count together with the work it took.
pub fn count_triangles_exact(g: &Graph) -> ExactCount {
    let o = Oriented::new(g);
    let (triangles, merge_ops) = exec::fold_range(
        o.len(),
        || (0u64, 0u64),
        |(t, ops), a| {
            let mut local = 0u64;
            let spent = o.triangles_at(a, |_, _, _, _, _| local += 1);
            (t + local, ops + spent)
        },
        |x, y| (x.0 + y.0, x.1 + y.1),
    );
    ExactCount { triangles, work_ops: node_iterator_probes(g), merge_ops }
}

/// All triangles as `(u, v, w)` with `u < v < w`, in lexicographic order.
pub fn enumerate_triangles(g: &Graph) -> Vec<(Vertex, Vertex, Vertex)> {
    let o = Oriented::new(g);
    let per_rank = exec::map_range(o.len(), |a| {
        let mut found = Vec::new();
        o.triangles_at(a, |b, c, _, _, _| found.push(o.canonical(a, b, c)));
        found
    });
    let mut all: Vec<_> = per_rank.into_iter().flatten().collect();
    all.sort_unstable();
    all
}

/// Exact per-edge and per-vertex triangle statistics.
pub fn triangle_stats(g: &Graph) -> TriangleStats {
    let o = Oriented::new(g);
    let (n, m) = (g.n(), g.m());
    let (t, delta_per_edge, t_per_vertex) = exec::fold_chunks(
        o.len(),
        || (0u64, vec![0u64; m], vec![0u64; n]),
        |(mut t, mut de, mut tv), a| {
            let va = o.vertex_of_rank[a] as usize;
            o.triangles_at(a, |b, c, e_ab, e_ac, e_bc| {
                t += 1;
                de[e_ab as usize] += 1;
                de[e_ac as usize] += 1;
                de[e_bc as usize] += 1;
                tv[va] += 1;
                tv[o.vertex_of_rank[b as usize] as usize] += 1;
                tv[o.vertex_of_rank[c as usize] as usize] += 1;
            });
            (t, de, tv)
        },
        |(t1, mut de1, mut tv1), (t2, de2, tv2)| {
            de1.iter_mut().zip(&de2).for_each(|(x, y)| *x += y);
            tv1.iter_mut().zip(&tv2).for_each(|(x, y)| *x += y);
            (t1 + t2, de1, tv1)
        },
    );
    let delta_max = delta_per_edge.iter().copied().max().unwrap_or(0);
    let t_max = t_per_vertex.iter().copied().max().unwrap_or(0);
    let sum_delta_sq = delta_per_edge.iter().map(|&d| d as u128 * d as u128).sum();
    TriangleStats {
        t,
        delta_per_edge,
        delta_max,
        t_per_vertex,
        t_max,
        sum_delta_sq,
        bound_3_delta_t: 3 * delta_max as u128 * t as u128,
    }
}

/// Triangle count by scanning every vertex triple against a dense adjacency
/// matrix. Independent of the counting code above; intended as a test
/// oracle.
pub fn brute_force_count(g: &Graph) -> Result<u64> {
    brute_force_count_with_limit(g, ORACLE_LIMIT)
}

pub fn brute_force_count_with_limit(g: &Graph, limit: usize) -> Result<u64> {
    Ok(brute_force_triples_with_limit(g, limit)?.len() as u64)
}

/// Every triangle found by the `O(n³)` scan, lexicographically ordered.
pub fn brute_force_triples(g: &Graph) -> Result<Vec<(Vertex, Vertex, Vertex)>> {
    brute_force_triples_with_limit(g, ORACLE_LIMIT)
}

fn brute_force_triples_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<Vec<(Vertex, Vertex, Vertex)>> {
    let n = g.n();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let mut matrix = vec![false; n * n];
    for &(u, v) in g.edges() {
        matrix[u as usize * n + v as usize] = true;
        matrix[v as usize * n + u as usize] = true;
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !matrix[i * n + j] {
                continue;
            }
            for k in j + 1..n {
                if matrix[i * n + k] && matrix[j * n + k] {
                    out.push((i as Vertex, j as Vertex, k as Vertex));
                }
            }
        }
    }
    Ok(out)
}
