//! Immutable undirected simple graphs in CSR form, plus the edge-list reader.

use std::fmt::Write as _;
use std::io::BufRead;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Vertex id after dense remapping.
pub type Vertex = u32;

/// An undirected simple graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically;
/// an edge's id is its position in that list. Adjacency is a CSR array of
/// strictly increasing neighbor lists, with a parallel array giving the id of
/// the edge behind every adjacency slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(Vertex, Vertex)>,
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    slot_edge: Vec<u32>,
    labels: Arc<[u64]>,
}

/// How raw ids in an edge list become vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexIds {
    /// Every distinct id becomes a vertex, numbered in increasing id order.
    #[default]
    Dense,
    /// Ids are used as given, so ids that never appear become isolated
    /// vertices. Files whose smallest id is 1 are treated as one-indexed.
    Raw,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOptions {
    /// Lines whose first non-blank character is this are skipped.
    pub comment_prefix: char,
    pub ids: VertexIds,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { comment_prefix: '#', ids: VertexIds::Dense }
    }
}

impl Graph {
    /// Builds a graph on vertices `0..n`. Self-loops are dropped, each edge is
    /// canonicalized to `u < v` and duplicates (in either direction) are
    /// removed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x as usize, n });
                }
            }
            if a != b {
                list.push((a.min(b), a.max(b)));
            }
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_canonical(n, list, identity_labels(n)))
    }

    /// `edges` must be sorted, deduplicated, with `u < v` and `v < n`.
    pub(crate) fn from_canonical(
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
        labels: Arc<[u64]>,
    ) -> Graph {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < n));
        debug_assert_eq!(labels.len(), n);
        assert!(edges.len() <= u32::MAX as usize, "edge count exceeds u32 ids");

        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * edges.len()];
        let mut slot_edge = vec![0; 2 * edges.len()];
        // Lexicographic edge order fills every list in increasing order: all
        // (w, x) with w < x precede any (x, y).
        for (id, &(u, v)) in edges.iter().enumerate() {
            let (cu, cv) = (cursor[u as usize], cursor[v as usize]);
            targets[cu] = v;
            slot_edge[cu] = id as u32;
            targets[cv] = u;
            slot_edge[cv] = id as u32;
            cursor[u as usize] += 1;
            cursor[v as usize] += 1;
        }
        Graph { edges, offsets, targets, slot_edge, labels }
    }

    pub fn empty() -> Graph {
        Self::from_canonical(0, Vec::new(), identity_labels(0))
    }

    /// Same vertices and labels as `self`, with the given canonical edges.
    pub(crate) fn with_edges(&self, edges: Vec<(Vertex, Vertex)>) -> Graph {
        Self::from_canonical(self.n(), edges, Arc::clone(&self.labels))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Original id of each vertex as it appeared in the input.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> Result<&[Vertex]> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(self.adj(v))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.neighbors(v).map(<[Vertex]>::len)
    }

    /// Unchecked neighbor slice; panics if `v >= n`.
    #[inline]
    pub fn adj(&self, v: usize) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids aligned with [`Graph::adj`].
    #[inline]
    pub(crate) fn adj_edges(&self, v: usize) -> &[u32] {
        &self.slot_edge[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Flat `key=value` report.
    pub fn report(&self) -> String {
        format!("n={}\nm={}\nmax_degree={}\n", self.n(), self.m(), self.max_degree())
    }

    /// Edge-list text that [`parse_edge_list`] reads back into an identical
    /// graph. Isolated vertices are written as self-loops so they survive.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n={} m={}", self.n(), self.m());
        for v in 0..self.n() {
            if self.adj(v).is_empty() {
                let _ = writeln!(out, "{0}\t{0}", self.labels[v]);
            }
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{}\t{}", self.labels[u as usize], self.labels[v as usize]);
        }
        out
    }
}

pub(crate) fn identity_labels(n: usize) -> Arc<[u64]> {
    (0..n as u64).collect()
}

/// Reads a whitespace-separated edge list.
///
/// With [`VertexIds::Dense`] every id that appears in the input, including
/// ids seen only in self-loops, becomes a vertex; ids are remapped to `0..n`
/// in increasing order of the raw id, so the result does not depend on line
/// order or edge direction.
pub fn parse_edge_list<R: BufRead>(reader: R, opts: &ParseOptions) -> Result<Graph> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with(opts.comment_prefix) {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let mut next = |what: &str| -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("missing {what} vertex"),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let a = next("source")?;
        let b = next("target")?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 2 fields, found extra token {extra:?}"),
            });
        }
        raw.push((a, b));
    }

    let labels: Vec<u64> = match opts.ids {
        VertexIds::Dense => {
            let mut ids: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        }
        VertexIds::Raw => {
            let ids = raw.iter().flat_map(|&(a, b)| [a, b]);
            match (ids.clone().min(), ids.max()) {
                (Some(lo), Some(hi)) => (lo.min(1)..=hi).collect(),
                _ => Vec::new(),
            }
        }
    };
    if labels.len() > u32::MAX as usize {
        return Err(Error::Parse { line: 0, message: "too many vertices".into() });
    }
    let base = labels.first().copied().unwrap_or(0);
    let dense = |x: u64| match opts.ids {
        VertexIds::Dense => labels.binary_search(&x).expect("label present") as Vertex,
        VertexIds::Raw => (x - base) as Vertex,
    };

    let mut edges: Vec<(Vertex, Vertex)> = raw
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| {
            let (a, b) = (dense(a), dense(b));
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let n = labels.len();
    Ok(Graph::from_canonical(n, edges, labels.into()))
}

pub fn parse_edge_list_str(text: &str, opts: &ParseOptions) -> Result<Graph> {
    parse_edge_list(text.as_bytes(), opts)
}

pub fn read_edge_list_file(path: &std::path::Path, opts: &ParseOptions) -> Result<Graph> {
    let file = std::fs::File::open(path)
        .map_err(|source| Error::File { path: path.to_path_buf(), source })?;
    parse_edge_list(std::io::BufReader::new(file), opts)
}
