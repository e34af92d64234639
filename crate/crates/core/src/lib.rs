//! Triangle counting by colorful vertex sampling.
//!
//! Color every vertex uniformly with one of `N` colors, keep the edges whose
//! endpoints agree, count triangles in what is left and multiply by `N²`.
//! The crate provides that estimator alongside exact counting, per-edge and
//! per-vertex triangle statistics, rules for picking `N`, an adaptive
//! doubling estimator, an independent edge-sampling baseline and an
//! in-process simulation of the map/shuffle/reduce version.
//!
//! Data-parallel loops run on rayon when the default `parallel` feature is
//! enabled and sequentially otherwise; results are identical either way.

pub mod control;
pub mod error;
pub mod exact;
pub mod exec;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod mapreduce;
pub mod rng;
pub mod sampler;

pub use control::{
    adaptive_estimate, median_boost, sufficient_p_chernoff, sufficient_p_second_moment,
    AdaptiveOutcome, EstimatorConfig, KeepRateBound, Probe,
};
pub use error::{Error, Result};
pub use exact::{
    brute_force_count, brute_force_triples, count_triangles_exact, enumerate_triangles,
    triangle_stats, ExactCount, TriangleStats,
};
pub use experiment::{compare_samplers, run_report, ExperimentReport, ReportMode};
pub use graph::{
    parse_edge_list, parse_edge_list_str, read_edge_list_file, Graph, ParseOptions, Vertex,
    VertexIds,
};
pub use mapreduce::{map_phase, reduce_phase, run_pipeline, shuffle, KeyedEdge, ShuffleMetrics};
pub use sampler::{
    estimate_once, estimate_with_coloring, independent_edge_estimate, monochromatic_subgraph,
    random_coloring, Coloring, Estimate,
};
