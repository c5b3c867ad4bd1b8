//! Region-based effective resistance on kernel graphs built from point clouds.
//!
//! The crate builds resistor graphs from samples of a metric space, computes
//! effective resistance between single nodes and between node sets (through
//! Schur complements of the Laplacian or through the Dirichlet voltage
//! problem), and replaces large samples by an α-cover whose cells carry
//! empirical density weights. The [`harness`] module drives the desk-scale
//! convergence experiments used by the command-line tool.

pub mod cover;
pub mod error;
pub mod graph;
pub mod harness;
pub mod kernel;
pub mod linalg;
pub mod points;
pub mod resistance;
pub mod sparse;
pub mod voltage;

pub use cover::{
    assign_voronoi, build_alpha_cover, centers_in, cover_csv, cover_graph, cover_graph_region_er,
    cover_region_er, estimate_density, AlphaCover, DensityWeights,
};
pub use error::{Error, Result};
pub use graph::{build_graph, laplacian, ScalingMode, WeightedGraph};
pub use harness::{ExperimentRecord, OutputFormat, RegionSpec};
pub use kernel::{knn_adjacency, max_knn_distance, Kernel};
pub use points::{LabelColumn, PointCloud};
pub use resistance::{
    aggregated_degree, deviation_stats, pairwise_er, reduce_graph, schur_complement, set_er,
    von_luxburg_limit, DeviationStats, PairwiseResistance, ReducedGraph, RegionPair,
};
pub use sparse::CsrMatrix;
pub use voltage::{
    energy, extend_voltage, region_er, solve_direct, solve_fixed_point, total_current, voltage_csv,
    Ball, Region, VoltageProblem, VoltageSolution,
};

pub use faer;
