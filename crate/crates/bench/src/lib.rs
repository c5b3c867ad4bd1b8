//! Fixtures shared by the benchmarks.

use regionres::harness::{generate, Dataset, DatasetSpec};
use regionres::{
    build_graph, Kernel, PointCloud, RegionPair, RegionSpec, ScalingMode, WeightedGraph,
};

/// `n` uniform points in the unit square.
pub fn square(n: usize, seed: u64) -> PointCloud {
    generate(&DatasetSpec::new(Dataset::UniformCube { dim: 2, n }, seed)).unwrap()
}

/// Pointwise-scaled radial graph on `n` uniform points with about `degree`
/// neighbours per node.
pub fn square_graph(n: usize, degree: f64, seed: u64) -> (PointCloud, WeightedGraph) {
    let cloud = square(n, seed);
    let radius = (degree / (std::f64::consts::PI * n as f64)).sqrt();
    let graph = build_graph(
        &cloud,
        &Kernel::radial(radius).unwrap(),
        &ScalingMode::Pointwise,
    )
    .unwrap();
    (cloud, graph)
}

/// Balls of radius 0.05 around two opposite corners of the square.
pub fn corner_regions(cloud: &PointCloud) -> RegionPair {
    let ball = |x: f64, y: f64| {
        regionres::harness::ball_region(cloud, &RegionSpec::new(vec![x, y], 0.05).unwrap()).unwrap()
    };
    RegionPair::new(ball(0.1, 0.1), ball(0.9, 0.9), cloud.len()).unwrap()
}
