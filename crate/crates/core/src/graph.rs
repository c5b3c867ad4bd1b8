//! Weighted resistor graphs built from point clouds.
//!
//! Edge weights are conductances. A graph is stored as a symmetric CSR weight
//! matrix with an empty diagonal, together with its degree vector.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::kernel::{knn_adjacency, Kernel};
use crate::points::PointCloud;
use crate::sparse::CsrMatrix;

/// Relative floor under which gaussian weights are dropped.
pub const GAUSSIAN_SPARSITY_FLOOR: f64 = 1e-12;

/// Multiplier applied to kernel values when building a graph.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingMode {
    /// `W_ij = k(x_i, x_j)`.
    #[default]
    None,
    /// `W_ij = k(x_i, x_j) / n^2` with `n` the full sample size.
    Pointwise,
    /// `W_ij = gamma_i gamma_j k(x_i, x_j)`; weights lie in `[0, 1]` and sum to one.
    Regionwise(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    weights: CsrMatrix,
    degrees: Vec<f64>,
}

impl WeightedGraph {
    /// Wraps a weight matrix after checking symmetry, non-negativity and an
    /// empty diagonal. Explicit zeros are removed.
    pub fn from_weights(weights: CsrMatrix) -> Result<Self> {
        let n = weights.dim();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(weights.row_indices(i).len());
            for (j, w) in weights.row(i) {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(invalid(format!(
                        "weight ({i}, {j}) = {w} is not a finite non-negative number"
                    )));
                }
                if i == j && w != 0.0 {
                    return Err(invalid(format!("self-loop on node {i}")));
                }
                if w != 0.0 && i != j {
                    row.push((j, w));
                }
            }
            rows.push(row);
        }
        let weights = CsrMatrix::from_rows(rows);
        if !weights.is_symmetric() {
            return Err(invalid("weight matrix is not symmetric"));
        }
        Ok(Self::from_symmetric_unchecked(weights))
    }

    fn from_symmetric_unchecked(weights: CsrMatrix) -> Self {
        let degrees = (0..weights.dim()).map(|i| weights.row_sum(i)).collect();
        Self { weights, degrees }
    }

    /// Graph on `n` nodes from undirected edges; parallel edges add up.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(invalid(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if i == j {
                return Err(invalid(format!("self-loop on node {i}")));
            }
            rows[i].push((j, w));
            rows[j].push((i, w));
        }
        Self::from_weights(CsrMatrix::from_rows(rows))
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn weights(&self) -> &CsrMatrix {
        &self.weights
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights.get(i, j)
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degrees[i]
    }

    pub fn neighbors(&self, i: usize) -> impl ExactSizeIterator<Item = (usize, f64)> + '_ {
        self.weights.row(i)
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.weights.nnz() / 2
    }

    pub fn max_weight(&self) -> f64 {
        (0..self.len())
            .flat_map(|i| self.weights.row_values(i).iter().copied())
            .fold(0.0, f64::max)
    }

    /// Every weight multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(invalid(format!("scale factor must be positive, got {c}")));
        }
        Ok(Self::from_symmetric_unchecked(self.weights.scaled(c)))
    }

    /// Induced subgraph on `nodes`, relabelled in the given order.
    pub fn subgraph(&self, nodes: &[usize]) -> Self {
        Self::from_symmetric_unchecked(self.weights.principal_submatrix(nodes))
    }

    /// Connected-component label per node, numbered in order of first node.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in self.weights.row_indices(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Nodes reachable from any node in `seeds`.
    pub fn reachable_from(&self, seeds: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in self.weights.row_indices(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Combinatorial Laplacian `L = D - W` with sorted columns.
    pub fn laplacian(&self) -> CsrMatrix {
        let rows = (0..self.len())
            .map(|i| {
                let mut row: Vec<(usize, f64)> = self.neighbors(i).map(|(j, w)| (j, -w)).collect();
                row.push((i, self.degrees[i]));
                row
            })
            .collect();
        CsrMatrix::from_rows(rows)
    }

    /// Plain-text edge list, one `i j w` line per undirected edge.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# nodes {} edges {}", self.len(), self.edge_count());
        for i in 0..self.len() {
            for (j, w) in self.neighbors(i).filter(|&(j, _)| j > i) {
                let _ = writeln!(out, "{i} {j} {w:.17e}");
            }
        }
        out
    }
}

/// Kernel graph on `cloud` with the given edge scaling.
pub fn build_graph(
    cloud: &PointCloud,
    kernel: &Kernel,
    scaling: &ScalingMode,
) -> Result<WeightedGraph> {
    let n = cloud.len();
    if n < 2 {
        return Err(invalid(format!(
            "graph construction needs at least 2 points, got {n}"
        )));
    }
    kernel.validate()?;
    if let ScalingMode::Regionwise(gamma) = scaling {
        if gamma.len() != n {
            return Err(invalid(format!(
                "regionwise scaling has {} weights for {n} nodes",
                gamma.len()
            )));
        }
        if gamma.iter().any(|g| !(0.0..=1.0).contains(g)) {
            return Err(invalid("regionwise weights must lie in [0, 1]"));
        }
    }
    let point_scale = 1.0 / (n as f64 * n as f64);
    let scale = |i: usize, j: usize| -> f64 {
        match scaling {
            ScalingMode::None => 1.0,
            ScalingMode::Pointwise => point_scale,
            ScalingMode::Regionwise(g) => g[i] * g[j],
        }
    };

    let mut upper: Vec<Vec<(usize, f64)>> = match kernel {
        Kernel::Knn { kappa } => {
            let adj = knn_adjacency(cloud, *kappa)?;
            (0..n)
                .map(|i| {
                    adj.row_indices(i)
                        .iter()
                        .filter(|&&j| j > i)
                        .map(|&j| (j, scale(i, j)))
                        .filter(|&(_, w)| w > 0.0)
                        .collect()
                })
                .collect()
        }
        _ => (0..n)
            .into_par_iter()
            .map(|i| {
                let xi = cloud.point(i);
                let metric = cloud.metric();
                ((i + 1)..n)
                    .filter_map(|j| {
                        let k = kernel.value(metric(xi, cloud.point(j)));
                        let w = k * scale(i, j);
                        (w > 0.0).then_some((j, w))
                    })
                    .collect()
            })
            .collect(),
    };

    if matches!(kernel, Kernel::Gaussian { .. }) {
        let max_w = upper
            .iter()
            .flat_map(|r| r.iter().map(|&(_, w)| w))
            .fold(0.0, f64::max);
        let floor = GAUSSIAN_SPARSITY_FLOOR * max_w;
        upper
            .par_iter_mut()
            .for_each(|r| r.retain(|&(_, w)| w >= floor));
    }

    Ok(WeightedGraph::from_symmetric_unchecked(
        CsrMatrix::from_upper_triangle(&upper),
    ))
}

/// Laplacian of `graph`.
pub fn laplacian(graph: &WeightedGraph) -> CsrMatrix {
    graph.laplacian()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cloud(n: usize, dim: usize, seed: u64) -> PointCloud {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n * dim).map(|_| rng.random::<f64>()).collect();
        PointCloud::new(coords, dim).unwrap()
    }

    #[test]
    fn pair_within_radius() {
        let cloud = PointCloud::from_scalars(&[0.0, 0.05]).unwrap();
        let k = Kernel::radial(0.08).unwrap();
        let g = build_graph(&cloud, &k, &ScalingMode::Pointwise).unwrap();
        assert_eq!(g.weight(0, 1), 0.25);
        let g = build_graph(&cloud, &k, &ScalingMode::None).unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
        let g = build_graph(&cloud, &k, &ScalingMode::Regionwise(vec![0.5, 0.5])).unwrap();
        assert_eq!(g.weight(0, 1), 0.25);
    }

    #[test]
    fn regionwise_length_mismatch() {
        let cloud = PointCloud::from_scalars(&[0.0, 0.05, 0.1]).unwrap();
        let k = Kernel::radial(0.08).unwrap();
        assert!(build_graph(&cloud, &k, &ScalingMode::Regionwise(vec![0.5, 0.5])).is_err());
        let one = PointCloud::from_scalars(&[0.0]).unwrap();
        assert!(build_graph(&one, &k, &ScalingMode::None).is_err());
    }

    #[test]
    fn gaussian_graph_has_no_self_loops_and_is_symmetric() {
        let cloud = random_cloud(40, 2, 1);
        let g = build_graph(&cloud, &Kernel::gaussian(0.3).unwrap(), &ScalingMode::None).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.weight(i, i), 0.0);
            for (j, w) in g.neighbors(i) {
                assert_eq!(w.to_bits(), g.weight(j, i).to_bits());
            }
            assert_eq!(g.degree(i), g.weights().row_sum(i));
        }
    }

    #[test]
    fn gaussian_floor_drops_negligible_weights() {
        let cloud = PointCloud::from_scalars(&[0.0, 0.1, 100.0]).unwrap();
        let g = build_graph(&cloud, &Kernel::gaussian(0.1).unwrap(), &ScalingMode::None).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn duplicate_points_are_joined() {
        let cloud = PointCloud::from_scalars(&[0.5, 0.5, 3.0]).unwrap();
        let g = build_graph(&cloud, &Kernel::radial(0.1).unwrap(), &ScalingMode::None).unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.degree(2), 0.0);
    }

    #[test]
    fn pointwise_is_unscaled_times_inverse_square() {
        let cloud = random_cloud(60, 3, 2);
        for kernel in [
            Kernel::radial(0.4).unwrap(),
            Kernel::gaussian(0.2).unwrap(),
            Kernel::knn(5).unwrap(),
        ] {
            let plain = build_graph(&cloud, &kernel, &ScalingMode::None).unwrap();
            let scaled = build_graph(&cloud, &kernel, &ScalingMode::Pointwise).unwrap();
            let s = 1.0 / (60.0 * 60.0);
            assert_eq!(plain.edge_count(), scaled.edge_count());
            for i in 0..60 {
                for (j, w) in plain.neighbors(i) {
                    assert_eq!(scaled.weight(i, j), w * s);
                }
            }
        }
    }

    #[test]
    fn uniform_regionwise_matches_pointwise() {
        let cloud = random_cloud(50, 2, 3);
        let k = Kernel::radial(0.3).unwrap();
        let point = build_graph(&cloud, &k, &ScalingMode::Pointwise).unwrap();
        let region =
            build_graph(&cloud, &k, &ScalingMode::Regionwise(vec![1.0 / 50.0; 50])).unwrap();
        for i in 0..50 {
            for (j, w) in point.neighbors(i) {
                assert_relative_eq!(region.weight(i, j), w, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn knn_graph_contains_each_directed_relation() {
        let cloud = random_cloud(30, 2, 4);
        let g = build_graph(&cloud, &Kernel::knn(3).unwrap(), &ScalingMode::None).unwrap();
        for i in 0..30 {
            for (_, j) in crate::kernel::nearest_neighbors(&cloud, i, 3) {
                assert_eq!(g.weight(i, j), 1.0);
                assert_eq!(g.weight(j, i), 1.0);
            }
        }
    }

    #[test]
    fn laplacian_examples() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 2.5)]).unwrap();
        let l = g.laplacian().to_dense();
        assert_eq!(
            (l[(0, 0)], l[(0, 1)], l[(1, 0)], l[(1, 1)]),
            (2.5, -2.5, -2.5, 2.5)
        );

        let tri = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let l = tri.laplacian();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 2.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn laplacian_is_psd_with_zero_row_sums() {
        let cloud = random_cloud(80, 3, 5);
        let g = build_graph(
            &cloud,
            &Kernel::gaussian(0.25).unwrap(),
            &ScalingMode::Pointwise,
        )
        .unwrap();
        let l = g.laplacian();
        let ones = vec![1.0; 80];
        for r in l.mul_vec(&ones) {
            assert!(r.abs() < 1e-15);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let v: Vec<f64> = (0..80).map(|_| rng.random_range(-1.0..1.0)).collect();
            let lv = l.mul_vec(&v);
            let q: f64 = v.iter().zip(&lv).map(|(a, b)| a * b).sum();
            assert!(q >= -1e-12);
        }
    }

    #[test]
    fn from_weights_validates() {
        let asym = CsrMatrix::from_rows(vec![vec![(1, 1.0)], vec![(0, 2.0)]]);
        assert!(WeightedGraph::from_weights(asym).is_err());
        let neg = CsrMatrix::from_rows(vec![vec![(1, -1.0)], vec![(0, -1.0)]]);
        assert!(WeightedGraph::from_weights(neg).is_err());
        let looped = CsrMatrix::from_rows(vec![vec![(0, 1.0)], vec![]]);
        assert!(WeightedGraph::from_weights(looped).is_err());
    }

    #[test]
    fn components_and_reachability() {
        let g = WeightedGraph::from_edges(5, &[(0, 1, 1.0), (3, 4, 1.0)]).unwrap();
        assert_eq!(g.components(), vec![0, 0, 1, 2, 2]);
        assert!(!g.is_connected());
        assert_eq!(
            g.reachable_from(&[4]),
            vec![false, false, false, true, true]
        );
    }
}
