//! Dirichlet voltages with the source held at 1 and the sink at 0.
//!
//! The interior voltage is harmonic, `(L v)_i = 0`, and the current it drives
//! out of the source is the source-to-sink conductance.

use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::kernel::Kernel;
use crate::linalg::SpdFactor;
use crate::points::{euclidean, PointCloud};
use crate::resistance::RegionPair;

/// Default stopping tolerance of the fixed-point iteration.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default sweep budget of the fixed-point iteration.
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Source,
    Sink,
    Interior,
}

/// A graph with a source set pinned to 1 and a sink set pinned to 0.
#[derive(Debug, Clone)]
pub struct VoltageProblem<'g> {
    graph: &'g WeightedGraph,
    regions: RegionPair,
    role: Vec<Role>,
    interior: Vec<usize>,
}

impl<'g> VoltageProblem<'g> {
    /// Fails with [`Error::NoPath`] if some interior node cannot reach the
    /// boundary.
    pub fn new(graph: &'g WeightedGraph, regions: RegionPair) -> Result<Self> {
        let n = graph.len();
        if let Some(&i) = regions
            .source()
            .iter()
            .chain(regions.sink())
            .find(|&&i| i >= n)
        {
            return Err(invalid(format!(
                "region node {i} out of range for {n} nodes"
            )));
        }
        let mut role = vec![Role::Interior; n];
        for &i in regions.source() {
            role[i] = Role::Source;
        }
        for &i in regions.sink() {
            role[i] = Role::Sink;
        }
        let boundary: Vec<usize> = regions
            .source()
            .iter()
            .chain(regions.sink())
            .copied()
            .collect();
        let reach = graph.reachable_from(&boundary);
        let interior: Vec<usize> = (0..n).filter(|&i| role[i] == Role::Interior).collect();
        if let Some(&i) = interior.iter().find(|&&i| !reach[i]) {
            return Err(Error::NoPath(format!(
                "interior node {i} has no path to the source or sink"
            )));
        }
        Ok(Self {
            graph,
            regions,
            role,
            interior,
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.graph
    }

    pub fn regions(&self) -> &RegionPair {
        &self.regions
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    fn pinned(&self) -> Vec<f64> {
        self.role
            .iter()
            .map(|r| if *r == Role::Source { 1.0 } else { 0.0 })
            .collect()
    }
}

/// Node voltages with solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageSolution {
    pub values: Vec<f64>,
    /// Sweeps performed; 0 for the direct solve.
    pub iterations: usize,
    /// Final sup-norm update of the fixed-point iteration; 0 for the direct solve.
    pub residual: f64,
    /// Sup-norm update after every sweep.
    pub residual_history: Vec<f64>,
}

/// Solves `L_cc v_c = W_cs 1` for the interior voltages.
pub fn solve_direct(problem: &VoltageProblem<'_>) -> Result<VoltageSolution> {
    let graph = problem.graph;
    let mut values = problem.pinned();
    let interior = &problem.interior;
    if !interior.is_empty() {
        let rhs: Vec<f64> = interior
            .iter()
            .map(|&c| {
                graph
                    .neighbors(c)
                    .filter(|&(j, _)| problem.role[j] == Role::Source)
                    .map(|(_, w)| w)
                    .sum()
            })
            .collect();
        let factor = SpdFactor::laplacian_block(graph, interior)?;
        for (&c, v) in interior.iter().zip(factor.solve(&rhs)) {
            values[c] = v;
        }
    }
    Ok(VoltageSolution {
        values,
        iterations: 0,
        residual: 0.0,
        residual_history: Vec::new(),
    })
}

/// Jacobi iteration `v_i <- sum_j W_ij v_j / D_i` over the interior, started
/// from zero, until the sup-norm update drops below `tol`.
pub fn solve_fixed_point(
    problem: &VoltageProblem<'_>,
    tol: f64,
    max_iter: usize,
) -> Result<VoltageSolution> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let graph = problem.graph;
    let mut v = problem.pinned();
    let mut next = v.clone();
    let mut history = Vec::new();
    let mut residual = f64::INFINITY;
    if problem.interior.is_empty() {
        residual = 0.0;
    }
    let mut iterations = 0;
    while residual >= tol {
        if iterations == max_iter {
            return Err(Error::NonConvergence {
                iterations,
                residual,
            });
        }
        residual = 0.0;
        for &i in &problem.interior {
            let s: f64 = graph.neighbors(i).map(|(j, w)| w * v[j]).sum();
            let updated = s / graph.degree(i);
            residual = residual.max((updated - v[i]).abs());
            next[i] = updated;
        }
        std::mem::swap(&mut v, &mut next);
        iterations += 1;
        history.push(residual);
    }
    Ok(VoltageSolution {
        values: v,
        iterations,
        residual,
        residual_history: history,
    })
}

/// `J = sum_{i in source} sum_j W_ij (v_i - v_j)`.
pub fn total_current(
    graph: &WeightedGraph,
    solution: &VoltageSolution,
    source: &[usize],
) -> Result<f64> {
    let v = &solution.values;
    if v.len() != graph.len() {
        return Err(invalid(format!(
            "voltage has {} entries for {} nodes",
            v.len(),
            graph.len()
        )));
    }
    if let Some(&i) = source.iter().find(|&&i| i >= v.len()) {
        return Err(invalid(format!("source node {i} out of range")));
    }
    Ok(source
        .iter()
        .map(|&i| {
            graph
                .neighbors(i)
                .map(|(j, w)| w * (v[i] - v[j]))
                .sum::<f64>()
        })
        .sum())
}

/// `1 / J` for the direct Dirichlet solution.
pub fn region_er(graph: &WeightedGraph, regions: &RegionPair) -> Result<f64> {
    let problem = VoltageProblem::new(graph, regions.clone())?;
    let solution = solve_direct(&problem)?;
    let current = total_current(graph, &solution, regions.source())?;
    if current.is_nan() || current <= 0.0 {
        return Err(Error::NoPath("no current flows from source to sink".into()));
    }
    Ok(1.0 / current)
}

/// `sum_{i<j} W_ij (v_i - v_j)^2`, which equals `v^T L v`.
pub fn energy(graph: &WeightedGraph, v: &[f64]) -> f64 {
    assert_eq!(
        v.len(),
        graph.len(),
        "voltage length does not match the graph"
    );
    (0..graph.len())
        .map(|i| {
            graph
                .neighbors(i)
                .filter(|&(j, _)| j > i)
                .map(|(j, w)| w * (v[i] - v[j]) * (v[i] - v[j]))
                .sum::<f64>()
        })
        .sum()
}

/// A subset of the ambient space.
pub trait Region {
    fn contains(&self, x: &[f64]) -> bool;
}

/// Closed Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(invalid(format!(
                "ball radius must be non-negative, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }
}

impl Region for Ball {
    fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.center.len() && euclidean(x, &self.center) <= self.radius
    }
}

/// Voltage at an arbitrary point: 1 in the source region, 0 in the sink
/// region, and otherwise the kernel-weighted average of the sample voltages.
pub fn extend_voltage(
    cloud: &PointCloud,
    kernel: &Kernel,
    solution: &VoltageSolution,
    source: &dyn Region,
    sink: &dyn Region,
    x: &[f64],
) -> Result<f64> {
    if x.len() != cloud.dim() {
        return Err(invalid(format!(
            "point has dimension {}, sample has {}",
            x.len(),
            cloud.dim()
        )));
    }
    if solution.values.len() != cloud.len() {
        return Err(invalid("voltage length does not match the sample"));
    }
    if matches!(kernel, Kernel::Knn { .. }) {
        return Err(invalid("voltage extension needs a distance-based kernel"));
    }
    kernel.validate()?;
    if source.contains(x) {
        return Ok(1.0);
    }
    if sink.contains(x) {
        return Ok(0.0);
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (i, v) in solution.values.iter().enumerate() {
        let k = kernel.value(cloud.distance_to(i, x));
        num += k * v;
        den += k;
    }
    if den > 0.0 {
        Ok(num / den)
    } else {
        Err(Error::IsolatedPoint(x.to_vec()))
    }
}

/// CSV dump with columns `node_index`, one per coordinate, and `voltage`.
pub fn voltage_csv(cloud: &PointCloud, solution: &VoltageSolution) -> String {
    let mut out = String::from("node_index");
    for d in 0..cloud.dim() {
        let _ = write!(out, ",x{d}");
    }
    out.push_str(",voltage\n");
    for (i, (p, v)) in cloud.iter().zip(&solution.values).enumerate() {
        let _ = write!(out, "{i}");
        for c in p {
            let _ = write!(out, ",{c:.17e}");
        }
        let _ = writeln!(out, ",{v:.17e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    fn ends(n: usize) -> RegionPair {
        RegionPair::new(vec![0], vec![n - 1], n).unwrap()
    }

    #[test]
    fn direct_solve_on_paths() {
        let g = path(3);
        let p = VoltageProblem::new(&g, ends(3)).unwrap();
        let v = solve_direct(&p).unwrap().values;
        assert_eq!((v[0], v[2]), (1.0, 0.0));
        assert!((v[1] - 0.5).abs() < 1e-15);

        let g = path(4);
        let p = VoltageProblem::new(&g, ends(4)).unwrap();
        let v = solve_direct(&p).unwrap().values;
        for (a, b) in v.iter().zip([1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0]) {
            assert!((a - b).abs() < 1e-15);
        }

        let g = path(2);
        let p = VoltageProblem::new(&g, ends(2)).unwrap();
        assert_eq!(solve_direct(&p).unwrap().values, vec![1.0, 0.0]);
    }

    #[test]
    fn fixed_point_on_a_path() {
        let g = path(3);
        let p = VoltageProblem::new(&g, ends(3)).unwrap();
        let s = solve_fixed_point(&p, 1e-10, 100).unwrap();
        assert!((s.values[1] - 0.5).abs() < 1e-9);
        assert_eq!(s.iterations, s.residual_history.len());
        assert!(s.residual < 1e-10);
    }

    #[test]
    fn fixed_point_reports_non_convergence() {
        let g = path(30);
        let p = VoltageProblem::new(&g, ends(30)).unwrap();
        match solve_fixed_point(&p, 1e-12, 5) {
            Err(Error::NonConvergence {
                iterations,
                residual,
            }) => {
                assert_eq!(iterations, 5);
                assert!(residual > 1e-12);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_interior_is_rejected() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let pair = RegionPair::new(vec![0], vec![2], 4).unwrap();
        assert!(matches!(
            VoltageProblem::new(&g, pair),
            Err(Error::NoPath(_))
        ));
    }

    #[test]
    fn current_examples() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 2.5)]).unwrap();
        let p = VoltageProblem::new(&g, ends(2)).unwrap();
        let s = solve_direct(&p).unwrap();
        assert_eq!(total_current(&g, &s, &[0]).unwrap(), 2.5);
        assert_eq!(region_er(&g, &ends(2)).unwrap(), 0.4);

        let g = path(3);
        let p = VoltageProblem::new(&g, ends(3)).unwrap();
        let s = solve_direct(&p).unwrap();
        assert!((total_current(&g, &s, &[0]).unwrap() - 0.5).abs() < 1e-15);
        assert!((region_er(&g, &ends(3)).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn region_er_examples() {
        let tri = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let r = region_er(&tri, &RegionPair::new(vec![0], vec![1], 3).unwrap()).unwrap();
        assert!((r - 2.0 / 3.0).abs() < 1e-14);
        let star = WeightedGraph::from_edges(3, &[(0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        let r = region_er(&star, &RegionPair::new(vec![0, 1], vec![2], 3).unwrap()).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn energy_examples() {
        let g = path(4);
        assert_eq!(energy(&g, &[0.3; 4]), 0.0);
        let e = WeightedGraph::from_edges(2, &[(0, 1, 1.7)]).unwrap();
        assert_eq!(energy(&e, &[1.0, 0.0]), 1.7);
    }

    #[test]
    fn extension_examples() {
        let cloud = PointCloud::from_scalars(&[0.0, 0.5, 1.0]).unwrap();
        let sol = VoltageSolution {
            values: vec![1.0, 0.25, 0.0],
            iterations: 0,
            residual: 0.0,
            residual_history: vec![],
        };
        let k = Kernel::radial(0.1).unwrap();
        let src = Ball::new(vec![0.0], 0.05).unwrap();
        let snk = Ball::new(vec![1.0], 0.05).unwrap();
        assert_eq!(
            extend_voltage(&cloud, &k, &sol, &src, &snk, &[0.01]).unwrap(),
            1.0
        );
        assert_eq!(
            extend_voltage(&cloud, &k, &sol, &src, &snk, &[0.99]).unwrap(),
            0.0
        );
        assert_eq!(
            extend_voltage(&cloud, &k, &sol, &src, &snk, &[0.45]).unwrap(),
            0.25
        );
        assert!(matches!(
            extend_voltage(&cloud, &k, &sol, &src, &snk, &[0.25]),
            Err(Error::IsolatedPoint(_))
        ));
    }

    #[test]
    fn csv_dump_has_one_row_per_node() {
        let cloud = PointCloud::from_rows(&[[0.0, 1.0], [2.0, 3.0]]).unwrap();
        let sol = VoltageSolution {
            values: vec![1.0, 0.0],
            iterations: 0,
            residual: 0.0,
            residual_history: vec![],
        };
        let text = voltage_csv(&cloud, &sol);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "node_index,x0,x1,voltage");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("1,2.0"));
    }
}
