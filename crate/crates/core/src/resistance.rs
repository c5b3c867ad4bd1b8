//! Effective resistance between nodes and between node sets.
//!
//! Set-to-set resistance is computed by eliminating the interior nodes from
//! the Laplacian (a Schur complement) and reading off the conductance between
//! the two boundary sets. Pairwise resistance uses a dense pseudoinverse on
//! small graphs and a grounded sparse factorization otherwise.

use std::collections::BTreeMap;

use faer::Mat;
use log::warn;

use crate::error::{invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{dense_spd_solve, symmetric_pinv, SpdFactor};
use crate::sparse::{dense_to_text, CsrMatrix};

/// Graphs up to this many nodes use the dense pseudoinverse.
pub const DENSE_LIMIT: usize = 2000;

/// Source and sink node sets, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionPair {
    source: Vec<usize>,
    sink: Vec<usize>,
}

impl RegionPair {
    /// Checks that both sets are non-empty, disjoint and below `n`.
    pub fn new(source: Vec<usize>, sink: Vec<usize>, n: usize) -> Result<Self> {
        let source = normalize_set(source, n, "source")?;
        let sink = normalize_set(sink, n, "sink")?;
        if let Some(i) = first_common(&source, &sink) {
            return Err(invalid(format!("node {i} is in both source and sink")));
        }
        Ok(Self { source, sink })
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn sink(&self) -> &[usize] {
        &self.sink
    }

    /// The same pair with source and sink exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            source: self.sink.clone(),
            sink: self.source.clone(),
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        let max = self
            .source
            .last()
            .max(self.sink.last())
            .copied()
            .unwrap_or(0);
        if max >= n {
            return Err(invalid(format!(
                "region node {max} out of range for {n} nodes"
            )));
        }
        Ok(())
    }
}

fn normalize_set(mut set: Vec<usize>, n: usize, what: &str) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(invalid(format!("{what} set is empty")));
    }
    set.sort_unstable();
    set.dedup();
    if let Some(&i) = set.last().filter(|&&i| i >= n) {
        return Err(invalid(format!(
            "{what} node {i} out of range for {n} nodes"
        )));
    }
    Ok(set)
}

fn first_common(a: &[usize], b: &[usize]) -> Option<usize> {
    let (mut p, mut q) = (0, 0);
    while p < a.len() && q < b.len() {
        match a[p].cmp(&b[q]) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => return Some(a[p]),
        }
    }
    None
}

enum Backend {
    Dense(Mat<f64>),
    /// One node per component is grounded; `pos` maps nodes to rows of the
    /// factored system, with `None` for the grounded nodes.
    Grounded {
        factor: Box<SpdFactor>,
        pos: Vec<Option<usize>>,
    },
}

/// Precomputed state answering many pairwise resistance queries on one graph.
pub struct PairwiseResistance {
    component: Vec<usize>,
    backend: Backend,
}

impl std::fmt::Debug for PairwiseResistance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.backend {
            Backend::Dense(_) => "dense",
            Backend::Grounded { .. } => "grounded",
        };
        f.debug_struct("PairwiseResistance")
            .field("nodes", &self.component.len())
            .field("backend", &kind)
            .finish()
    }
}

impl PairwiseResistance {
    pub fn new(graph: &WeightedGraph) -> Result<Self> {
        let n = graph.len();
        let component = graph.components();
        let ncomp = component.iter().max().map_or(0, |c| c + 1);
        let backend = if n <= DENSE_LIMIT {
            Backend::Dense(symmetric_pinv(&graph.laplacian().to_dense(), ncomp)?)
        } else {
            // ground the first node of every component
            let mut grounded = vec![false; ncomp];
            let mut pos = vec![None; n];
            let mut keep = Vec::with_capacity(n - ncomp);
            for i in 0..n {
                if grounded[component[i]] {
                    pos[i] = Some(keep.len());
                    keep.push(i);
                } else {
                    grounded[component[i]] = true;
                }
            }
            let factor = Box::new(SpdFactor::laplacian_block(graph, &keep)?);
            Backend::Grounded { factor, pos }
        };
        Ok(Self { component, backend })
    }

    pub fn len(&self) -> usize {
        self.component.len()
    }

    pub fn is_empty(&self) -> bool {
        self.component.is_empty()
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.len();
        if i >= n || j >= n {
            return Err(invalid(format!(
                "node pair ({i}, {j}) out of range for {n} nodes"
            )));
        }
        if i == j {
            return Err(invalid(format!(
                "effective resistance needs two distinct nodes, got {i} twice"
            )));
        }
        if self.component[i] != self.component[j] {
            return Err(Error::NoPath(format!(
                "nodes {i} and {j} are in different components"
            )));
        }
        Ok(())
    }

    /// `(e_i - e_j)^T L^+ (e_i - e_j)`.
    pub fn resistance(&self, i: usize, j: usize) -> Result<f64> {
        Ok(self.resistances(&[(i, j)])?[0])
    }

    /// Resistances for several pairs, solving all right-hand sides at once on
    /// the sparse path.
    pub fn resistances(&self, pairs: &[(usize, usize)]) -> Result<Vec<f64>> {
        for &(i, j) in pairs {
            self.check_pair(i, j)?;
        }
        match &self.backend {
            Backend::Dense(p) => Ok(pairs
                .iter()
                .map(|&(i, j)| p[(i, i)] + p[(j, j)] - p[(i, j)] - p[(j, i)])
                .collect()),
            Backend::Grounded { factor, pos } => {
                let mut rhs = Mat::<f64>::zeros(factor.dim(), pairs.len());
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if let Some(p) = pos[i] {
                        rhs[(p, k)] += 1.0;
                    }
                    if let Some(p) = pos[j] {
                        rhs[(p, k)] -= 1.0;
                    }
                }
                factor.solve_in_place(rhs.as_mut());
                let at = |node: usize, k: usize| pos[node].map_or(0.0, |p| rhs[(p, k)]);
                Ok(pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &(i, j))| at(i, k) - at(j, k))
                    .collect())
            }
        }
    }
}

/// Effective resistance between nodes `i` and `j`.
pub fn pairwise_er(graph: &WeightedGraph, i: usize, j: usize) -> Result<f64> {
    let n = graph.len();
    if i >= n || j >= n {
        return Err(invalid(format!(
            "node pair ({i}, {j}) out of range for {n} nodes"
        )));
    }
    if i == j {
        return Err(invalid(format!(
            "effective resistance needs two distinct nodes, got {i} twice"
        )));
    }
    // only the component holding i matters
    let reach = graph.reachable_from(&[i]);
    if !reach[j] {
        return Err(Error::NoPath(format!(
            "nodes {i} and {j} are in different components"
        )));
    }
    let nodes: Vec<usize> = (0..n).filter(|&k| reach[k]).collect();
    let local = |k: usize| nodes.binary_search(&k).unwrap();
    let sub = graph.subgraph(&nodes);
    PairwiseResistance::new(&sub)?.resistance(local(i), local(j))
}

/// `A - B D^{-1} C` where `D` is the principal block on `eliminate` and the
/// kept indices appear in ascending order.
pub fn schur_complement(matrix: &Mat<f64>, eliminate: &[usize]) -> Result<Mat<f64>> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(invalid("schur complement needs a square matrix"));
    }
    let mut drop = vec![false; n];
    for &e in eliminate {
        if e >= n {
            return Err(invalid(format!("index {e} out of range for dimension {n}")));
        }
        drop[e] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&i| !drop[i]).collect();
    let elim: Vec<usize> = (0..n).filter(|&i| drop[i]).collect();
    let a = Mat::from_fn(keep.len(), keep.len(), |p, q| matrix[(keep[p], keep[q])]);
    if elim.is_empty() {
        return Ok(a);
    }
    let b = Mat::from_fn(keep.len(), elim.len(), |p, q| matrix[(keep[p], elim[q])]);
    let c = Mat::from_fn(elim.len(), keep.len(), |p, q| matrix[(elim[p], keep[q])]);
    let d = Mat::from_fn(elim.len(), elim.len(), |p, q| matrix[(elim[p], elim[q])]);
    let dinv_c = dense_spd_solve(&d, &c).map_err(|e| match e {
        Error::SingularBlock { .. } => Error::SingularBlock { size: elim.len() },
        other => other,
    })?;
    Ok(&a - &b * &dinv_c)
}

/// Effective resistance between the source and sink sets of `regions`.
///
/// Interior nodes with no path to either set are dropped with a warning.
pub fn set_er(graph: &WeightedGraph, regions: &RegionPair) -> Result<f64> {
    let n = graph.len();
    regions.check_len(n)?;
    let (a, b) = (regions.source(), regions.sink());
    let reach_a = graph.reachable_from(a);
    if !b.iter().any(|&j| reach_a[j]) {
        return Err(Error::NoPath("no path between source and sink".into()));
    }
    let reach = graph.reachable_from(&[a, b].concat());
    let mut role = vec![Role::Interior; n];
    for &i in a {
        role[i] = Role::Source;
    }
    for &i in b {
        role[i] = Role::Sink;
    }
    let mut interior = Vec::new();
    let mut dropped = 0usize;
    for i in 0..n {
        if role[i] == Role::Interior {
            if reach[i] {
                interior.push(i);
            } else {
                dropped += 1;
            }
        }
    }
    if dropped > 0 {
        warn!("dropping {dropped} interior nodes with no path to source or sink");
    }

    // e_A^T L_kk e_A: total weight leaving A to nodes outside it
    let mut in_a = vec![false; n];
    for &i in a {
        in_a[i] = true;
    }
    let boundary_term: f64 = a
        .iter()
        .map(|&i| {
            graph
                .neighbors(i)
                .filter(|&(j, _)| !in_a[j])
                .map(|(_, w)| w)
                .sum::<f64>()
        })
        .sum();
    if interior.is_empty() {
        return Ok(1.0 / boundary_term);
    }
    // L_ca e_A = -(weight from each interior node into A)
    let rhs: Vec<f64> = interior
        .iter()
        .map(|&c| {
            -graph
                .neighbors(c)
                .filter(|&(j, _)| in_a[j])
                .map(|(_, w)| w)
                .sum::<f64>()
        })
        .collect();
    let factor = SpdFactor::laplacian_block(graph, &interior)?;
    let y = factor.solve(&rhs);
    let correction: f64 = rhs.iter().zip(&y).map(|(r, v)| r * v).sum();
    let conductance = boundary_term - correction;
    if conductance.is_nan() || conductance <= 0.0 {
        return Err(Error::NoPath(format!(
            "source-to-sink conductance is not positive ({conductance:e})"
        )));
    }
    Ok(1.0 / conductance)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Source,
    Sink,
    Interior,
}

/// Graph in which each of several disjoint node sets is merged into a single
/// node. Aggregated nodes come first, in the order the sets were given,
/// followed by the remaining nodes in ascending original order.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    graph: WeightedGraph,
    set_count: usize,
    node_map: Vec<usize>,
}

impl ReducedGraph {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    /// Row of the aggregated node for set `p`.
    pub fn set_index(&self, p: usize) -> usize {
        assert!(p < self.set_count, "set {p} out of range");
        p
    }

    pub fn set_count(&self) -> usize {
        self.set_count
    }

    /// Row holding original node `i` (its aggregate if it belongs to a set).
    pub fn row_of(&self, i: usize) -> usize {
        self.node_map[i]
    }

    /// `P^T L P`.
    pub fn laplacian(&self) -> CsrMatrix {
        self.graph.laplacian()
    }

    pub fn aggregated_degree(&self, p: usize) -> f64 {
        self.graph.degree(self.set_index(p))
    }

    /// Pairwise resistance between the aggregated nodes of sets `p` and `q`.
    pub fn resistance(&self, p: usize, q: usize) -> Result<f64> {
        pairwise_er(&self.graph, self.set_index(p), self.set_index(q))
    }

    /// Dense text rendering of the reduced Laplacian.
    pub fn laplacian_text(&self) -> String {
        dense_to_text(&self.laplacian().to_dense())
    }
}

/// Merges each set in `sets` into one node; weights between merged nodes and
/// the rest are sums of member weights and internal edges vanish.
pub fn reduce_graph(graph: &WeightedGraph, sets: &[Vec<usize>]) -> Result<ReducedGraph> {
    let n = graph.len();
    let mut node_map = vec![usize::MAX; n];
    for (p, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(invalid(format!("set {p} is empty")));
        }
        for &i in set {
            if i >= n {
                return Err(invalid(format!("node {i} out of range for {n} nodes")));
            }
            if node_map[i] != usize::MAX && node_map[i] != p {
                return Err(invalid(format!(
                    "node {i} belongs to sets {} and {p}",
                    node_map[i]
                )));
            }
            node_map[i] = p;
        }
    }
    let mut next = sets.len();
    for slot in node_map.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let m = next;
    // accumulate each reduced edge once, keyed by (lo, hi)
    let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for i in 0..n {
        for (j, w) in graph.neighbors(i) {
            if j <= i {
                continue;
            }
            let (p, q) = (node_map[i], node_map[j]);
            if p == q {
                continue;
            }
            *acc.entry((p.min(q), p.max(q))).or_insert(0.0) += w;
        }
    }
    let mut upper: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    for ((p, q), w) in acc {
        upper[p].push((q, w));
    }
    let reduced = WeightedGraph::from_weights(CsrMatrix::from_upper_triangle(&upper))?;
    Ok(ReducedGraph {
        graph: reduced,
        set_count: sets.len(),
        node_map,
    })
}

/// `sum_{i in X} D_i - sum_{i != j in X} W_ij`, the degree of `set` once
/// merged into a single node.
pub fn aggregated_degree(graph: &WeightedGraph, set: &[usize]) -> Result<f64> {
    let n = graph.len();
    if set.is_empty() {
        return Err(invalid("aggregated degree of an empty set"));
    }
    let mut member = vec![false; n];
    for &i in set {
        if i >= n {
            return Err(invalid(format!("node {i} out of range for {n} nodes")));
        }
        member[i] = true;
    }
    let nodes: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
    let total: f64 = nodes.iter().map(|&i| graph.degree(i)).sum();
    let internal: f64 = nodes
        .iter()
        .map(|&i| {
            graph
                .neighbors(i)
                .filter(|&(j, _)| member[j])
                .map(|(_, w)| w)
                .sum::<f64>()
        })
        .sum();
    Ok(total - internal)
}

/// `1/deg_a + 1/deg_b`, the large-sample limit of pairwise resistance.
pub fn von_luxburg_limit(deg_a: f64, deg_b: f64) -> Result<f64> {
    for d in [deg_a, deg_b] {
        if !(d.is_finite() && d > 0.0) {
            return Err(invalid(format!(
                "degrees must be finite and positive, got {d}"
            )));
        }
    }
    Ok(1.0 / deg_a + 1.0 / deg_b)
}

/// Relative deviations `|R - eta| / R` summarised by their max and mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationStats {
    pub max_rel: f64,
    pub mean_rel: f64,
}

pub fn deviation_stats(resistances: &[f64], limits: &[f64]) -> Result<DeviationStats> {
    if resistances.len() != limits.len() {
        return Err(invalid(format!(
            "{} resistances but {} limits",
            resistances.len(),
            limits.len()
        )));
    }
    if resistances.is_empty() {
        return Err(invalid("deviation statistics need at least one pair"));
    }
    let mut max_rel = 0.0f64;
    let mut sum = 0.0;
    for (&r, &eta) in resistances.iter().zip(limits) {
        if !(r.is_finite() && r > 0.0) {
            return Err(invalid(format!("resistance must be positive, got {r}")));
        }
        let d = (r - eta).abs() / r;
        max_rel = max_rel.max(d);
        sum += d;
    }
    Ok(DeviationStats {
        max_rel,
        mean_rel: sum / resistances.len() as f64,
    })
}
