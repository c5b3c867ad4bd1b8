//! α-covers of a sample, their Voronoi cells and the density-weighted
//! resistor graph built on the cover centers.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::{build_graph, ScalingMode, WeightedGraph};
use crate::kernel::Kernel;
use crate::points::PointCloud;
use crate::resistance::{set_er, RegionPair};
use crate::voltage::Region;

/// Centers at pairwise distance at least `alpha` such that every input point
/// lies within `alpha` of one of them.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCover {
    centers: PointCloud,
    alpha: f64,
    source_index: Vec<usize>,
}

impl AlphaCover {
    pub fn centers(&self) -> &PointCloud {
        &self.centers
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Index in the input cloud of each center.
    pub fn source_index(&self) -> &[usize] {
        &self.source_index
    }

    fn nearest(&self, x: &[f64]) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for c in 0..self.centers.len() {
            let d = self.centers.distance_to(c, x);
            if d < best.1 {
                best = (c, d);
            }
        }
        best
    }
}

/// Greedy insertion in data order: a point becomes a center iff it is at
/// distance at least `alpha` from every center chosen so far.
pub fn build_alpha_cover(cloud: &PointCloud, alpha: f64) -> Result<AlphaCover> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(invalid(format!(
            "alpha must be finite and positive, got {alpha}"
        )));
    }
    if cloud.is_empty() {
        return Err(invalid("cannot cover an empty sample"));
    }
    let mut source_index: Vec<usize> = Vec::new();
    for i in 0..cloud.len() {
        let x = cloud.point(i);
        if source_index
            .iter()
            .all(|&c| cloud.distance_to(c, x) >= alpha)
        {
            source_index.push(i);
        }
    }
    Ok(AlphaCover {
        centers: cloud.select(&source_index),
        alpha,
        source_index,
    })
}

/// Nearest center of every point of `cloud`, ties to the lowest center index.
pub fn assign_voronoi(cover: &AlphaCover, cloud: &PointCloud) -> Result<Vec<usize>> {
    if cover.is_empty() {
        return Err(invalid("cover has no centers"));
    }
    if cloud.dim() != cover.centers.dim() {
        return Err(invalid(format!(
            "sample dimension {} differs from cover dimension {}",
            cloud.dim(),
            cover.centers.dim()
        )));
    }
    Ok((0..cloud.len())
        .into_par_iter()
        .map(|i| cover.nearest(cloud.point(i)).0)
        .collect())
}

/// Per-cell sample counts; `gamma_i = count_i / total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWeights {
    counts: Vec<u64>,
    total: u64,
}

impl DensityWeights {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        let total = counts.iter().sum();
        if total == 0 {
            return Err(invalid("density weights need at least one sample"));
        }
        Ok(Self { counts, total })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn gamma(&self) -> Vec<f64> {
        let n = self.total as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// Adds the counts of a disjoint sample over the same cover.
    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if self.counts.len() != other.counts.len() {
            return Err(invalid(format!(
                "cannot merge weights over {} and {} cells",
                self.counts.len(),
                other.counts.len()
            )));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }
}

/// Fraction of `sample` falling in each Voronoi cell of the cover.
pub fn estimate_density(cover: &AlphaCover, sample: &PointCloud) -> Result<DensityWeights> {
    if sample.is_empty() {
        return Err(invalid("density estimation needs a non-empty sample"));
    }
    let mut counts = vec![0u64; cover.len()];
    for c in assign_voronoi(cover, sample)? {
        counts[c] += 1;
    }
    DensityWeights::from_counts(counts)
}

/// Resistor graph on the centers with `W_ij = gamma_i gamma_j k(c_i, c_j)`.
pub fn cover_graph(
    cover: &AlphaCover,
    weights: &DensityWeights,
    kernel: &Kernel,
) -> Result<WeightedGraph> {
    if weights.counts.len() != cover.len() {
        return Err(invalid(format!(
            "{} density weights for {} centers",
            weights.counts.len(),
            cover.len()
        )));
    }
    build_graph(
        &cover.centers,
        kernel,
        &ScalingMode::Regionwise(weights.gamma()),
    )
}

/// Centers lying in `region`.
pub fn centers_in(cover: &AlphaCover, region: &dyn Region) -> Vec<usize> {
    (0..cover.len())
        .filter(|&c| region.contains(cover.centers.point(c)))
        .collect()
}

/// Region-based resistance between the centers inside `source` and those
/// inside `sink`, on the cover resistor graph.
pub fn cover_region_er(
    cover: &AlphaCover,
    weights: &DensityWeights,
    kernel: &Kernel,
    source: &dyn Region,
    sink: &dyn Region,
) -> Result<f64> {
    let graph = cover_graph(cover, weights, kernel)?;
    cover_graph_region_er(cover, &graph, ("source", source), ("sink", sink))
}

/// As [`cover_region_er`] on a prebuilt cover graph, with region names used in
/// error messages.
pub fn cover_graph_region_er(
    cover: &AlphaCover,
    graph: &WeightedGraph,
    source: (&str, &dyn Region),
    sink: (&str, &dyn Region),
) -> Result<f64> {
    let s = centers_in(cover, source.1);
    if s.is_empty() {
        return Err(Error::EmptyRegion(source.0.to_string()));
    }
    let g = centers_in(cover, sink.1);
    if g.is_empty() {
        return Err(Error::EmptyRegion(sink.0.to_string()));
    }
    set_er(graph, &RegionPair::new(s, g, cover.len())?)
}

/// CSV dump with columns `center_index`, one per coordinate, `gamma` and
/// `cell_count`.
pub fn cover_csv(cover: &AlphaCover, weights: &DensityWeights) -> String {
    let mut out = String::from("center_index");
    for d in 0..cover.centers.dim() {
        let _ = write!(out, ",x{d}");
    }
    out.push_str(",gamma,cell_count\n");
    let gamma = weights.gamma();
    for (i, p) in cover.centers.iter().enumerate() {
        let _ = write!(out, "{i}");
        for c in p {
            let _ = write!(out, ",{c:.17e}");
        }
        let _ = writeln!(out, ",{:.17e},{}", gamma[i], weights.counts[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voltage::Ball;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::from_scalars(xs).unwrap()
    }

    #[test]
    fn greedy_cover_examples() {
        let c = line(&[0.0, 0.5, 1.0]);
        let cover = build_alpha_cover(&c, 0.4).unwrap();
        assert_eq!(cover.source_index(), &[0, 1, 2]);
        let cover = build_alpha_cover(&c, 0.6).unwrap();
        assert_eq!(cover.source_index(), &[0, 2]);
        assert_eq!(assign_voronoi(&cover, &c).unwrap(), vec![0, 0, 1]);
        assert!(build_alpha_cover(&c, 0.0).is_err());
    }

    #[test]
    fn voronoi_ties_go_to_lower_index() {
        let cover = build_alpha_cover(&line(&[0.0, 1.0]), 0.5).unwrap();
        let cells = assign_voronoi(&cover, &line(&[0.5, 1.0, 0.0])).unwrap();
        assert_eq!(cells, vec![0, 1, 0]);
    }

    #[test]
    fn density_examples() {
        let cover = build_alpha_cover(&line(&[0.0, 1.0]), 0.5).unwrap();
        let w = estimate_density(&cover, &line(&[0.1, -0.1, 0.9, 1.2])).unwrap();
        assert_eq!(w.gamma(), vec![0.5, 0.5]);
        let w = estimate_density(&cover, &line(&[0.1, 0.2, 0.3])).unwrap();
        assert_eq!(w.gamma(), vec![1.0, 0.0]);
        assert_eq!(w.total(), 3);
    }

    #[test]
    fn merged_counts_equal_batch_counts() {
        let cover = build_alpha_cover(&line(&[0.0, 0.5, 1.0]), 0.3).unwrap();
        let a = line(&[0.1, 0.4, 0.9]);
        let b = line(&[0.6, 0.55, 0.0, 1.0]);
        let mut w = estimate_density(&cover, &a).unwrap();
        w.merge(&estimate_density(&cover, &b).unwrap()).unwrap();
        let both = estimate_density(&cover, &a.concat(&b).unwrap()).unwrap();
        assert_eq!(w, both);
    }

    #[test]
    fn two_center_resistance() {
        let cover = build_alpha_cover(&line(&[0.0, 1.0]), 0.5).unwrap();
        let w = DensityWeights::from_counts(vec![1, 1]).unwrap();
        let k = Kernel::radial(2.0).unwrap();
        let src = Ball::new(vec![0.0], 0.1).unwrap();
        let snk = Ball::new(vec![1.0], 0.1).unwrap();
        assert_eq!(cover_region_er(&cover, &w, &k, &src, &snk).unwrap(), 4.0);
        let nowhere = Ball::new(vec![0.5], 0.1).unwrap();
        match cover_region_er(&cover, &w, &k, &src, &nowhere) {
            Err(Error::EmptyRegion(name)) => assert_eq!(name, "sink"),
            other => panic!("expected an empty region, got {other:?}"),
        }
    }

    #[test]
    fn csv_dump() {
        let cover = build_alpha_cover(&line(&[0.0, 1.0]), 0.5).unwrap();
        let w = DensityWeights::from_counts(vec![3, 1]).unwrap();
        let text = cover_csv(&cover, &w);
        assert_eq!(
            text.lines().next().unwrap(),
            "center_index,x0,gamma,cell_count"
        );
        assert!(text.lines().nth(2).unwrap().ends_with(",1"));
    }
}
