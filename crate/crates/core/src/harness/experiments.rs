//! The four convergence experiments as seeded sweeps over sample size.
//!
//! Sweep point `k` uses seed `base ^ k`, so points can run in parallel
//! without changing the output. Wall-clock times are recorded only when
//! `timing` is set; otherwise `wall_ms` is 0 and the records are
//! byte-reproducible.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::datasets::{arc_point, generate, swiss_roll_point, Dataset, DatasetSpec};
use super::records::ExperimentRecord;
use super::regions::{ball_region, RegionSpec};
use crate::cover::{
    build_alpha_cover, cover_graph, cover_graph_region_er, estimate_density, AlphaCover,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{build_graph, ScalingMode, WeightedGraph};
use crate::kernel::{max_knn_distance, Kernel};
use crate::points::{LabelColumn, PointCloud};
use crate::resistance::{
    aggregated_degree, deviation_stats, set_er, von_luxburg_limit, PairwiseResistance, RegionPair,
};

/// Seed of sweep point `index`.
pub fn point_seed(base: u64, index: usize) -> u64 {
    base ^ index as u64
}

fn annotate<T>(experiment: &str, n: usize, seed: u64, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Experiment {
        experiment: experiment.to_string(),
        n,
        seed,
        source: Box::new(e),
    })
}

/// Runs `f` and returns its result with the elapsed milliseconds, or 0 when
/// timing is off.
fn timed<T>(timing: bool, f: impl FnOnce() -> T) -> (T, f64) {
    if timing {
        let start = Instant::now();
        let out = f();
        (out, start.elapsed().as_secs_f64() * 1e3)
    } else {
        (f(), 0.0)
    }
}

/// Runs `f(index, n)` over the sweep. Sequential sweeps still parallelize
/// inside each point; they exist for experiments whose points are too large
/// to hold in memory at once.
fn sweep<F>(sizes: &[usize], parallel: bool, f: F) -> Result<Vec<ExperimentRecord>>
where
    F: Fn(usize, usize) -> Result<Vec<ExperimentRecord>> + Sync,
{
    if sizes.is_empty() {
        return Err(invalid("the sweep has no sample sizes"));
    }
    let parts: Vec<Vec<ExperimentRecord>> = if parallel {
        sizes
            .par_iter()
            .enumerate()
            .map(|(k, &n)| f(k, n))
            .collect::<Result<_>>()?
    } else {
        sizes
            .iter()
            .enumerate()
            .map(|(k, &n)| f(k, n))
            .collect::<Result<_>>()?
    };
    Ok(parts.into_iter().flatten().collect())
}

/// Bandwidth rule for the kernel of the Von Luxburg experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelFamily {
    /// Radius equal to the largest k-nn distance.
    #[default]
    Radial,
    /// Bandwidth equal to the largest k-nn distance.
    Gaussian,
    /// Symmetric k-nn relation.
    Knn,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VonLuxburgConfig {
    pub dim: usize,
    pub sizes: Vec<usize>,
    pub kernel: KernelFamily,
    /// `k = n / knn_divisor` unless `knn_k` is set.
    pub knn_divisor: usize,
    pub knn_k: Option<usize>,
    /// Source radius is the largest `source_knn`-nn distance.
    pub source_knn: usize,
    pub pairs: usize,
    pub region_pairs: usize,
    /// Subsample this point file instead of the uniform cube.
    pub points: Option<PathBuf>,
    pub seed: u64,
    pub timing: bool,
}

impl Default for VonLuxburgConfig {
    fn default() -> Self {
        Self {
            dim: 3,
            sizes: vec![500, 1000, 2000, 5000],
            kernel: KernelFamily::Radial,
            knn_divisor: 100,
            knn_k: None,
            source_knn: 20,
            pairs: 50,
            region_pairs: 50,
            points: None,
            seed: 0,
            timing: false,
        }
    }
}

/// Resistances and Von Luxburg limits for node pairs.
pub fn standard_er_branch(
    graph: &WeightedGraph,
    pairs: &[(usize, usize)],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let solver = PairwiseResistance::new(graph)?;
    let r = solver.resistances(pairs)?;
    let eta = pairs
        .iter()
        .map(|&(i, j)| von_luxburg_limit(graph.degree(i), graph.degree(j)))
        .collect::<Result<_>>()?;
    Ok((r, eta))
}

/// Set resistances and aggregated-degree limits for region pairs.
pub fn region_er_branch(
    graph: &WeightedGraph,
    pairs: &[RegionPair],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut r = Vec::with_capacity(pairs.len());
    let mut eta = Vec::with_capacity(pairs.len());
    for p in pairs {
        r.push(set_er(graph, p)?);
        eta.push(von_luxburg_limit(
            aggregated_degree(graph, p.source())?,
            aggregated_degree(graph, p.sink())?,
        )?);
    }
    Ok((r, eta))
}

fn sample_node_pairs(
    graph: &WeightedGraph,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(usize, usize)>> {
    let n = graph.len();
    let comp = graph.components();
    let mut pairs = Vec::with_capacity(count);
    let mut attempts = 0;
    while pairs.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::NoPath(format!(
                "could not find {count} connected node pairs"
            )));
        }
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i != j && comp[i] == comp[j] && graph.degree(i) > 0.0 {
            pairs.push((i, j));
        }
    }
    Ok(pairs)
}

fn sample_region_pairs(
    cloud: &PointCloud,
    graph: &WeightedGraph,
    radius: f64,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<RegionPair>> {
    let n = cloud.len();
    let comp = graph.components();
    let mut pairs = Vec::with_capacity(count);
    let mut attempts = 0;
    while pairs.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::NoPath(format!(
                "could not find {count} disjoint connected region pairs"
            )));
        }
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i == j || comp[i] != comp[j] {
            continue;
        }
        let a = ball_region(cloud, &RegionSpec::new(cloud.point(i).to_vec(), radius)?)?;
        let b = ball_region(cloud, &RegionSpec::new(cloud.point(j).to_vec(), radius)?)?;
        let Ok(pair) = RegionPair::new(a, b, n) else {
            continue;
        };
        if aggregated_degree(graph, pair.source())? > 0.0
            && aggregated_degree(graph, pair.sink())? > 0.0
        {
            pairs.push(pair);
        }
    }
    Ok(pairs)
}

fn vonluxburg_cloud(cfg: &VonLuxburgConfig, n: usize, seed: u64) -> Result<PointCloud> {
    match &cfg.points {
        None => generate(&DatasetSpec::new(
            Dataset::UniformCube { dim: cfg.dim, n },
            seed,
        )),
        Some(path) => {
            let all = PointCloud::load(path, LabelColumn::Auto)?;
            if n > all.len() {
                return Err(invalid(format!(
                    "sweep size {n} exceeds the {} points in {}",
                    all.len(),
                    path.display()
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(all.select(&sample_indices(&mut rng, all.len(), n).into_vec()))
        }
    }
}

/// Relative deviation of standard and region-based resistance from the Von
/// Luxburg limit, on the unscaled and the pointwise-scaled graph respectively.
pub fn run_vonluxburg(cfg: &VonLuxburgConfig) -> Result<Vec<ExperimentRecord>> {
    const NAME: &str = "vonluxburg";
    if cfg.knn_divisor == 0 {
        return Err(invalid("knn_divisor must be at least 1"));
    }
    sweep(&cfg.sizes, true, |index, n| {
        let seed = point_seed(cfg.seed, index);
        annotate(
            NAME,
            n,
            seed,
            (|| {
                let cloud = vonluxburg_cloud(cfg, n, seed)?;
                let k = cfg.knn_k.unwrap_or((n / cfg.knn_divisor).max(1));
                let kernel = match cfg.kernel {
                    KernelFamily::Radial => Kernel::radial(max_knn_distance(&cloud, k)?)?,
                    KernelFamily::Gaussian => Kernel::gaussian(max_knn_distance(&cloud, k)?)?,
                    KernelFamily::Knn => Kernel::knn(k)?,
                };
                let graph = build_graph(&cloud, &kernel, &ScalingMode::None)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(1);
                let node_pairs = sample_node_pairs(&graph, cfg.pairs, &mut rng)?;
                let (out, std_ms) = timed(cfg.timing, || standard_er_branch(&graph, &node_pairs));
                let (r, eta) = out?;
                let std_stats = deviation_stats(&r, &eta)?;

                let pointwise = graph.scaled(1.0 / (n as f64 * n as f64))?;
                drop(graph);
                let source_radius = max_knn_distance(&cloud, cfg.source_knn)?;
                let region_pairs = sample_region_pairs(
                    &cloud,
                    &pointwise,
                    source_radius,
                    cfg.region_pairs,
                    &mut rng,
                )?;
                let (out, region_ms) =
                    timed(cfg.timing, || region_er_branch(&pointwise, &region_pairs));
                let (rs, etas) = out?;
                let region_stats = deviation_stats(&rs, &etas)?;

                let rec = |q: &str, v: f64, ms: f64| {
                    ExperimentRecord::new(NAME, n, q, v, seed).with_wall_ms(ms)
                };
                Ok(vec![
                    rec("std_max_rel_dev", std_stats.max_rel, std_ms),
                    rec("std_mean_rel_dev", std_stats.mean_rel, std_ms),
                    rec("region_max_rel_dev", region_stats.max_rel, region_ms),
                    rec("region_mean_rel_dev", region_stats.mean_rel, region_ms),
                ])
            })(),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HalfmoonConfig {
    pub moon_sizes: Vec<usize>,
    pub n_background: usize,
    pub t: f64,
    pub angle_range: (f64, f64),
    pub noise_sd: f64,
    pub radius: f64,
    pub source_radius: f64,
    /// Angles in degrees of the anchors i, j, k and p on the mean arc.
    pub anchor_angles: [f64; 4],
    pub seed: u64,
    pub timing: bool,
}

impl Default for HalfmoonConfig {
    fn default() -> Self {
        Self {
            moon_sizes: vec![1000, 2000, 4000, 8000, 16000],
            n_background: super::datasets::HALFMOON_BACKGROUND,
            t: super::datasets::HALFMOON_RADIUS,
            angle_range: super::datasets::HALFMOON_ANGLES,
            noise_sd: super::datasets::HALFMOON_NOISE_SD,
            radius: 0.08,
            source_radius: 0.05,
            anchor_angles: [0.0, 45.0, 90.0, 180.0],
            seed: 0,
            timing: false,
        }
    }
}

impl HalfmoonConfig {
    /// Arc-length ratios `d(i, j) / d(i, p)` and `d(i, k) / d(i, p)`.
    pub fn targets(&self) -> (f64, f64) {
        let [i, j, k, p] = self.anchor_angles;
        ((j - i) / (p - i), (k - i) / (p - i))
    }
}

/// Resolves each named region to its node set, failing on an empty one.
fn anchor_sets(cloud: &PointCloud, anchors: &[(String, RegionSpec)]) -> Result<Vec<Vec<usize>>> {
    anchors
        .iter()
        .map(|(name, spec)| {
            let set = ball_region(cloud, spec)?;
            if set.is_empty() {
                Err(Error::EmptyRegion(name.clone()))
            } else {
                Ok(set)
            }
        })
        .collect()
}

/// Set resistance from anchor 0 to each later anchor, timed per solve.
fn resistances_from_first(
    graph: &WeightedGraph,
    sets: &[Vec<usize>],
    timing: bool,
) -> Result<Vec<(f64, f64)>> {
    sets[1..]
        .iter()
        .map(|b| {
            let pair = RegionPair::new(sets[0].clone(), b.clone(), graph.len())?;
            let (r, ms) = timed(timing, || set_er(graph, &pair));
            Ok((r?, ms))
        })
        .collect()
}

/// Resistance ratios between anchors on a half-moon of growing density.
pub fn run_halfmoon(cfg: &HalfmoonConfig) -> Result<Vec<ExperimentRecord>> {
    const NAME: &str = "halfmoon";
    let anchors: Vec<(String, RegionSpec)> = ["i", "j", "k", "p"]
        .iter()
        .zip(cfg.anchor_angles)
        .map(|(name, theta)| {
            Ok((
                format!("anchor {name} at {theta} degrees"),
                RegionSpec::new(arc_point(cfg.t, theta).to_vec(), cfg.source_radius)?,
            ))
        })
        .collect::<Result<_>>()?;
    let kernel = Kernel::radial(cfg.radius)?;
    sweep(&cfg.moon_sizes, false, |index, n_moon| {
        let seed = point_seed(cfg.seed, index);
        annotate(
            NAME,
            n_moon,
            seed,
            (|| {
                let dataset = Dataset::Halfmoon {
                    n_background: cfg.n_background,
                    n_moon,
                    t: cfg.t,
                    angle_range: cfg.angle_range,
                    noise_sd: cfg.noise_sd,
                };
                let cloud = generate(&DatasetSpec::new(dataset, seed))?;
                let sets = anchor_sets(&cloud, &anchors)?;
                let graph = build_graph(&cloud, &kernel, &ScalingMode::Pointwise)?;
                drop(cloud);
                let r = resistances_from_first(&graph, &sets, cfg.timing)?;
                let (ij, ik, ip) = (r[0], r[1], r[2]);
                let rec = |q: &str, v: f64, ms: f64| {
                    ExperimentRecord::new(NAME, n_moon, q, v, seed).with_wall_ms(ms)
                };
                Ok(vec![
                    rec("R_s_ij", ij.0, ij.1),
                    rec("R_s_ik", ik.0, ik.1),
                    rec("R_s_ip", ip.0, ip.1),
                    rec("ratio_ij_ip", ij.0 / ip.0, 0.0),
                    rec("ratio_ik_ip", ik.0 / ip.0, 0.0),
                ])
            })(),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwissRollConfig {
    pub sizes: Vec<usize>,
    pub radius: f64,
    pub source_radius: f64,
    /// Roll parameters of the anchors, in multiples of pi.
    pub anchor_t_over_pi: Vec<f64>,
    pub anchor_height: f64,
    pub seed: u64,
    pub timing: bool,
}

impl Default for SwissRollConfig {
    fn default() -> Self {
        Self {
            sizes: vec![1000, 2000, 4000, 8000],
            radius: 0.2,
            source_radius: 0.1,
            anchor_t_over_pi: vec![2.0, 2.5, 3.0, 3.5, 4.0],
            anchor_height: 10.5,
            seed: 0,
            timing: false,
        }
    }
}

/// Set resistance from the first swiss-roll anchor to each of the others.
pub fn run_swissroll(cfg: &SwissRollConfig) -> Result<Vec<ExperimentRecord>> {
    const NAME: &str = "swissroll";
    if cfg.anchor_t_over_pi.len() < 2 {
        return Err(invalid("the swiss roll needs at least two anchors"));
    }
    let anchors: Vec<(String, RegionSpec)> = cfg
        .anchor_t_over_pi
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            Ok((
                format!("anchor {} at t = {t} pi", k + 1),
                RegionSpec::new(
                    swiss_roll_point(t * PI, cfg.anchor_height).to_vec(),
                    cfg.source_radius,
                )?,
            ))
        })
        .collect::<Result<_>>()?;
    let kernel = Kernel::radial(cfg.radius)?;
    sweep(&cfg.sizes, true, |index, n| {
        let seed = point_seed(cfg.seed, index);
        annotate(
            NAME,
            n,
            seed,
            (|| {
                let cloud = generate(&DatasetSpec::new(Dataset::SwissRoll { n }, seed))?;
                let sets = anchor_sets(&cloud, &anchors)?;
                let graph = build_graph(&cloud, &kernel, &ScalingMode::Pointwise)?;
                let r = resistances_from_first(&graph, &sets, cfg.timing)?;
                Ok(r.iter()
                    .enumerate()
                    .map(|(k, &(v, ms))| {
                        ExperimentRecord::new(NAME, n, format!("R_s_1{}", k + 2), v, seed)
                            .with_wall_ms(ms)
                    })
                    .collect())
            })(),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverCompareConfig {
    pub alpha: f64,
    /// Prefix lengths of the density sample used to estimate cell weights;
    /// the cover is built on the longest prefix.
    pub gamma_sizes: Vec<usize>,
    /// Sample sizes of the dense pointwise-scaled graph.
    pub dense_sizes: Vec<usize>,
    pub radius: f64,
    pub source_radius: f64,
    pub anchors: Vec<f64>,
    pub seed: u64,
    pub timing: bool,
}

impl Default for CoverCompareConfig {
    fn default() -> Self {
        Self {
            alpha: 2.0 / 3.0 * 3f64.powi(-6),
            gamma_sizes: vec![1000, 2000, 5000, 10000, 21122],
            dense_sizes: vec![500, 1000, 2000, 4000],
            radius: 0.1,
            source_radius: 0.1,
            anchors: vec![0.05, 0.275, 0.5, 0.725, 0.95],
            seed: 0,
            timing: false,
        }
    }
}

/// Region resistances on the two-bump density, from dense pointwise-scaled
/// graphs and from a fixed α-cover with estimated cell weights.
///
/// Dense records are named `dense_R_s_1j` and indexed by sample size; cover
/// records are named `cover_R_s_1j` and indexed by the number of samples used
/// for the cell weights. One `cover_centers` record gives the cover size.
pub fn run_cover_compare(cfg: &CoverCompareConfig) -> Result<Vec<ExperimentRecord>> {
    const NAME: &str = "cover_compare";
    if cfg.anchors.len() < 2 {
        return Err(invalid("cover comparison needs at least two anchors"));
    }
    let anchors: Vec<(String, RegionSpec)> = cfg
        .anchors
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            Ok((
                format!("anchor {} at {x}", k + 1),
                RegionSpec::new(vec![x], cfg.source_radius)?,
            ))
        })
        .collect::<Result<_>>()?;
    let kernel = Kernel::radial(cfg.radius)?;

    let mut records = sweep(&cfg.dense_sizes, true, |index, n| {
        let seed = point_seed(cfg.seed, index);
        annotate(
            NAME,
            n,
            seed,
            (|| {
                let cloud = generate(&DatasetSpec::new(Dataset::TwoBump1d { n }, seed))?;
                let sets = anchor_sets(&cloud, &anchors)?;
                let graph = build_graph(&cloud, &kernel, &ScalingMode::Pointwise)?;
                let r = resistances_from_first(&graph, &sets, cfg.timing)?;
                Ok(r.iter()
                    .enumerate()
                    .map(|(k, &(v, ms))| {
                        ExperimentRecord::new(NAME, n, format!("dense_R_s_1{}", k + 2), v, seed)
                            .with_wall_ms(ms)
                    })
                    .collect())
            })(),
        )
    })?;

    let full = *cfg
        .gamma_sizes
        .iter()
        .max()
        .ok_or_else(|| invalid("the cover sweep has no sample sizes"))?;
    let seed = point_seed(cfg.seed, cfg.dense_sizes.len());
    let cover_records = annotate(
        NAME,
        full,
        seed,
        (|| {
            let sample = generate(&DatasetSpec::new(Dataset::TwoBump1d { n: full }, seed))?;
            let cover = build_alpha_cover(&sample, cfg.alpha)?;
            let mut out = vec![ExperimentRecord::new(
                NAME,
                full,
                "cover_centers",
                cover.len() as f64,
                seed,
            )];
            let mut sizes = cfg.gamma_sizes.clone();
            sizes.sort_unstable();
            sizes.dedup();
            for m in sizes {
                let prefix: Vec<usize> = (0..m).collect();
                out.extend(cover_point(
                    cfg,
                    &cover,
                    &sample.select(&prefix),
                    &anchors,
                    &kernel,
                    m,
                    seed,
                )?);
            }
            Ok(out)
        })(),
    )?;
    records.extend(cover_records);
    Ok(records)
}

fn cover_point(
    cfg: &CoverCompareConfig,
    cover: &AlphaCover,
    sample: &PointCloud,
    anchors: &[(String, RegionSpec)],
    kernel: &Kernel,
    m: usize,
    seed: u64,
) -> Result<Vec<ExperimentRecord>> {
    let weights = estimate_density(cover, sample)?;
    let graph = cover_graph(cover, &weights, kernel)?;
    let (name0, spec0) = &anchors[0];
    let source = spec0.ball();
    anchors[1..]
        .iter()
        .enumerate()
        .map(|(k, (name, spec))| {
            let sink = spec.ball();
            let (r, ms) = timed(cfg.timing, || {
                cover_graph_region_er(cover, &graph, (name0, &source), (name, &sink))
            });
            Ok(ExperimentRecord::new(
                "cover_compare",
                m,
                format!("cover_R_s_1{}", k + 2),
                r?,
                seed,
            )
            .with_wall_ms(ms))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_size_sweep_emits_four_quantities() {
        let cfg = VonLuxburgConfig {
            sizes: vec![300],
            pairs: 5,
            region_pairs: 3,
            ..Default::default()
        };
        let records = run_vonluxburg(&cfg).unwrap();
        assert_eq!(records.len(), 4);
        assert!(records
            .iter()
            .all(|r| r.value.is_finite() && r.value >= 0.0 && r.wall_ms == 0.0));
    }

    #[test]
    fn complete_graph_matches_its_limit() {
        let n = 40;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j, 1.0));
            }
        }
        let g = WeightedGraph::from_edges(n, &edges).unwrap();
        let pairs = [(0, 1), (5, 39), (17, 3)];
        let (r, eta) = standard_er_branch(&g, &pairs).unwrap();
        for (r, eta) in r.iter().zip(&eta) {
            assert!((r - 2.0 / n as f64).abs() < 1e-12);
            assert!((eta - 2.0 / (n - 1) as f64).abs() < 1e-15);
            assert!((r - eta).abs() / eta <= 2.0 / (n - 1) as f64);
        }
    }

    #[test]
    fn halfmoon_targets() {
        assert_eq!(HalfmoonConfig::default().targets(), (0.25, 0.5));
    }

    #[test]
    fn empty_anchor_region_is_named() {
        let cfg = HalfmoonConfig {
            moon_sizes: vec![20],
            n_background: 0,
            source_radius: 1e-6,
            ..Default::default()
        };
        match run_halfmoon(&cfg) {
            Err(Error::Experiment { source, .. }) => {
                assert!(
                    matches!(*source, Error::EmptyRegion(ref name) if name.contains("anchor i"))
                )
            }
            other => panic!("expected an empty region, got {other:?}"),
        }
    }

    #[test]
    fn small_swissroll_sweep_is_ordered() {
        let cfg = SwissRollConfig {
            sizes: vec![1500],
            ..Default::default()
        };
        let records = run_swissroll(&cfg).unwrap();
        let v: Vec<f64> = records.iter().map(|r| r.value).collect();
        assert_eq!(v.len(), 4);
        assert!(v.windows(2).all(|w| w[0] < w[1]), "{v:?}");
    }
}
