//! Kernel functions and nearest-neighbour helpers on point clouds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::points::PointCloud;
use crate::sparse::CsrMatrix;

/// Similarity kernel with values in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Kernel {
    /// Indicator of `distance <= radius`.
    Radial { radius: f64 },
    /// `exp(-distance^2 / (2 sigma^2))`.
    Gaussian { sigma: f64 },
    /// Symmetric κ-nearest-neighbour relation.
    Knn { kappa: usize },
}

impl Kernel {
    pub fn radial(radius: f64) -> Result<Self> {
        check_length("radial radius", radius)?;
        Ok(Kernel::Radial { radius })
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        check_length("gaussian sigma", sigma)?;
        Ok(Kernel::Gaussian { sigma })
    }

    pub fn knn(kappa: usize) -> Result<Self> {
        if kappa == 0 {
            return Err(invalid("knn kappa must be at least 1"));
        }
        Ok(Kernel::Knn { kappa })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Kernel::Radial { radius } => check_length("radial radius", radius),
            Kernel::Gaussian { sigma } => check_length("gaussian sigma", sigma),
            Kernel::Knn { kappa: 0 } => Err(invalid("knn kappa must be at least 1")),
            Kernel::Knn { .. } => Ok(()),
        }
    }

    /// Kernel value at the given distance. The knn kernel is not a function of
    /// distance alone and is rejected here.
    pub fn eval(&self, distance: f64) -> Result<f64> {
        if !distance.is_finite() || distance < 0.0 {
            return Err(invalid(format!(
                "kernel distance must be finite and non-negative, got {distance}"
            )));
        }
        self.validate()?;
        match *self {
            Kernel::Radial { radius } => Ok(if distance <= radius { 1.0 } else { 0.0 }),
            Kernel::Gaussian { sigma } => Ok((-distance * distance / (2.0 * sigma * sigma)).exp()),
            Kernel::Knn { .. } => Err(invalid(
                "the knn kernel has no pointwise value; use knn_adjacency",
            )),
        }
    }

    /// Unchecked evaluation for the distance-based variants.
    pub(crate) fn value(&self, distance: f64) -> f64 {
        match *self {
            Kernel::Radial { radius } => (distance <= radius) as u8 as f64,
            Kernel::Gaussian { sigma } => (-distance * distance / (2.0 * sigma * sigma)).exp(),
            Kernel::Knn { .. } => unreachable!("knn kernel evaluated pointwise"),
        }
    }
}

fn check_length(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "{what} must be finite and positive, got {v}"
        )))
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Radial { radius } => write!(f, "radial:{radius}"),
            Kernel::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
            Kernel::Knn { kappa } => write!(f, "knn:{kappa}"),
        }
    }
}

/// Parses `radial:R`, `gaussian:SIGMA` or `knn:KAPPA`.
impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("kernel `{s}` is not of the form kind:param")))?;
        let bad = || invalid(format!("bad kernel parameter in `{s}`"));
        match kind.trim() {
            "radial" => Kernel::radial(param.trim().parse().map_err(|_| bad())?),
            "gaussian" => Kernel::gaussian(param.trim().parse().map_err(|_| bad())?),
            "knn" => Kernel::knn(param.trim().parse().map_err(|_| bad())?),
            other => Err(invalid(format!("unknown kernel `{other}`"))),
        }
    }
}

fn by_distance_then_index(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// The `k` nearest neighbours of point `i` (self excluded), closest first,
/// ties broken by lower index.
pub fn nearest_neighbors(cloud: &PointCloud, i: usize, k: usize) -> Vec<(f64, usize)> {
    let mut d: Vec<(f64, usize)> = (0..cloud.len())
        .filter(|&j| j != i)
        .map(|j| (cloud.distance(i, j), j))
        .collect();
    let k = k.min(d.len());
    if k == 0 {
        return Vec::new();
    }
    d.select_nth_unstable_by(k - 1, by_distance_then_index);
    d.truncate(k);
    d.sort_unstable_by(by_distance_then_index);
    d
}

fn check_k(k: usize, n: usize, what: &str) -> Result<()> {
    if k == 0 || k >= n {
        return Err(invalid(format!(
            "{what} must satisfy 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// Symmetric 0/1 matrix: an edge joins `i` and `j` iff either is among the
/// other's `kappa` nearest neighbours.
pub fn knn_adjacency(cloud: &PointCloud, kappa: usize) -> Result<CsrMatrix> {
    let n = cloud.len();
    check_k(kappa, n, "knn kappa")?;
    let directed: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            nearest_neighbors(cloud, i, kappa)
                .into_iter()
                .map(|(_, j)| j)
                .collect()
        })
        .collect();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (i, nbrs) in directed.iter().enumerate() {
        for &j in nbrs {
            rows[i].push((j, 1.0));
            rows[j].push((i, 1.0));
        }
    }
    for row in &mut rows {
        row.sort_unstable_by_key(|&(j, _)| j);
        row.dedup_by_key(|&mut (j, _)| j);
    }
    Ok(CsrMatrix::from_rows(rows))
}

/// Largest distance from any point to its `k`-th nearest neighbour.
pub fn max_knn_distance(cloud: &PointCloud, k: usize) -> Result<f64> {
    let n = cloud.len();
    check_k(k, n, "k")?;
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let mut d: Vec<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| cloud.distance(i, j))
                .collect();
            *d.select_nth_unstable_by(k - 1, f64::total_cmp).1
        })
        .reduce(|| 0.0, f64::max))
}
