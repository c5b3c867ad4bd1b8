//! Ball-shaped source and sink regions around anchor points.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::points::PointCloud;
use crate::voltage::Ball;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl RegionSpec {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(invalid(format!(
                "region radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn ball(&self) -> Ball {
        Ball {
            center: self.center.clone(),
            radius: self.radius,
        }
    }
}

/// Indices of the points within `spec.radius` of `spec.center`; possibly empty.
pub fn ball_region(cloud: &PointCloud, spec: &RegionSpec) -> Result<Vec<usize>> {
    if !(spec.radius.is_finite() && spec.radius > 0.0) {
        return Err(invalid(format!(
            "region radius must be positive, got {}",
            spec.radius
        )));
    }
    if spec.center.len() != cloud.dim() {
        return Err(invalid(format!(
            "region center has dimension {}, cloud has {}",
            spec.center.len(),
            cloud.dim()
        )));
    }
    Ok((0..cloud.len())
        .filter(|&i| cloud.distance_to(i, &spec.center) <= spec.radius)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_region_examples() {
        let cloud = PointCloud::from_scalars(&[0.0, 0.3, 1.0]).unwrap();
        let tiny = RegionSpec::new(vec![0.6], 0.1).unwrap();
        assert!(ball_region(&cloud, &tiny).unwrap().is_empty());
        let all = RegionSpec::new(vec![0.5], 1.0).unwrap();
        assert_eq!(ball_region(&cloud, &all).unwrap(), vec![0, 1, 2]);
        let at = RegionSpec::new(vec![0.3], 1e-9).unwrap();
        assert_eq!(ball_region(&cloud, &at).unwrap(), vec![1]);
        assert!(RegionSpec::new(vec![0.0], 0.0).is_err());
    }
}
