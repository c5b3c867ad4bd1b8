//! Synthetic point-cloud generators and file ingestion.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the spec's seed, so a
//! spec always yields the same cloud.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::points::{LabelColumn, PointCloud};

/// Center of the half-moon circle inside the unit square.
pub const HALFMOON_CENTER: [f64; 2] = [0.5, 0.4];
pub const HALFMOON_RADIUS: f64 = 0.3;
pub const HALFMOON_ANGLES: (f64, f64) = (-20.0, 200.0);
pub const HALFMOON_NOISE_SD: f64 = 0.01;
pub const HALFMOON_BACKGROUND: usize = 10_000;

/// Parameter range of the swiss roll, `t in [1.5 pi, 4.5 pi]`.
pub const SWISS_T_RANGE: (f64, f64) = (1.5 * PI, 4.5 * PI);
pub const SWISS_HEIGHT: f64 = 21.0;

/// Mixture weights and component parameters of the two-bump density on `[0, 1]`.
pub const TWO_BUMP_MEANS: [f64; 2] = [0.25, 0.75];
pub const TWO_BUMP_SD: f64 = 0.05;
pub const TWO_BUMP_WEIGHTS: [f64; 3] = [0.45, 0.45, 0.1];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dataset {
    /// `n` points uniform on `[0, 1]^dim`.
    UniformCube { dim: usize, n: usize },
    /// `n_moon` points on a noisy circular arc over `n_background` points
    /// uniform on `[0, 1]^2`. Moon points come first.
    Halfmoon {
        n_background: usize,
        n_moon: usize,
        t: f64,
        angle_range: (f64, f64),
        noise_sd: f64,
    },
    /// `n` points uniform in the parameters of the swiss roll, rescaled into
    /// the unit cube.
    SwissRoll { n: usize },
    /// `n` draws from the two-bump density on `[0, 1]`.
    TwoBump1d { n: usize },
    /// Points read from a text file.
    File { path: PathBuf },
}

impl Dataset {
    /// Half-moon with the default arc, noise and background.
    pub fn halfmoon(n_moon: usize) -> Self {
        Dataset::Halfmoon {
            n_background: HALFMOON_BACKGROUND,
            n_moon,
            t: HALFMOON_RADIUS,
            angle_range: HALFMOON_ANGLES,
            noise_sd: HALFMOON_NOISE_SD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub dataset: Dataset,
    pub seed: u64,
}

impl DatasetSpec {
    pub fn new(dataset: Dataset, seed: u64) -> Self {
        Self { dataset, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |what: &str, n: usize| {
            if n == 0 {
                Err(invalid(format!("{what} must be at least 1")))
            } else {
                Ok(())
            }
        };
        match &self.dataset {
            Dataset::UniformCube { dim, n } => {
                positive("cube dimension", *dim)?;
                positive("sample count", *n)
            }
            Dataset::Halfmoon {
                n_background,
                n_moon,
                t,
                angle_range,
                noise_sd,
            } => {
                positive("moon sample count", *n_moon)?;
                let _ = n_background;
                if !(t.is_finite() && *t > 0.0) {
                    return Err(invalid(format!("moon radius must be positive, got {t}")));
                }
                if !(noise_sd.is_finite() && *noise_sd >= 0.0) {
                    return Err(invalid(format!(
                        "noise sd must be non-negative, got {noise_sd}"
                    )));
                }
                if !(angle_range.0.is_finite()
                    && angle_range.1.is_finite()
                    && angle_range.0 < angle_range.1)
                {
                    return Err(invalid(format!("degenerate angle range {angle_range:?}")));
                }
                Ok(())
            }
            Dataset::SwissRoll { n } | Dataset::TwoBump1d { n } => positive("sample count", *n),
            Dataset::File { .. } => Ok(()),
        }
    }
}

/// Draws the cloud described by `spec`.
pub fn generate(spec: &DatasetSpec) -> Result<PointCloud> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.dataset {
        Dataset::UniformCube { dim, n } => {
            let coords = (0..n * dim).map(|_| rng.random::<f64>()).collect();
            PointCloud::new(coords, *dim)
        }
        Dataset::Halfmoon {
            n_background,
            n_moon,
            t,
            angle_range,
            noise_sd,
        } => {
            let radial = Normal::new(*t, *noise_sd).map_err(|e| invalid(e.to_string()))?;
            let mut coords = Vec::with_capacity(2 * (n_moon + n_background));
            for _ in 0..*n_moon {
                let theta = rng.random_range(angle_range.0..angle_range.1);
                let rho = radial.sample(&mut rng);
                coords.extend_from_slice(&arc_point(rho, theta));
            }
            for _ in 0..*n_background {
                coords.push(rng.random::<f64>());
                coords.push(rng.random::<f64>());
            }
            PointCloud::new(coords, 2)
        }
        Dataset::SwissRoll { n } => {
            let mut coords = Vec::with_capacity(3 * n);
            for _ in 0..*n {
                let t = rng.random_range(SWISS_T_RANGE.0..SWISS_T_RANGE.1);
                let h = rng.random_range(0.0..SWISS_HEIGHT);
                coords.extend_from_slice(&swiss_roll_point(t, h));
            }
            PointCloud::new(coords, 3)
        }
        Dataset::TwoBump1d { n } => {
            let xs: Vec<f64> = (0..*n).map(|_| sample_two_bump(&mut rng)).collect();
            PointCloud::from_scalars(&xs)
        }
        Dataset::File { path } => PointCloud::load(path, LabelColumn::Auto),
    }
}

/// Point at radius `rho` and angle `theta_deg` (degrees) around the
/// half-moon center.
pub fn arc_point(rho: f64, theta_deg: f64) -> [f64; 2] {
    let th = theta_deg.to_radians();
    [
        HALFMOON_CENTER[0] + rho * th.cos(),
        HALFMOON_CENTER[1] + rho * th.sin(),
    ]
}

struct RollFrame {
    offset: [f64; 3],
    scale: f64,
}

/// Bounding box of the raw roll `(t cos t, h, t sin t)`, found on a fine grid
/// of `t`; the roll is shifted to the origin and divided by its largest extent.
fn roll_frame() -> &'static RollFrame {
    static FRAME: OnceLock<RollFrame> = OnceLock::new();
    FRAME.get_or_init(|| {
        let steps = 1_000_000;
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for k in 0..=steps {
            let t = SWISS_T_RANGE.0 + (SWISS_T_RANGE.1 - SWISS_T_RANGE.0) * k as f64 / steps as f64;
            let p = [t * t.cos(), t * t.sin()];
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let scale = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(SWISS_HEIGHT);
        RollFrame {
            offset: [lo[0], 0.0, lo[1]],
            scale,
        }
    })
}

/// Swiss-roll point for parameter `t` and height `h`, in unit-cube coordinates.
pub fn swiss_roll_point(t: f64, h: f64) -> [f64; 3] {
    let f = roll_frame();
    let raw = [t * t.cos(), h, t * t.sin()];
    [
        (raw[0] - f.offset[0]) / f.scale,
        (raw[1] - f.offset[1]) / f.scale,
        (raw[2] - f.offset[2]) / f.scale,
    ]
}

/// Largest extent of the raw roll, the factor it is divided by.
pub fn swiss_roll_scale() -> f64 {
    roll_frame().scale
}

/// One draw from `0.45 N(0.25, 0.05^2) + 0.45 N(0.75, 0.05^2) + 0.1 U[0, 1]`
/// conditioned on `[0, 1]` (rejection).
fn sample_two_bump<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        let x = if u < TWO_BUMP_WEIGHTS[0] {
            Normal::new(TWO_BUMP_MEANS[0], TWO_BUMP_SD)
                .unwrap()
                .sample(rng)
        } else if u < TWO_BUMP_WEIGHTS[0] + TWO_BUMP_WEIGHTS[1] {
            Normal::new(TWO_BUMP_MEANS[1], TWO_BUMP_SD)
                .unwrap()
                .sample(rng)
        } else {
            rng.random::<f64>()
        };
        if (0.0..=1.0).contains(&x) {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let spec = DatasetSpec::new(Dataset::UniformCube { dim: 3, n: 1000 }, 7);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = DatasetSpec::new(Dataset::UniformCube { dim: 3, n: 1000 }, 8);
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn halfmoon_defaults_and_layout() {
        match Dataset::halfmoon(500) {
            Dataset::Halfmoon {
                n_background,
                t,
                angle_range,
                noise_sd,
                ..
            } => {
                assert_eq!(n_background, 10_000);
                assert_eq!(t, 0.3);
                assert_eq!(angle_range, (-20.0, 200.0));
                assert_eq!(noise_sd, 0.01);
            }
            _ => unreachable!(),
        }
        let cloud = generate(&DatasetSpec::new(Dataset::halfmoon(500), 1)).unwrap();
        assert_eq!(cloud.len(), 10_500);
        for p in cloud.iter().take(500) {
            let r =
                ((p[0] - HALFMOON_CENTER[0]).powi(2) + (p[1] - HALFMOON_CENTER[1]).powi(2)).sqrt();
            assert!((r - 0.3).abs() < 0.06);
        }
        for p in cloud.iter().skip(500) {
            assert!(p.iter().all(|c| (0.0..1.0).contains(c)));
        }
    }

    #[test]
    fn two_bump_support_is_the_unit_interval() {
        let cloud = generate(&DatasetSpec::new(Dataset::TwoBump1d { n: 5000 }, 3)).unwrap();
        assert!(cloud.coords().iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn swiss_roll_fits_the_unit_cube() {
        let s = swiss_roll_scale();
        assert!((s - 25.1).abs() < 0.1, "scale {s}");
        let cloud = generate(&DatasetSpec::new(Dataset::SwissRoll { n: 2000 }, 4)).unwrap();
        assert!(cloud
            .coords()
            .iter()
            .all(|x| (-1e-9..=1.0 + 1e-9).contains(x)));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(generate(&DatasetSpec::new(Dataset::UniformCube { dim: 0, n: 5 }, 0)).is_err());
        let bad = Dataset::Halfmoon {
            n_background: 10,
            n_moon: 10,
            t: 0.3,
            angle_range: (10.0, 10.0),
            noise_sd: 0.01,
        };
        assert!(generate(&DatasetSpec::new(bad, 0)).is_err());
        let missing = Dataset::File {
            path: "/nonexistent/cloud.txt".into(),
        };
        assert!(generate(&DatasetSpec::new(missing, 0)).is_err());
    }
}
