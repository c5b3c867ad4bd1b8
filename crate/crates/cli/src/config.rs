//! Config file layout and the small textual formats used on the command line.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use regionres::harness::{CoverCompareConfig, HalfmoonConfig, SwissRollConfig, VonLuxburgConfig};
use regionres::{Kernel, RegionSpec, ScalingMode};
use serde::Deserialize;

/// Everything a config file may set. Top-level keys mirror the common flags;
/// each subcommand reads its own section.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub tol: Option<f64>,
    pub threads: Option<usize>,
    pub timing: Option<bool>,
    pub vonluxburg: Option<VonLuxburgConfig>,
    pub halfmoon: Option<HalfmoonConfig>,
    pub swissroll: Option<SwissRollConfig>,
    pub cover_compare: Option<CoverCompareConfig>,
    pub er: Option<ErSection>,
    pub cover: Option<CoverSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErSection {
    pub points: Option<PathBuf>,
    pub kernel: Option<String>,
    pub scaling: Option<String>,
    pub source: Option<String>,
    pub sink: Option<String>,
    pub solver: Option<String>,
    pub max_iter: Option<usize>,
    pub voltages: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSection {
    pub points: Option<PathBuf>,
    pub alpha: Option<f64>,
    pub sample: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// `radial:R`, `gaussian:SIGMA` or `knn:K`.
pub fn parse_kernel(s: &str) -> Result<Kernel> {
    let (kind, value) = s
        .split_once(':')
        .with_context(|| format!("kernel `{s}` is not of the form kind:value"))?;
    let kernel = match kind.trim() {
        "radial" => Kernel::radial(
            value
                .trim()
                .parse()
                .with_context(|| format!("radius in `{s}`"))?,
        )?,
        "gaussian" => Kernel::gaussian(
            value
                .trim()
                .parse()
                .with_context(|| format!("sigma in `{s}`"))?,
        )?,
        "knn" => Kernel::knn(
            value
                .trim()
                .parse()
                .with_context(|| format!("k in `{s}`"))?,
        )?,
        other => bail!("unknown kernel `{other}`; expected radial, gaussian or knn"),
    };
    Ok(kernel)
}

/// `none` or `pointwise`. Region-wise weights only exist on a cover.
pub fn parse_scaling(s: &str) -> Result<ScalingMode> {
    match s.trim() {
        "none" => Ok(ScalingMode::None),
        "pointwise" => Ok(ScalingMode::Pointwise),
        other => bail!("unknown scaling `{other}`; expected none or pointwise"),
    }
}

/// `x,y,...:r` for a closed ball of radius `r`.
pub fn parse_region(s: &str) -> Result<RegionSpec> {
    let (center, radius) = s
        .rsplit_once(':')
        .with_context(|| format!("region `{s}` is not of the form x,y,...:radius"))?;
    let center = center
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .with_context(|| format!("coordinate `{c}` in `{s}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    let radius = radius
        .trim()
        .parse()
        .with_context(|| format!("radius in `{s}`"))?;
    Ok(RegionSpec::new(center, radius)?)
}

/// Comma-separated list of sample sizes.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("size `{t}`")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_strings() {
        assert_eq!(
            parse_kernel("radial:0.08").unwrap(),
            Kernel::Radial { radius: 0.08 }
        );
        assert_eq!(parse_kernel("knn:100").unwrap(), Kernel::Knn { kappa: 100 });
        assert!(parse_kernel("radial").is_err());
        assert!(parse_kernel("box:1").is_err());
        assert!(parse_kernel("gaussian:-1").is_err());
    }

    #[test]
    fn region_strings() {
        let r = parse_region("0.5, 0.4:0.05").unwrap();
        assert_eq!(r.center, vec![0.5, 0.4]);
        assert_eq!(r.radius, 0.05);
        assert!(parse_region("0.5,0.4").is_err());
        assert!(parse_region("0.5:0").is_err());
    }

    #[test]
    fn file_sections() {
        let cfg: FileConfig = toml::from_str(
            "seed = 3\nformat = \"csv\"\n[halfmoon]\nmoon_sizes = [100, 200]\nanchor_angles = [0, 45, 90, 180]\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, Some(3));
        assert_eq!(cfg.halfmoon.unwrap().moon_sizes, vec![100, 200]);
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }
}
