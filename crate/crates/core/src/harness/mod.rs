//! Dataset generators, the convergence experiments and their CSV/SVG output.

pub mod datasets;
pub mod experiments;
pub mod records;
pub mod regions;

pub use datasets::{generate, Dataset, DatasetSpec};
pub use experiments::{
    point_seed, run_cover_compare, run_halfmoon, run_swissroll, run_vonluxburg, CoverCompareConfig,
    HalfmoonConfig, KernelFamily, SwissRollConfig, VonLuxburgConfig,
};
pub use records::{emit, lookup, parse_csv, to_csv, to_svg, ExperimentRecord, OutputFormat};
pub use regions::{ball_region, RegionSpec};
