//! Command-line driver: the four convergence experiments, one-shot resistance
//! queries on a point file, and α-cover dumps.

mod config;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use regionres::harness::{self, records::parse_formats, ExperimentRecord, OutputFormat};
use regionres::voltage::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use regionres::*;

use config::{parse_kernel, parse_region, parse_scaling, parse_sizes, FileConfig};

#[derive(Parser, Debug)]
#[command(
    name = "regionres",
    version,
    about = "Region-based effective resistance on point clouds"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Args, Debug)]
struct Common {
    /// TOML file with top-level defaults and one section per subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for experiment files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated output formats: csv, svg.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Fixed-point tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Record wall-clock solve times (makes output machine-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deviation of standard and region-based resistance from the degree limit.
    Vonluxburg {
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long, value_enum)]
        kernel: Option<Family>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        region_pairs: Option<usize>,
        /// Subsample this point file instead of the uniform cube.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Resistance ratios between anchors on a half-moon.
    Halfmoon {
        #[arg(long)]
        moon_sizes: Option<String>,
        #[arg(long)]
        background: Option<usize>,
    },
    /// Ordering of resistances along a swiss roll.
    Swissroll {
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Dense sample graph against a fixed α-cover with estimated cell weights.
    CoverCompare {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        gamma_sizes: Option<String>,
        #[arg(long)]
        dense_sizes: Option<String>,
    },
    /// Resistance between two ball regions of a point file.
    Er {
        #[arg(long)]
        points: Option<PathBuf>,
        /// radial:R, gaussian:SIGMA or knn:K
        #[arg(long)]
        kernel: Option<String>,
        /// none or pointwise
        #[arg(long)]
        scaling: Option<String>,
        /// Source ball as x,y,...:radius
        #[arg(long, allow_hyphen_values = true)]
        source: Option<String>,
        /// Sink ball as x,y,...:radius
        #[arg(long, allow_hyphen_values = true)]
        sink: Option<String>,
        #[arg(long, value_enum)]
        solver: Option<Solver>,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Write per-node voltages to this CSV file.
        #[arg(long)]
        voltages: Option<PathBuf>,
    },
    /// Build an α-cover of a point file and dump centers with cell weights.
    Cover {
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Points used for the cell weights; defaults to the covered points.
        #[arg(long)]
        sample: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Radial,
    Gaussian,
    Knn,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Solver {
    /// Schur complement of the Laplacian.
    Schur,
    /// Dirichlet problem by sparse Cholesky.
    Direct,
    /// Dirichlet problem by fixed-point iteration.
    FixedPoint,
}

/// Common settings after merging file and flags.
struct Settings {
    seed: Option<u64>,
    out: PathBuf,
    formats: Vec<OutputFormat>,
    tol: f64,
    timing: bool,
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut file = match &cli.common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    if let Some(threads) = cli.common.threads.or(file.threads) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let settings = Settings {
        seed: cli.common.seed.or(file.seed),
        out: cli
            .common
            .out
            .clone()
            .or(file.out.take())
            .unwrap_or_else(|| PathBuf::from(".")),
        formats: parse_formats(
            cli.common
                .format
                .as_deref()
                .or(file.format.as_deref())
                .unwrap_or("csv"),
        )?,
        tol: cli.common.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
        timing: cli.common.timing || file.timing.unwrap_or(false),
    };

    match cli.command {
        Command::Vonluxburg {
            sizes,
            kernel,
            dim,
            pairs,
            region_pairs,
            points,
        } => {
            let mut cfg = file.vonluxburg.unwrap_or_default();
            if let Some(s) = sizes {
                cfg.sizes = parse_sizes(&s)?;
            }
            if let Some(k) = kernel {
                cfg.kernel = match k {
                    Family::Radial => harness::KernelFamily::Radial,
                    Family::Gaussian => harness::KernelFamily::Gaussian,
                    Family::Knn => harness::KernelFamily::Knn,
                };
            }
            set(&mut cfg.dim, dim);
            set(&mut cfg.pairs, pairs);
            set(&mut cfg.region_pairs, region_pairs);
            if points.is_some() {
                cfg.points = points;
            }
            set(&mut cfg.seed, settings.seed);
            cfg.timing |= settings.timing;
            write_records(&harness::run_vonluxburg(&cfg)?, &settings, "vonluxburg")
        }
        Command::Halfmoon {
            moon_sizes,
            background,
        } => {
            let mut cfg = file.halfmoon.unwrap_or_default();
            if let Some(s) = moon_sizes {
                cfg.moon_sizes = parse_sizes(&s)?;
            }
            set(&mut cfg.n_background, background);
            set(&mut cfg.seed, settings.seed);
            cfg.timing |= settings.timing;
            write_records(&harness::run_halfmoon(&cfg)?, &settings, "halfmoon")
        }
        Command::Swissroll { sizes } => {
            let mut cfg = file.swissroll.unwrap_or_default();
            if let Some(s) = sizes {
                cfg.sizes = parse_sizes(&s)?;
            }
            set(&mut cfg.seed, settings.seed);
            cfg.timing |= settings.timing;
            write_records(&harness::run_swissroll(&cfg)?, &settings, "swissroll")
        }
        Command::CoverCompare {
            alpha,
            gamma_sizes,
            dense_sizes,
        } => {
            let mut cfg = file.cover_compare.unwrap_or_default();
            set(&mut cfg.alpha, alpha);
            if let Some(s) = gamma_sizes {
                cfg.gamma_sizes = parse_sizes(&s)?;
            }
            if let Some(s) = dense_sizes {
                cfg.dense_sizes = parse_sizes(&s)?;
            }
            set(&mut cfg.seed, settings.seed);
            cfg.timing |= settings.timing;
            write_records(
                &harness::run_cover_compare(&cfg)?,
                &settings,
                "cover_compare",
            )
        }
        Command::Er {
            points,
            kernel,
            scaling,
            source,
            sink,
            solver,
            max_iter,
            voltages,
        } => {
            let sec = file.er.unwrap_or_default();
            let points = required(points.or(sec.points), "--points")?;
            let kernel = parse_kernel(&required(kernel.or(sec.kernel), "--kernel")?)?;
            let scaling = parse_scaling(
                &scaling
                    .or(sec.scaling)
                    .unwrap_or_else(|| "pointwise".into()),
            )?;
            let source = parse_region(&required(source.or(sec.source), "--source")?)?;
            let sink = parse_region(&required(sink.or(sec.sink), "--sink")?)?;
            let solver = match (solver, sec.solver.as_deref()) {
                (Some(s), _) => s,
                (None, Some(s)) => Solver::from_str(s, true).map_err(anyhow::Error::msg)?,
                (None, None) => Solver::Schur,
            };
            let max_iter = max_iter.or(sec.max_iter).unwrap_or(DEFAULT_MAX_ITER);
            let query = ErQuery {
                kernel,
                scaling,
                source,
                sink,
                solver,
                tol: settings.tol,
                max_iter,
            };
            let r = query.run(&points, voltages.or(sec.voltages).as_deref())?;
            println!("{}", harness::records::format_float(r));
            Ok(())
        }
        Command::Cover {
            points,
            alpha,
            sample,
        } => {
            let sec = file.cover.unwrap_or_default();
            let points = required(points.or(sec.points), "--points")?;
            let alpha = required(alpha.or(sec.alpha), "--alpha")?;
            let cloud = PointCloud::load(&points, LabelColumn::Auto)?;
            let cover = build_alpha_cover(&cloud, alpha)?;
            let weights = match sample.or(sec.sample) {
                Some(path) => {
                    estimate_density(&cover, &PointCloud::load(&path, LabelColumn::Auto)?)?
                }
                None => estimate_density(&cover, &cloud)?,
            };
            let path = write_file(&settings.out, "cover.csv", &cover_csv(&cover, &weights))?;
            println!("{} centers written to {}", cover.len(), path.display());
            Ok(())
        }
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.with_context(|| format!("{flag} is required (on the command line or in the config file)"))
}

struct ErQuery {
    kernel: Kernel,
    scaling: ScalingMode,
    source: RegionSpec,
    sink: RegionSpec,
    solver: Solver,
    tol: f64,
    max_iter: usize,
}

impl ErQuery {
    fn run(&self, points: &Path, voltages: Option<&Path>) -> Result<f64> {
        let cloud = PointCloud::load(points, LabelColumn::Auto)?;
        let a = harness::ball_region(&cloud, &self.source)?;
        let b = harness::ball_region(&cloud, &self.sink)?;
        if a.is_empty() {
            return Err(Error::EmptyRegion("source".into()).into());
        }
        if b.is_empty() {
            return Err(Error::EmptyRegion("sink".into()).into());
        }
        let pair = RegionPair::new(a, b, cloud.len())?;
        let graph = build_graph(&cloud, &self.kernel, &self.scaling)?;
        info!("{} nodes, {} edges", graph.len(), graph.edge_count());

        if self.solver == Solver::Schur && voltages.is_none() {
            return Ok(set_er(&graph, &pair)?);
        }
        let problem = VoltageProblem::new(&graph, pair.clone())?;
        let solution = match self.solver {
            Solver::FixedPoint => solve_fixed_point(&problem, self.tol, self.max_iter)?,
            _ => solve_direct(&problem)?,
        };
        if let Some(path) = voltages {
            fs::write(path, voltage_csv(&cloud, &solution))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        if self.solver == Solver::Schur {
            return Ok(set_er(&graph, &pair)?);
        }
        let current = total_current(&graph, &solution, pair.source())?;
        if current.is_nan() || current <= 0.0 {
            bail!("no current flows from source to sink");
        }
        Ok(1.0 / current)
    }
}

fn write_records(records: &[ExperimentRecord], settings: &Settings, stem: &str) -> Result<()> {
    for path in harness::emit(records, &settings.formats, &settings.out, stem)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
