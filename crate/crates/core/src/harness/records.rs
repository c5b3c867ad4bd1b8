//! Experiment records and their CSV and SVG renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub const CSV_HEADER: &str = "experiment,n,quantity,value,seed,wall_ms";

/// One row of an experiment sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub n: usize,
    pub quantity: String,
    pub value: f64,
    pub seed: u64,
    pub wall_ms: f64,
}

impl ExperimentRecord {
    pub fn new(
        experiment: &str,
        n: usize,
        quantity: impl Into<String>,
        value: f64,
        seed: u64,
    ) -> Self {
        Self {
            experiment: experiment.to_string(),
            n,
            quantity: quantity.into(),
            value,
            seed,
            wall_ms: 0.0,
        }
    }

    pub fn with_wall_ms(mut self, wall_ms: f64) -> Self {
        self.wall_ms = wall_ms;
        self
    }
}

/// Value of the first record matching `n` and `quantity`.
pub fn lookup(records: &[ExperimentRecord], n: usize, quantity: &str) -> Option<f64> {
    records
        .iter()
        .find(|r| r.n == n && r.quantity == quantity)
        .map(|r| r.value)
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&r.experiment),
            r.n,
            csv_field(&r.quantity),
            format_float(r.value),
            r.seed,
            format_float(r.wall_ms)
        );
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| csv_error(1, e))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(Error::Parse {
            path: "<csv>".into(),
            line: 1,
            msg: format!("unexpected header `{header}`"),
        });
    }
    let mut out = Vec::new();
    for (k, row) in reader.deserialize::<ExperimentRecord>().enumerate() {
        out.push(row.map_err(|e| csv_error(k + 2, e))?);
    }
    Ok(out)
}

fn csv_error(line: usize, e: csv::Error) -> Error {
    Error::Parse {
        path: "<csv>".into(),
        line,
        msg: e.to_string(),
    }
}

/// Line chart of every quantity against `n` on a logarithmic x axis.
pub fn to_svg(records: &[ExperimentRecord], title: &str) -> String {
    const W: f64 = 720.0;
    const H: f64 = 440.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 220.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 60.0;
    const COLORS: [&str; 8] = [
        "#d62728", "#2ca02c", "#7f7f7f", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
    ];

    let mut series: BTreeMap<&str, Vec<(f64, f64)>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.n > 0 && r.value.is_finite()) {
        series
            .entry(&r.quantity)
            .or_default()
            .push((r.n as f64, r.value));
    }
    let xs = series.values().flatten().map(|p| p.0.log10());
    let (x0, x1) = bounds(xs);
    let (y0, y1) = bounds(series.values().flatten().map(|p| p.1));
    let px = |x: f64| LEFT + (x.log10() - x0) / (x1 - x0) * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        (W - RIGHT + LEFT) / 2.0,
        xml_escape(title)
    );
    let (ax0, ax1, ay0, ay1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(
        s,
        r#"<path d="M{ax0} {ay0} L{ax0} {ay1} L{ax1} {ay1}" fill="none" stroke="black"/>"#
    );
    // decade ticks on x, five ticks on y
    let mut decade = x0.floor() as i32;
    while (decade as f64) <= x1 + 1e-9 {
        let v = 10f64.powi(decade);
        if decade as f64 >= x0 - 1e-9 {
            let x = px(v);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{ay1}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">1e{decade}</text>"#,
                ay1 + 5.0,
                ay1 + 18.0
            );
        }
        decade += 1;
    }
    for k in 0..=4 {
        let v = y0 + (y1 - y0) * k as f64 / 4.0;
        let y = py(v);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y:.2}" x2="{ax0}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.3e}</text>"#,
            ax0 - 5.0,
            ax0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">n</text>"#,
        (ax0 + ax1) / 2.0,
        H - 15.0
    );
    for (k, (name, pts)) in series.iter_mut().enumerate() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            coords.join(" ")
        );
        let ly = TOP + 10.0 + 18.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            ax1 + 15.0,
            ax1 + 35.0,
            ax1 + 40.0,
            ly + 4.0,
            xml_escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 * lo.abs().max(1.0) {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(invalid(format!("unknown output format `{other}`"))),
        }
    }
}

/// Parses a comma-separated list such as `csv,svg`.
pub fn parse_formats(s: &str) -> Result<Vec<OutputFormat>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Writes `<stem>.csv` and/or `<stem>.svg` into `dir`, returning the paths.
pub fn emit(
    records: &[ExperimentRecord],
    formats: &[OutputFormat],
    dir: &Path,
    stem: &str,
) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(invalid("no records to emit"));
    }
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for format in formats {
        let (ext, body) = match format {
            OutputFormat::Csv => ("csv", to_csv(records)),
            OutputFormat::Svg => ("svg", to_svg(records, stem)),
        };
        let path = dir.join(format!("{stem}.{ext}"));
        fs::write(&path, body).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}
