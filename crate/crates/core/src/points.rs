//! Point clouds in Euclidean space and the text loader for point files.

use std::fs;
use std::path::Path;

use crate::error::{invalid, Error, Result};

/// Distance function between two coordinate slices of equal length.
pub type Metric = fn(&[f64], &[f64]) -> f64;

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `n` points of dimension `dim`, stored row-major.
#[derive(Debug, Clone)]
pub struct PointCloud {
    coords: Vec<f64>,
    dim: usize,
    metric: Metric,
}

impl PointCloud {
    pub fn new(coords: Vec<f64>, dim: usize) -> Result<Self> {
        Self::with_metric(coords, dim, euclidean)
    }

    pub fn with_metric(coords: Vec<f64>, dim: usize, metric: Metric) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("point dimension must be at least 1"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(invalid(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(invalid(format!(
                "non-finite coordinate in point {}",
                pos / dim
            )));
        }
        Ok(Self {
            coords,
            dim,
            metric,
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows
            .first()
            .map(|r| r.as_ref().len())
            .ok_or_else(|| invalid("point cloud needs at least one point"))?;
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(invalid(format!(
                    "point {i} has dimension {}, expected {dim}",
                    r.len()
                )));
            }
            coords.extend_from_slice(r);
        }
        Self::new(coords, dim)
    }

    /// Points on the real line.
    pub fn from_scalars(xs: &[f64]) -> Result<Self> {
        Self::new(xs.to_vec(), 1)
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        (self.metric)(self.point(i), self.point(j))
    }

    pub fn distance_to(&self, i: usize, x: &[f64]) -> f64 {
        (self.metric)(self.point(i), x)
    }

    /// Sub-cloud made of the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Self {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self {
            coords,
            dim: self.dim,
            metric: self.metric,
        }
    }

    /// Concatenation of two clouds of equal dimension.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(invalid(format!(
                "cannot concatenate clouds of dimension {} and {}",
                self.dim, other.dim
            )));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Ok(Self {
            coords,
            dim: self.dim,
            metric: self.metric,
        })
    }

    pub fn load(path: impl AsRef<Path>, labels: LabelColumn) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        parse_points(&text, labels).map_err(|e| match e {
            Error::Parse { line, msg, .. } => Error::Parse {
                path: path.to_path_buf(),
                line,
                msg,
            },
            other => other,
        })
    }
}

impl PartialEq for PointCloud {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.coords == other.coords
    }
}

/// How the loader treats the last column of a point file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelColumn {
    /// The last column is a label iff every row ends in an integer literal
    /// while some other column holds a non-integer literal.
    #[default]
    Auto,
    Present,
    Absent,
}

fn is_integer_literal(tok: &str) -> bool {
    let t = tok.strip_prefix(['+', '-']).unwrap_or(tok);
    !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
}

/// Parses whitespace- or comma-delimited rows; lines starting with `#` and
/// blank lines are skipped.
pub fn parse_points(text: &str, labels: LabelColumn) -> Result<PointCloud> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        rows.push((lineno + 1, toks));
    }
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: "<input>".into(),
        line,
        msg,
    };
    let Some((first_line, first)) = rows.first() else {
        return Err(invalid("point file contains no points"));
    };
    let width = first.len();
    for (line, toks) in &rows {
        if toks.len() != width {
            return Err(parse_err(
                *line,
                format!("expected {width} columns, found {}", toks.len()),
            ));
        }
    }
    let drop_last = match labels {
        LabelColumn::Present => true,
        LabelColumn::Absent => false,
        LabelColumn::Auto => {
            width > 1
                && rows.iter().all(|(_, t)| is_integer_literal(t[width - 1]))
                && rows
                    .iter()
                    .any(|(_, t)| t[..width - 1].iter().any(|x| !is_integer_literal(x)))
        }
    };
    let dim = if drop_last { width - 1 } else { width };
    if dim == 0 {
        return Err(parse_err(*first_line, "no coordinate columns".into()));
    }
    let mut coords = Vec::with_capacity(rows.len() * dim);
    for (line, toks) in &rows {
        for tok in &toks[..dim] {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(*line, format!("`{tok}` is not a number")))?;
            if !v.is_finite() {
                return Err(parse_err(*line, format!("`{tok}` is not finite")));
            }
            coords.push(v);
        }
    }
    PointCloud::new(coords, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_delimiters_and_comments() {
        let text = "# header\n0.0, 1.5 2\n\n1.0\t-2.5 ,7\n";
        let cloud = parse_points(text, LabelColumn::Auto).unwrap();
        assert_eq!(cloud.dim(), 2);
        assert_eq!(cloud.len(), 2);
        assert_eq!(cloud.point(1), &[1.0, -2.5]);
    }

    #[test]
    fn integer_only_files_keep_every_column() {
        let cloud = parse_points("0 1\n3 4\n", LabelColumn::Auto).unwrap();
        assert_eq!(cloud.dim(), 2);
        let cloud = parse_points("0 1\n3 4\n", LabelColumn::Present).unwrap();
        assert_eq!(cloud.dim(), 1);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = parse_points("0 1\n2\n", LabelColumn::Absent).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn non_finite_coordinates_are_rejected() {
        assert!(parse_points("nan 1\n", LabelColumn::Absent).is_err());
        assert!(PointCloud::new(vec![f64::INFINITY], 1).is_err());
    }

    #[test]
    fn missing_file_reports_path() {
        let err = PointCloud::load("/nonexistent/points.txt", LabelColumn::Auto).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/points.txt"));
    }
}
