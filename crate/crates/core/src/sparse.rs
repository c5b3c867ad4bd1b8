//! Compressed sparse row storage for square symmetric matrices.

use faer::Mat;

/// Square matrix in CSR form; column indices are sorted within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    offsets: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from per-row `(column, value)` lists. Rows are sorted by column;
    /// duplicate columns within a row are summed.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let n = rows.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let mut indices = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        offsets.push(0);
        for mut row in rows {
            row.sort_unstable_by_key(|&(j, _)| j);
            let mut last: Option<usize> = None;
            for (j, v) in row {
                assert!(j < n, "column {j} out of range for dimension {n}");
                if last == Some(j) {
                    *values.last_mut().unwrap() += v;
                } else {
                    indices.push(j);
                    values.push(v);
                    last = Some(j);
                }
            }
            offsets.push(indices.len());
        }
        Self {
            n,
            offsets,
            indices,
            values,
        }
    }

    /// Symmetric matrix from its strict upper triangle: `upper[i]` lists
    /// `(j, value)` with `j > i`, sorted by `j`. Each value is stored twice, so
    /// the result is bit-exactly symmetric.
    pub fn from_upper_triangle(upper: &[Vec<(usize, f64)>]) -> Self {
        let n = upper.len();
        let mut counts = vec![0usize; n];
        for (i, row) in upper.iter().enumerate() {
            counts[i] += row.len();
            for &(j, _) in row {
                assert!(j > i && j < n, "entry ({i}, {j}) is not strictly upper");
                counts[j] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for c in &counts {
            offsets.push(offsets.last().unwrap() + c);
        }
        let nnz = *offsets.last().unwrap();
        let mut indices = vec![0usize; nnz];
        let mut values = vec![0.0f64; nnz];
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        // lower parts first: row j receives (i, w) for ascending i < j
        for (i, row) in upper.iter().enumerate() {
            for &(j, w) in row {
                indices[cursor[j]] = i;
                values[cursor[j]] = w;
                cursor[j] += 1;
            }
        }
        for (i, row) in upper.iter().enumerate() {
            for &(j, w) in row {
                indices[cursor[i]] = j;
                values[cursor[i]] = w;
                cursor[i] += 1;
            }
        }
        Self {
            n,
            offsets,
            indices,
            values,
        }
    }

    pub fn from_dense(m: &Mat<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        let rows = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .filter(|&j| m[(i, j)] != 0.0)
                    .map(|j| (j, m[(i, j)]))
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn row(&self, i: usize) -> impl ExactSizeIterator<Item = (usize, f64)> + '_ {
        let (a, b) = (self.offsets[i], self.offsets[i + 1]);
        self.indices[a..b]
            .iter()
            .copied()
            .zip(self.values[a..b].iter().copied())
    }

    pub fn row_indices(&self, i: usize) -> &[usize] {
        &self.indices[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn row_values(&self, i: usize) -> &[f64] {
        &self.values[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let cols = self.row_indices(i);
        match cols.binary_search(&j) {
            Ok(k) => self.row_values(i)[k],
            Err(_) => 0.0,
        }
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row_values(i).iter().sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let mut m = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Multiplies every stored value by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| self.row(i).all(|(j, v)| self.get(j, i) == v))
    }

    /// Principal submatrix on `keep`, rows and columns in the order given.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let rows = keep
            .iter()
            .map(|&i| {
                self.row(i)
                    .filter(|&(j, _)| pos[j] != usize::MAX)
                    .map(|(j, v)| (pos[j], v))
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }
}

/// Writes a dense matrix as whitespace-separated text, one row per line.
pub fn dense_to_text(m: &Mat<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:.17e}", m[(i, j)]))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_columns_are_summed_and_sorted() {
        let m = CsrMatrix::from_rows(vec![vec![(1, 2.0), (0, 1.0), (1, 0.5)], vec![]]);
        assert_eq!(m.row_indices(0), &[0, 1]);
        assert_eq!(m.get(0, 1), 2.5);
        assert_eq!(m.get(1, 0), 0.0);
        assert_eq!(m.nnz(), 2);
    }

    #[test]
    fn principal_submatrix_reorders() {
        let m = CsrMatrix::from_rows(vec![
            vec![(0, 1.0), (2, 3.0)],
            vec![(1, 5.0)],
            vec![(0, 3.0), (2, 9.0)],
        ]);
        let s = m.principal_submatrix(&[2, 0]);
        assert_eq!(s.get(0, 0), 9.0);
        assert_eq!(s.get(0, 1), 3.0);
        assert_eq!(s.get(1, 1), 1.0);
    }
}
