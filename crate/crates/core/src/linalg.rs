//! Thin layer over `faer` for the two factorizations the crate needs: a sparse
//! Cholesky of a symmetric positive-definite block and a dense symmetric
//! eigendecomposition. Everything runs sequentially so results do not depend
//! on the thread count.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::sparse::linalg::cholesky::{factorize_symbolic_cholesky, LltRef, SymbolicCholesky};
use faer::sparse::{SparseColMat, SymbolicSparseColMat};
use faer::{Conj, Mat, MatMut, Par, Side};

use crate::error::{invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::sparse::CsrMatrix;

/// Cholesky factor `A = L L^T` of a sparse symmetric positive-definite matrix.
pub struct SpdFactor {
    symbolic: SymbolicCholesky<usize>,
    values: Vec<f64>,
    n: usize,
}

impl std::fmt::Debug for SpdFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpdFactor")
            .field("n", &self.n)
            .field("factor_nnz", &self.values.len())
            .finish()
    }
}

impl SpdFactor {
    /// Factorizes the upper triangle of `a`. Fails with
    /// [`Error::SingularBlock`] if `a` is not numerically positive definite.
    pub fn new(a: &CsrMatrix) -> Result<Self> {
        // for a symmetric matrix, row j restricted to columns <= j is column
        // j of the upper triangle
        let n = a.dim();
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::with_capacity(a.nnz() / 2 + n);
        let mut values = Vec::with_capacity(a.nnz() / 2 + n);
        col_ptr.push(0);
        for j in 0..n {
            for (i, v) in a.row(j) {
                if i <= j {
                    row_idx.push(i);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Self::from_upper_csc(n, col_ptr, row_idx, values)
    }

    /// Factorizes the principal block of the Laplacian of `graph` on the
    /// ascending node list `nodes`, without forming the Laplacian.
    pub fn laplacian_block(graph: &WeightedGraph, nodes: &[usize]) -> Result<Self> {
        let n = graph.len();
        let mut pos = vec![usize::MAX; n];
        for (k, &i) in nodes.iter().enumerate() {
            if k > 0 && nodes[k - 1] >= i {
                return Err(invalid("block nodes must be strictly ascending"));
            }
            pos[i] = k;
        }
        let mut col_ptr = Vec::with_capacity(nodes.len() + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for (k, &i) in nodes.iter().enumerate() {
            for (j, w) in graph.neighbors(i) {
                if pos[j] < k {
                    row_idx.push(pos[j]);
                    values.push(-w);
                }
            }
            row_idx.push(k);
            values.push(graph.degree(i));
            col_ptr.push(row_idx.len());
        }
        Self::from_upper_csc(nodes.len(), col_ptr, row_idx, values)
    }

    fn from_upper_csc(
        n: usize,
        col_ptr: Vec<usize>,
        row_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        let symbolic_mat = SymbolicSparseColMat::new_checked(n, n, col_ptr, None, row_idx);
        let mat = SparseColMat::<usize, f64>::new(symbolic_mat, values);
        let symbolic = factorize_symbolic_cholesky(
            mat.symbolic(),
            Side::Upper,
            Default::default(),
            Default::default(),
        )
        .map_err(|e| Error::Backend(format!("{e:?}")))?;
        let mut values = vec![0.0f64; symbolic.len_val()];
        let par = Par::Seq;
        let mut mem = MemBuffer::try_new(
            symbolic.factorize_numeric_llt_scratch::<f64>(par, Default::default()),
        )
        .map_err(|e| Error::Backend(format!("{e:?}")))?;
        symbolic
            .factorize_numeric_llt::<f64>(
                &mut values,
                mat.as_ref(),
                Side::Upper,
                Default::default(),
                par,
                MemStack::new(&mut mem),
                Default::default(),
            )
            .map_err(|_| Error::SingularBlock { size: n })?;
        Ok(Self {
            symbolic,
            values,
            n,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `A X = B` in place for every column of `rhs`.
    pub fn solve_in_place(&self, rhs: MatMut<'_, f64>) {
        assert_eq!(rhs.nrows(), self.n);
        if self.n == 0 {
            return;
        }
        let par = Par::Seq;
        let mut mem = MemBuffer::new(
            self.symbolic
                .solve_in_place_scratch::<f64>(rhs.ncols(), par),
        );
        LltRef::<'_, usize, f64>::new(&self.symbolic, &self.values).solve_in_place_with_conj(
            Conj::No,
            rhs,
            par,
            MemStack::new(&mut mem),
        );
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = Mat::from_fn(b.len(), 1, |i, _| b[i]);
        self.solve_in_place(x.as_mut());
        (0..b.len()).map(|i| x[(i, 0)]).collect()
    }
}

/// Moore-Penrose pseudoinverse of a dense symmetric positive-semidefinite
/// matrix whose null space has dimension `nullity`, via its
/// eigendecomposition. The `nullity` smallest eigenvalues are treated as zero.
pub fn symmetric_pinv(a: &Mat<f64>, nullity: usize) -> Result<Mat<f64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let par = Par::Seq;
    let mut s = faer::diag::Diag::<f64>::zeros(n);
    let mut u = Mat::<f64>::zeros(n, n);
    let mut mem = MemBuffer::new(evd::self_adjoint_evd_scratch::<f64>(
        n,
        ComputeEigenvectors::Yes,
        par,
        Default::default(),
    ));
    evd::self_adjoint_evd(
        a.as_ref(),
        s.as_mut(),
        Some(u.as_mut()),
        par,
        MemStack::new(&mut mem),
        Default::default(),
    )
    .map_err(|e| Error::Backend(format!("eigendecomposition failed: {e:?}")))?;
    let lambda: Vec<f64> = (0..n).map(|i| s[i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lambda[a].abs().total_cmp(&lambda[b].abs()));
    let mut keep = vec![true; n];
    for &k in order.iter().take(nullity) {
        keep[k] = false;
    }
    // U diag(1/lambda) U^T over the non-null eigenpairs
    let mut scaled = u.clone();
    for (k, &l) in lambda.iter().enumerate() {
        let inv = if keep[k] { 1.0 / l } else { 0.0 };
        for i in 0..n {
            scaled[(i, k)] *= inv;
        }
    }
    Ok(&scaled * u.transpose())
}

/// Solves a small dense symmetric positive-definite system with several
/// right-hand sides.
pub fn dense_spd_solve(a: &Mat<f64>, b: &Mat<f64>) -> Result<Mat<f64>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Mat::zeros(0, b.ncols()));
    }
    let sparse = CsrMatrix::from_dense(a);
    let factor = SpdFactor::new(&sparse)?;
    let mut x = b.clone();
    factor.solve_in_place(x.as_mut());
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_solves_a_tridiagonal_system() {
        let a = CsrMatrix::from_rows(vec![
            vec![(0, 2.0), (1, -1.0)],
            vec![(0, -1.0), (1, 2.0), (2, -1.0)],
            vec![(1, -1.0), (2, 2.0)],
        ]);
        let f = SpdFactor::new(&a).unwrap();
        let x = f.solve(&[1.0, 0.0, 1.0]);
        for (xi, want) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((xi - want).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let l = CsrMatrix::from_rows(vec![vec![(0, 1.0), (1, -1.0)], vec![(0, -1.0), (1, 1.0)]]);
        assert!(matches!(
            SpdFactor::new(&l),
            Err(Error::SingularBlock { .. })
        ));
    }

    #[test]
    fn laplacian_block_matches_the_assembled_block() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (0, 3, 1.5)])
            .unwrap();
        let nodes = [1, 3];
        let direct = SpdFactor::laplacian_block(&g, &nodes).unwrap();
        let assembled = SpdFactor::new(&g.laplacian().principal_submatrix(&nodes)).unwrap();
        assert_eq!(direct.solve(&[1.0, -2.0]), assembled.solve(&[1.0, -2.0]));
        assert!(SpdFactor::laplacian_block(&g, &[3, 1]).is_err());
    }

    #[test]
    fn pinv_of_edge_laplacian() {
        let l = Mat::from_fn(2, 2, |i, j| if i == j { 1.0 } else { -1.0 });
        let p = symmetric_pinv(&l, 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 0.25 } else { -0.25 };
                assert!((p[(i, j)] - want).abs() < 1e-14);
            }
        }
    }
}
