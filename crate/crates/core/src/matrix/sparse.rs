use super::{axpy, DenseMatrix, LinearOperator};
use crate::error::{Error, Result};

/// Compressed sparse row matrix.
///
/// Column indices are strictly increasing within each row and every stored
/// value is finite and nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let bad = |msg: String| Err(Error::InvalidMatrix(msg));
        if row_ptr.len() != rows + 1 || row_ptr[0] != 0 {
            return bad(format!("row_ptr must have {} entries starting at 0", rows + 1));
        }
        if row_ptr.windows(2).any(|w| w[0] > w[1]) {
            return bad("row_ptr is not nondecreasing".into());
        }
        let nnz = row_ptr[rows];
        if col_idx.len() != nnz || values.len() != nnz {
            return bad(format!(
                "nnz is {nnz} but col_idx has {} and values has {}",
                col_idx.len(),
                values.len()
            ));
        }
        for i in 0..rows {
            let idx = &col_idx[row_ptr[i]..row_ptr[i + 1]];
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("row {i}: column indices not strictly increasing"));
            }
            if idx.last().is_some_and(|&j| j >= cols) {
                return bad(format!("row {i}: column index out of range"));
            }
        }
        if let Some(p) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("stored value {p}")));
        }
        if let Some(p) = values.iter().position(|&v| v == 0.0) {
            return bad(format!("stored value {p} is zero"));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Builds from `(row, col, value)` triplets in any order. Duplicates are
    /// summed and entries that end up zero are dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(&(i, j, _)) = triplets.iter().find(|t| t.0 >= rows || t.1 >= cols) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({i}, {j}) outside {rows}x{cols}"
            )));
        }
        if let Some(&(i, j, _)) = triplets.iter().find(|t| !t.2.is_finite()) {
            return Err(Error::NonFinite(format!("entry ({i}, {j})")));
        }
        triplets.sort_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        let mut row_of = Vec::with_capacity(triplets.len());
        for (i, j, v) in triplets {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(j);
                values.push(v);
                row_of.push(i);
                last = Some((i, j));
            }
        }
        let mut keep_idx = Vec::with_capacity(col_idx.len());
        let mut keep_val = Vec::with_capacity(values.len());
        for ((j, v), i) in col_idx.into_iter().zip(values).zip(row_of) {
            if v != 0.0 {
                keep_idx.push(j);
                keep_val.push(v);
                row_ptr[i + 1] += 1;
            }
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self::new(rows, cols, row_ptr, keep_idx, keep_val)
    }

    pub fn from_dense(d: &DenseMatrix) -> Self {
        let mut trip = Vec::new();
        for i in 0..d.rows() {
            for (j, &v) in d.row(i).iter().enumerate() {
                if v != 0.0 {
                    trip.push((i, j, v));
                }
            }
        }
        Self::from_triplets(d.rows(), d.cols(), trip).expect("dense input is valid")
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (idx, val) = self.row(i);
            idx.iter().zip(val).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.cols + 1];
        for &j in &self.col_idx {
            counts[j + 1] += 1;
        }
        for j in 0..self.cols {
            counts[j + 1] += counts[j];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        // Rows are visited in order, so each output row stays sorted.
        for (i, j, v) in self.iter() {
            let p = next[j];
            col_idx[p] = i;
            values[p] = v;
            next[j] += 1;
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            row_ptr,
            col_idx,
            values,
        }
    }

    fn mismatch(&self, op: &'static str, other: &DenseMatrix) -> Error {
        Error::DimensionMismatch {
            op,
            left: (self.rows, self.cols),
            right: other.shape(),
        }
    }
}

impl LinearOperator for SparseMatrix {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn mul_dense(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != b.rows() {
            return Err(self.mismatch("X·B", b));
        }
        let k = b.cols();
        let mut out = DenseMatrix::zeros(self.rows, k);
        for i in 0..self.rows {
            let (idx, val) = self.row(i);
            let dst = out.row_mut(i);
            for (&j, &v) in idx.iter().zip(val) {
                axpy(v, b.row(j), dst);
            }
        }
        Ok(out)
    }

    fn tr_mul_dense(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != q.rows() {
            return Err(self.mismatch("Xᵀ·Q", q));
        }
        let mut out = DenseMatrix::zeros(self.cols, q.cols());
        for i in 0..self.rows {
            let (idx, val) = self.row(i);
            let qi = q.row(i);
            for (&j, &v) in idx.iter().zip(val) {
                axpy(v, qi, out.row_mut(j));
            }
        }
        Ok(out)
    }

    fn left_mul_tr(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != q.rows() {
            return Err(self.mismatch("Qᵀ·X", q));
        }
        let n = self.cols;
        let k = q.cols();
        let mut data = vec![0.0; k * n];
        for i in 0..self.rows {
            let (idx, val) = self.row(i);
            for (c, &a) in q.row(i).iter().enumerate() {
                let dst = &mut data[c * n..(c + 1) * n];
                for (&j, &v) in idx.iter().zip(val) {
                    dst[j] += a * v;
                }
            }
        }
        Ok(DenseMatrix::from_parts(k, n, data))
    }

    fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).1.iter().sum()).collect()
    }

    fn dense_row(&self, i: usize, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        let (idx, val) = self.row(i);
        for (&j, &v) in idx.iter().zip(val) {
            out[j] = v;
        }
    }

    fn frobenius_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            d.set(i, j, v);
        }
        d
    }

    fn transposed(&self) -> super::DataMatrix {
        super::DataMatrix::from(self.transpose())
    }
}
