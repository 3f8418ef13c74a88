use super::{axpy, check_finite, LinearOperator};
use crate::error::{Error, Result};

/// Row-major dense matrix with at least one row and one column and finite
/// entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{rows}x{cols} matrix needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        check_finite(&data, "matrix")?;
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Skips the finiteness scan; for results of arithmetic on valid inputs.
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert!(rows > 0 && cols > 0 && data.len() == rows * cols);
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::InvalidMatrix(format!(
                "row {bad} has {} values, expected {c}",
                rows[bad].len()
            )));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let cols = columns.len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidMatrix("ragged columns".into()));
        }
        Self::from_fn(rows, cols, |i, j| columns[j][i])
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Column-major copy of the entries.
    pub(crate) fn to_columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub(crate) fn from_column_vecs(rows: usize, columns: &[Vec<f64>]) -> Self {
        let cols = columns.len();
        let mut data = vec![0.0; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                data[i * cols + j] = *v;
            }
        }
        Self::from_parts(rows, cols, data)
    }

    /// The leading `k` columns.
    pub fn leading_columns(&self, k: usize) -> DenseMatrix {
        assert!(k >= 1 && k <= self.cols);
        let mut data = Vec::with_capacity(self.rows * k);
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[..k]);
        }
        Self::from_parts(self.rows, k, data)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        Self::from_parts(self.cols, self.rows, data)
    }

    /// `self · other`
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.mul_dense(other)
    }

    /// `selfᵀ · other`
    pub fn t_matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.tr_mul_dense(other)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "sub",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    /// Multiplies column `j` by `scale[j]`.
    pub fn scale_columns(&self, scale: &[f64]) -> DenseMatrix {
        assert_eq!(scale.len(), self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for (v, s) in out.row_mut(i).iter_mut().zip(scale) {
                *v *= s;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `y = self · x`
    pub(crate) fn gemv(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = super::dot(self.row(i), x);
        }
    }

    /// `y = selfᵀ · x`
    pub(crate) fn gemv_tr(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (i, xi) in x.iter().enumerate() {
            axpy(*xi, self.row(i), y);
        }
    }
}

impl LinearOperator for DenseMatrix {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn mul_dense(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != b.rows {
            return Err(Error::DimensionMismatch {
                op: "X·B",
                left: self.shape(),
                right: b.shape(),
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                axpy(a, b.row(l), dst);
            }
        }
        Ok(out)
    }

    fn tr_mul_dense(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != q.rows {
            return Err(Error::DimensionMismatch {
                op: "Xᵀ·Q",
                left: self.shape(),
                right: q.shape(),
            });
        }
        let k = q.cols;
        let mut out = DenseMatrix::zeros(self.cols, k);
        for i in 0..self.rows {
            let qi = q.row(i);
            for (j, &a) in self.row(i).iter().enumerate() {
                axpy(a, qi, &mut out.data[j * k..(j + 1) * k]);
            }
        }
        Ok(out)
    }

    fn left_mul_tr(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != q.rows {
            return Err(Error::DimensionMismatch {
                op: "Qᵀ·X",
                left: q.shape(),
                right: self.shape(),
            });
        }
        let n = self.cols;
        let mut out = DenseMatrix::zeros(q.cols, n);
        for i in 0..self.rows {
            let xi = self.row(i);
            for (c, &a) in q.row(i).iter().enumerate() {
                axpy(a, xi, &mut out.data[c * n..(c + 1) * n]);
            }
        }
        Ok(out)
    }

    fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    fn dense_row(&self, i: usize, out: &mut [f64]) {
        out.copy_from_slice(self.row(i));
    }

    fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    fn to_dense(&self) -> DenseMatrix {
        self.clone()
    }

    fn transposed(&self) -> super::DataMatrix {
        super::DataMatrix::from(self.transpose())
    }
}
