//! Dense and sparse storage, the implicit shifted operator and the products
//! the randomized factorization is built from.

mod dense;
mod shifted;
mod sparse;

pub use dense::DenseMatrix;
pub use shifted::{center_explicitly, ShiftedOperator};
pub use sparse::SparseMatrix;

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::rng::Stream;

/// A real vector with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if let Some(i) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("vector entry {i}")));
        }
        Ok(Vector(data))
    }

    pub fn zeros(len: usize) -> Self {
        Vector(vec![0.0; len])
    }

    pub fn ones(len: usize) -> Self {
        Vector(vec![1.0; len])
    }

    /// True when every entry compares equal to zero (`-0.0` included).
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Matrix-shaped operand of the factorization routines.
///
/// Implementations must check shapes and never materialize anything larger
/// than the operands and the result.
pub trait LinearOperator {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;

    fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    /// `self · b`
    fn mul_dense(&self, b: &DenseMatrix) -> Result<DenseMatrix>;

    /// `selfᵀ · q`
    fn tr_mul_dense(&self, q: &DenseMatrix) -> Result<DenseMatrix>;

    /// `qᵀ · self`
    fn left_mul_tr(&self, q: &DenseMatrix) -> Result<DenseMatrix>;

    /// `self · 1`
    fn row_sums(&self) -> Vec<f64>;

    /// Writes row `i` into `out`, which must have length `cols`.
    fn dense_row(&self, i: usize, out: &mut [f64]);

    fn frobenius_norm_sq(&self) -> f64;

    /// Rows × cols allocation; callers guard against large inputs.
    fn to_dense(&self) -> DenseMatrix;

    /// A transposed copy in the same storage kind.
    fn transposed(&self) -> DataMatrix;
}

/// Either storage kind, as loaded from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum DataMatrix {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
}

impl DataMatrix {
    pub fn transpose(&self) -> DataMatrix {
        match self {
            DataMatrix::Dense(d) => DataMatrix::Dense(d.transpose()),
            DataMatrix::Sparse(s) => DataMatrix::Sparse(s.transpose()),
        }
    }
}

impl From<DenseMatrix> for DataMatrix {
    fn from(m: DenseMatrix) -> Self {
        DataMatrix::Dense(m)
    }
}

impl From<SparseMatrix> for DataMatrix {
    fn from(m: SparseMatrix) -> Self {
        DataMatrix::Sparse(m)
    }
}

macro_rules! delegate {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            DataMatrix::Dense($m) => $e,
            DataMatrix::Sparse($m) => $e,
        }
    };
}

impl LinearOperator for DataMatrix {
    fn rows(&self) -> usize {
        delegate!(self, m => m.rows())
    }
    fn cols(&self) -> usize {
        delegate!(self, m => m.cols())
    }
    fn mul_dense(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        delegate!(self, m => m.mul_dense(b))
    }
    fn tr_mul_dense(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        delegate!(self, m => m.tr_mul_dense(q))
    }
    fn left_mul_tr(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        delegate!(self, m => m.left_mul_tr(q))
    }
    fn row_sums(&self) -> Vec<f64> {
        delegate!(self, m => m.row_sums())
    }
    fn dense_row(&self, i: usize, out: &mut [f64]) {
        delegate!(self, m => m.dense_row(i, out))
    }
    fn frobenius_norm_sq(&self) -> f64 {
        delegate!(self, m => m.frobenius_norm_sq())
    }
    fn to_dense(&self) -> DenseMatrix {
        delegate!(self, m => m.to_dense())
    }
    fn transposed(&self) -> DataMatrix {
        self.transpose()
    }
}

/// Sample mean of the columns, `(1/n) X 1`.
pub fn column_mean<M: LinearOperator + ?Sized>(x: &M) -> Vector {
    let n = x.cols() as f64;
    Vector(x.row_sums().into_iter().map(|s| s / n).collect())
}

pub fn frobenius_norm(x: &DenseMatrix) -> f64 {
    x.frobenius_norm_sq().sqrt()
}

/// Largest singular value by power iteration on `XᵀX`.
///
/// The start vector comes from a fixed-seed Gaussian stream, so the estimate
/// is deterministic. `iters` below one is treated as one.
pub fn spectral_norm_est(x: &DenseMatrix, iters: usize) -> f64 {
    let (m, n) = x.shape();
    let mut stream = Stream::new(0x5eed_5eed);
    let mut v: Vec<f64> = (0..n).map(|_| stream.gaussian()).collect();
    let mut w = vec![0.0; m];
    let nv = norm2(&v);
    v.iter_mut().for_each(|e| *e /= nv);
    for _ in 0..iters.max(1) {
        x.gemv(&v, &mut w);
        x.gemv_tr(&w, &mut v);
        let nv = norm2(&v);
        if nv == 0.0 {
            return 0.0;
        }
        v.iter_mut().for_each(|e| *e /= nv);
    }
    x.gemv(&v, &mut w);
    norm2(&w)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    // Scaled to avoid overflow on very large entries.
    let scale = a.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let ss: f64 = a.iter().map(|x| (x / scale) * (x / scale)).sum();
    scale * ss.sqrt()
}

pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn check_finite(data: &[f64], what: &str) -> Result<()> {
    match data.iter().position(|x| !x.is_finite()) {
        Some(i) => Err(Error::NonFinite(format!("{what} entry {i}"))),
        None => Ok(()),
    }
}
