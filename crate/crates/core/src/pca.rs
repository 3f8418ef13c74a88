//! Principal component analysis on top of the shifted randomized SVD.
//!
//! Columns are samples and rows are variables. Fitting passes the column
//! mean as the shift, so centering and factorization happen in one pass and
//! sparse data stays sparse.

use crate::error::{Error, Result};
use crate::matrix::{axpy, column_mean, DenseMatrix, LinearOperator, ShiftedOperator, Vector};
use crate::rsvd::{shifted_rsvd, RsvdParams, SvdResult};

/// Overrides for the factorization behind [`PcaModel::fit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcaOptions {
    /// Sketch width as a multiple of the rank, rounded up.
    pub oversample: f64,
    /// Explicit sketch width; takes precedence over `oversample`.
    pub sketch: Option<usize>,
    pub power_iters: usize,
    pub seed: u64,
}

impl Default for PcaOptions {
    fn default() -> Self {
        PcaOptions {
            oversample: 2.0,
            sketch: None,
            power_iters: 0,
            seed: 0,
        }
    }
}

impl PcaOptions {
    pub fn params(&self, k: usize) -> Result<RsvdParams> {
        match self.sketch {
            Some(s) => RsvdParams::new(k, s, self.power_iters, self.seed),
            None => RsvdParams::with_oversample(k, self.oversample, self.power_iters, self.seed),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PcaModel {
    mean: Vector,
    components: DenseMatrix,
    sigma: Vec<f64>,
    params: RsvdParams,
}

impl PcaModel {
    /// Fits `k` components of `X` centered on its column mean.
    pub fn fit<M: LinearOperator + ?Sized>(x: &M, k: usize, opts: &PcaOptions) -> Result<Self> {
        let mean = column_mean(x);
        Self::fit_with_shift(x, mean, k, opts)
    }

    /// Fits around an arbitrary shift; a zero shift gives uncentered PCA.
    pub fn fit_with_shift<M: LinearOperator + ?Sized>(
        x: &M,
        shift: Vector,
        k: usize,
        opts: &PcaOptions,
    ) -> Result<Self> {
        let params = opts.params(k)?;
        let result = shifted_rsvd(x, &shift, &params)?;
        Ok(Self::from_result(result))
    }

    /// Uses the left factors of `result` as components around its shift.
    pub fn from_result(result: SvdResult) -> Self {
        Self::with_mean(result.shift.clone(), result)
    }

    /// Components from `result`, reconstructed around `mean`. Used when the
    /// factors came from a matrix that was centered beforehand.
    pub fn with_mean(mean: Vector, result: SvdResult) -> Self {
        PcaModel {
            mean,
            components: result.factors.u,
            sigma: result.factors.sigma,
            params: result.params,
        }
    }

    pub fn mean(&self) -> &Vector {
        &self.mean
    }

    pub fn components(&self) -> &DenseMatrix {
        &self.components
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn params(&self) -> &RsvdParams {
        &self.params
    }

    pub fn n_components(&self) -> usize {
        self.components.cols()
    }

    /// `Y = Uᵀ(X − μ1ᵀ)`, one column of scores per sample.
    pub fn transform<M: LinearOperator + ?Sized>(&self, x: &M) -> Result<DenseMatrix> {
        ShiftedOperator::new(x, &self.mean)?.project(&self.components)
    }

    /// `U·Y + μ1ᵀ`
    pub fn inverse_transform(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        let mut out = self.components.matmul(y)?;
        for (i, &mu) in self.mean.iter().enumerate() {
            out.row_mut(i).iter_mut().for_each(|v| *v += mu);
        }
        Ok(out)
    }

    /// Squared L2 reconstruction error of every column and their mean.
    ///
    /// Residuals are accumulated one row at a time, so only the k×n score
    /// matrix and one row of workspace are held in memory.
    pub fn reconstruction_errors<M: LinearOperator + ?Sized>(&self, x: &M) -> Result<ErrorReport> {
        let y = self.transform(x)?;
        let n = x.cols();
        let mut per_column = vec![0.0; n];
        let mut row = vec![0.0; n];
        let mut fitted = vec![0.0; n];
        for i in 0..x.rows() {
            x.dense_row(i, &mut row);
            fitted.iter_mut().for_each(|v| *v = self.mean[i]);
            for (c, &u) in self.components.row(i).iter().enumerate() {
                axpy(u, y.row(c), &mut fitted);
            }
            for ((acc, xv), fv) in per_column.iter_mut().zip(&row).zip(&fitted) {
                let r = xv - fv;
                *acc += r * r;
            }
        }
        Ok(ErrorReport::new(per_column))
    }
}

/// Per-column squared reconstruction errors and their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub mse: f64,
    pub per_column: Vec<f64>,
}

impl ErrorReport {
    pub fn new(per_column: Vec<f64>) -> Self {
        let mse = per_column.iter().sum::<f64>() / per_column.len() as f64;
        ErrorReport { mse, per_column }
    }
}

/// Fractions of columns where `a` beats `b` and where `b` beats `a`.
///
/// Differences within 1e-15 relative count as ties and go to neither side.
pub fn win_rate(a: &ErrorReport, b: &ErrorReport) -> Result<(f64, f64)> {
    win_rate_slices(&a.per_column, &b.per_column)
}

pub fn win_rate_slices(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch {
            op: "win_rate",
            left: (a.len(), 1),
            right: (b.len(), 1),
        });
    }
    let (mut wa, mut wb) = (0usize, 0usize);
    for (&x, &y) in a.iter().zip(b) {
        if (x - y).abs() <= 1e-15 * x.abs().max(y.abs()) {
            continue;
        }
        if x < y {
            wa += 1;
        } else {
            wb += 1;
        }
    }
    let n = a.len() as f64;
    Ok((wa as f64 / n, wb as f64 / n))
}
