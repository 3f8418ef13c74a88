//! Randomized SVD of an implicitly shifted matrix.
//!
//! [`shifted_rsvd`] factors `X̄ = X − μ1ᵀ` to rank `k` from a Gaussian
//! sketch of width `K`:
//!
//! 1. `X₁ = XΩ` with `Ω` an n×K standard Gaussian matrix,
//! 2. `X₁ = Q₁R₁`, then, unless `μ = 0`, the rank-one update
//!    `QR = Q₁R₁ − μ1ᵀ` (u = −μ, v = ones(K)),
//! 3. `q` power iterations `Q'R' = X̄ᵀQ`, `QR = X̄Q'`,
//! 4. `Y = QᵀX̄`, `Y = U₁ΣVᵀ`, `U = QU₁`, truncated to rank `k`.
//!
//! Every product with `X̄` goes through [`ShiftedOperator`], so a sparse `X`
//! is never densified. With `μ = 0` the update and all shift corrections
//! are skipped and the computation is the plain randomized SVD.

use std::time::{Duration, Instant};

use crate::decomp::{qr, qr_rank1_update, svd_small, SvdFactors};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, LinearOperator, ShiftedOperator, Vector};
use crate::rng::Stream;

/// Default cap on `rows × cols` for [`reconstruct`].
pub const RECONSTRUCT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsvdParams {
    /// Target rank `k`.
    pub rank: usize,
    /// Sketch width `K`.
    pub sketch: usize,
    /// Number of power iterations `q`.
    pub power_iters: usize,
    pub seed: u64,
}

impl RsvdParams {
    pub fn new(rank: usize, sketch: usize, power_iters: usize, seed: u64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::param("rank must be at least 1"));
        }
        if sketch <= rank {
            return Err(Error::param(format!(
                "sketch width {sketch} must exceed rank {rank}"
            )));
        }
        Ok(RsvdParams {
            rank,
            sketch,
            power_iters,
            seed,
        })
    }

    /// Sketch width `K = ceil(oversample · k)`; the usual choice is 2.
    pub fn with_oversample(rank: usize, oversample: f64, power_iters: usize, seed: u64) -> Result<Self> {
        if !(oversample.is_finite() && oversample > 1.0) {
            return Err(Error::param(format!("oversample factor {oversample} must exceed 1")));
        }
        let sketch = (oversample * rank as f64).ceil() as usize;
        Self::new(rank, sketch, power_iters, seed)
    }

    fn check_against(&self, rows: usize, cols: usize) -> Result<()> {
        let limit = rows.min(cols);
        if self.sketch > limit {
            return Err(Error::param(format!(
                "sketch width {} exceeds min(rows, cols) = {limit} (rank {})",
                self.sketch, self.rank
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SvdResult {
    pub factors: SvdFactors,
    pub params: RsvdParams,
    /// The shift the factors describe `X − shift·1ᵀ` for.
    pub shift: Vector,
    pub elapsed: Duration,
}

/// Rank-`k` SVD of `X − μ1ᵀ` without forming the shifted matrix.
///
/// Inputs with more rows than columns are factored through their transpose;
/// that path only supports a zero shift.
pub fn shifted_rsvd<M: LinearOperator + ?Sized>(x: &M, mu: &Vector, params: &RsvdParams) -> Result<SvdResult> {
    let start = Instant::now();
    let (m, n) = x.shape();
    if mu.len() != m {
        return Err(Error::DimensionMismatch {
            op: "shifted_rsvd",
            left: (m, n),
            right: (mu.len(), 1),
        });
    }
    params.check_against(m, n)?;

    let factors = if m <= n {
        let op = ShiftedOperator::new(x, mu)?;
        sketch_and_factor(&op, params)?
    } else {
        if !mu.is_zero() {
            return Err(Error::param(
                "a nonzero shift needs rows <= cols; transpose the data so samples are columns",
            ));
        }
        let xt = x.transposed();
        let zero = Vector::zeros(n);
        let op = ShiftedOperator::new(&xt, &zero)?;
        let mut f = sketch_and_factor(&op, params)?.swap_sides();
        f.normalize_signs();
        f
    };

    Ok(SvdResult {
        factors,
        params: *params,
        shift: mu.clone(),
        elapsed: start.elapsed(),
    })
}

/// The unshifted randomized SVD; exactly `shifted_rsvd(x, 0, params)`.
pub fn rsvd<M: LinearOperator + ?Sized>(x: &M, params: &RsvdParams) -> Result<SvdResult> {
    shifted_rsvd(x, &Vector::zeros(x.rows()), params)
}

/// Standard Gaussian n×K matrix, filled column by column from the seed.
pub fn gaussian_sketch(n: usize, k: usize, seed: u64) -> DenseMatrix {
    let mut stream = Stream::new(seed);
    let mut omega = DenseMatrix::zeros(n, k);
    for c in 0..k {
        for r in 0..n {
            omega.set(r, c, stream.gaussian());
        }
    }
    omega
}

fn sketch_and_factor<M: LinearOperator + ?Sized>(
    op: &ShiftedOperator<'_, M>,
    params: &RsvdParams,
) -> Result<SvdFactors> {
    let omega = gaussian_sketch(op.cols(), params.sketch, params.seed);
    let sample = op.base().mul_dense(&omega)?;
    drop(omega);
    let mut basis = qr(&sample)?;
    drop(sample);
    if !op.is_unshifted() {
        let u: Vec<f64> = op.shift().iter().map(|x| -x).collect();
        basis = qr_rank1_update(&basis, &u, &vec![1.0; params.sketch])?;
    }
    let mut q = basis.into_q();
    for _ in 0..params.power_iters {
        let q_right = qr(&op.matmat_left_transpose(&q)?)?.into_q();
        q = qr(&op.matmat_right(&q_right)?)?.into_q();
    }
    let y = op.project(&q)?;
    let small = svd_small(&y)?.truncate(params.rank);
    Ok(SvdFactors {
        u: q.matmul(&small.u)?,
        sigma: small.sigma,
        v: small.v,
    })
}

/// Expected-error bound `[1 + 4·sqrt(2m/(k−1))]^(1/(2q+1)) · σ_{k+1}` for
/// the spectral norm of `X̄ − UΣVᵀ`, stated for `2 ≤ k ≤ m/2`.
pub fn error_bound(m: usize, k: usize, q: usize, sigma_next: f64) -> Result<f64> {
    if k < 2 || 2 * k > m {
        return Err(Error::param(format!(
            "error bound holds for 2 <= k <= m/2, got k = {k}, m = {m}"
        )));
    }
    if !(sigma_next >= 0.0 && sigma_next.is_finite()) {
        return Err(Error::param("sigma_{k+1} must be finite and nonnegative"));
    }
    let base = 1.0 + 4.0 * (2.0 * m as f64 / (k - 1) as f64).sqrt();
    Ok(base.powf(1.0 / (2 * q + 1) as f64) * sigma_next)
}

/// `U·diag(σ)·Vᵀ`, the approximation of the shifted matrix.
pub fn reconstruct(r: &SvdResult) -> Result<DenseMatrix> {
    reconstruct_capped(r, RECONSTRUCT_CAP)
}

pub fn reconstruct_capped(r: &SvdResult, cap: usize) -> Result<DenseMatrix> {
    let size = r.factors.u.rows().saturating_mul(r.factors.v.rows());
    if size > cap {
        return Err(Error::param(format!(
            "reconstruction needs {size} entries, cap is {cap}"
        )));
    }
    Ok(r.factors.reconstruct())
}
