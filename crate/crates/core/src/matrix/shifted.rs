use super::{DenseMatrix, LinearOperator, Vector};
use crate::error::{Error, Result};

/// `base − shift·1ᵀ`, held implicitly.
///
/// Every product expands the shifted matrix by distributivity and evaluates
/// the rank-one correction with its small inner product first, so the
/// workspace is bounded by the operand and result sizes. With an all-zero
/// shift the correction is skipped entirely and every product is exactly
/// the product with `base`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedOperator<'a, M: LinearOperator + ?Sized> {
    base: &'a M,
    shift: &'a Vector,
    zero_shift: bool,
}

impl<'a, M: LinearOperator + ?Sized> ShiftedOperator<'a, M> {
    pub fn new(base: &'a M, shift: &'a Vector) -> Result<Self> {
        if shift.len() != base.rows() {
            return Err(Error::DimensionMismatch {
                op: "shift",
                left: base.shape(),
                right: (shift.len(), 1),
            });
        }
        Ok(ShiftedOperator {
            base,
            shift,
            zero_shift: shift.is_zero(),
        })
    }

    pub fn base(&self) -> &'a M {
        self.base
    }

    pub fn shift(&self) -> &'a Vector {
        self.shift
    }

    pub fn is_unshifted(&self) -> bool {
        self.zero_shift
    }

    pub fn rows(&self) -> usize {
        self.base.rows()
    }

    pub fn cols(&self) -> usize {
        self.base.cols()
    }

    /// `X̄·B = X·B − μ(1ᵀB)`
    pub fn matmat_right(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        let mut out = self.base.mul_dense(b)?;
        if self.zero_shift {
            return Ok(out);
        }
        let col_sums = column_sums(b);
        for (i, &mu) in self.shift.iter().enumerate() {
            for (o, s) in out.row_mut(i).iter_mut().zip(&col_sums) {
                *o -= mu * s;
            }
        }
        Ok(out)
    }

    /// `X̄ᵀ·Q = XᵀQ − 1(μᵀQ)`
    pub fn matmat_left_transpose(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        let mut out = self.base.tr_mul_dense(q)?;
        if self.zero_shift {
            return Ok(out);
        }
        let mut mu_q = vec![0.0; q.cols()];
        q.gemv_tr(self.shift, &mut mu_q);
        for j in 0..out.rows() {
            for (o, t) in out.row_mut(j).iter_mut().zip(&mu_q) {
                *o -= t;
            }
        }
        Ok(out)
    }

    /// `Y = QᵀX̄ = QᵀX − (Qᵀμ)1ᵀ`
    pub fn project(&self, q: &DenseMatrix) -> Result<DenseMatrix> {
        let mut out = self.base.left_mul_tr(q)?;
        if self.zero_shift {
            return Ok(out);
        }
        let mut q_mu = vec![0.0; q.cols()];
        q.gemv_tr(self.shift, &mut q_mu);
        for (c, w) in q_mu.iter().enumerate() {
            out.row_mut(c).iter_mut().for_each(|o| *o -= w);
        }
        Ok(out)
    }
}

fn column_sums(b: &DenseMatrix) -> Vec<f64> {
    let mut s = vec![0.0; b.cols()];
    for i in 0..b.rows() {
        super::axpy(1.0, b.row(i), &mut s);
    }
    s
}

/// Forms `X − μ1ᵀ` explicitly. This is the rows × cols allocation the
/// implicit operator avoids; it exists for the explicit-centering baseline.
pub fn center_explicitly(x: &DenseMatrix, shift: &Vector) -> Result<DenseMatrix> {
    if shift.len() != x.rows() {
        return Err(Error::DimensionMismatch {
            op: "center",
            left: x.shape(),
            right: (shift.len(), 1),
        });
    }
    let mut out = x.clone();
    for (i, &mu) in shift.iter().enumerate() {
        out.row_mut(i).iter_mut().for_each(|v| *v -= mu);
    }
    Ok(out)
}
