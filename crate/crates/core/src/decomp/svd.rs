use super::qr::{form_q, householder_in_place, upper_triangle};
use crate::error::{Error, Result};
use crate::matrix::{axpy, check_finite, dot, norm2, DenseMatrix};

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 30;

/// Thin SVD factors `A ≈ U·diag(σ)·Vᵀ` with σ nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
}

impl SvdFactors {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// Keeps the leading `k` triplets.
    pub fn truncate(&self, k: usize) -> SvdFactors {
        SvdFactors {
            u: self.u.leading_columns(k),
            sigma: self.sigma[..k].to_vec(),
            v: self.v.leading_columns(k),
        }
    }

    /// `U·diag(σ)·Vᵀ`
    pub fn reconstruct(&self) -> DenseMatrix {
        let us = self.u.scale_columns(&self.sigma);
        us.matmul(&self.v.transpose()).expect("conformable by construction")
    }

    /// Flips column pairs so the largest-magnitude entry of each `U` column
    /// is nonnegative (lowest row index on ties).
    pub(crate) fn normalize_signs(&mut self) {
        for j in 0..self.u.cols() {
            let mut best = 0;
            let mut best_abs = -1.0;
            for i in 0..self.u.rows() {
                let a = self.u.get(i, j).abs();
                if a > best_abs {
                    best = i;
                    best_abs = a;
                }
            }
            if self.u.get(best, j) < 0.0 {
                for i in 0..self.u.rows() {
                    self.u.set(i, j, -self.u.get(i, j));
                }
                for i in 0..self.v.rows() {
                    self.v.set(i, j, -self.v.get(i, j));
                }
            }
        }
    }

    pub(crate) fn swap_sides(self) -> SvdFactors {
        SvdFactors {
            u: self.v,
            sigma: self.sigma,
            v: self.u,
        }
    }
}

/// Full thin SVD by one-sided (Hestenes) Jacobi.
///
/// Works on the tall orientation of `a`; inputs at least twice as tall as
/// wide are first reduced to their `R` factor. Sweeps run in fixed cyclic
/// order, pairs are rotated while `|aᵢᵀaⱼ| > 1e-12·‖aᵢ‖‖aⱼ‖`, and at most 30
/// sweeps are made. Left vectors belonging to numerically zero singular
/// values are completed to an orthonormal set from the standard basis.
pub fn svd_small(a: &DenseMatrix) -> Result<SvdFactors> {
    check_finite(a.data(), "svd input")?;
    let (m, n) = a.shape();
    let mut out = if m >= n {
        tall_svd(a.to_columns(), m)
    } else {
        tall_svd(a.transpose().to_columns(), n).swap_sides()
    };
    out.normalize_signs();
    Ok(out)
}

/// Leading-`k` truncation of [`svd_small`]; the best rank-`k` approximation.
pub fn svd_exact_truncated(a: &DenseMatrix, k: usize) -> Result<SvdFactors> {
    let r = a.rows().min(a.cols());
    if k == 0 || k > r {
        return Err(Error::InvalidParameter(format!(
            "rank {k} outside 1..={r} for a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    Ok(svd_small(a)?.truncate(k))
}

/// SVD of the m×n (m ≥ n) matrix given by its columns.
fn tall_svd(mut cols: Vec<Vec<f64>>, m: usize) -> SvdFactors {
    let n = cols.len();
    if n > 1 && m >= 2 * n {
        let tau = householder_in_place(&mut cols);
        let r = upper_triangle(&cols);
        let q = DenseMatrix::from_column_vecs(m, &form_q(&cols, &tau, m));
        let inner = jacobi(r.to_columns(), n);
        return SvdFactors {
            u: q.matmul(&inner.u).expect("conformable by construction"),
            sigma: inner.sigma,
            v: inner.v,
        };
    }
    jacobi(cols, m)
}

fn jacobi(mut w: Vec<Vec<f64>>, m: usize) -> SvdFactors {
    let n = w.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();
    let fro = norm2(&w.iter().map(|c| norm2(c)).collect::<Vec<_>>());
    // Columns this small are rounding residue; rotating them never converges.
    let negligible = f64::EPSILON * fro * (m + n) as f64;
    let negligible_sq = negligible * negligible;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                if alpha <= negligible_sq || beta <= negligible_sq {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                if gamma.abs() <= OFF_DIAGONAL_TOL * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = 1.0f64.copysign(zeta) / (zeta.abs() + 1.0f64.hypot(zeta));
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.iter().map(|c| norm2(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable: equal values keep their column order.
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let mut u_cols: Vec<Option<Vec<f64>>> = order
        .iter()
        .map(|&j| {
            let s = norms[j];
            (s > negligible).then(|| w[j].iter().map(|x| x / s).collect())
        })
        .collect();
    complete_basis(&mut u_cols, m);

    let u_cols: Vec<Vec<f64>> = u_cols.into_iter().map(Option::unwrap).collect();
    let v_cols: Vec<Vec<f64>> = order.iter().map(|&j| v[j].clone()).collect();
    SvdFactors {
        u: DenseMatrix::from_column_vecs(m, &u_cols),
        sigma: order.iter().map(|&j| norms[j]).collect(),
        v: DenseMatrix::from_column_vecs(n, &v_cols),
    }
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (a, b) = cols.split_at_mut(q);
    for (x, y) in a[p].iter_mut().zip(b[0].iter_mut()) {
        let (xv, yv) = (*x, *y);
        *x = c * xv - s * yv;
        *y = s * xv + c * yv;
    }
}

/// Fills empty slots with unit vectors orthogonal to every filled slot,
/// taken from the standard basis by Gram-Schmidt (two passes).
fn complete_basis(cols: &mut [Option<Vec<f64>>], m: usize) {
    let mut next_e = 0;
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        let filled = cols.iter().filter(|c| c.is_some()).count();
        // Some basis vector keeps at least the average residual mass.
        let threshold = 0.999 * (m - filled) as f64 / m as f64;
        loop {
            assert!(next_e < m, "basis completion exhausted");
            let mut e = vec![0.0; m];
            e[next_e] = 1.0;
            next_e += 1;
            for _ in 0..2 {
                for c in cols.iter().flatten() {
                    let d = dot(c, &e);
                    axpy(-d, c, &mut e);
                }
            }
            let nrm = norm2(&e);
            if nrm * nrm >= threshold {
                e.iter_mut().for_each(|x| *x /= nrm);
                cols[slot] = Some(e);
                break;
            }
        }
    }
}
