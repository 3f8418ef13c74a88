use crate::error::{Error, Result};
use crate::matrix::{dot, norm2, DenseMatrix};

/// Thin QR factors: `Q` is m×p with orthonormal columns, `R` is p×p upper
/// triangular with exact zeros below the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct QrFactors {
    pub(crate) q: DenseMatrix,
    pub(crate) r: DenseMatrix,
}

impl QrFactors {
    pub fn new(q: DenseMatrix, r: DenseMatrix) -> Result<Self> {
        let p = q.cols();
        if r.shape() != (p, p) || q.rows() < p {
            return Err(Error::DimensionMismatch {
                op: "qr factors",
                left: q.shape(),
                right: r.shape(),
            });
        }
        if (0..p).any(|i| (0..i).any(|j| r.get(i, j) != 0.0)) {
            return Err(Error::InvalidMatrix("R is not upper triangular".into()));
        }
        Ok(QrFactors { q, r })
    }

    pub fn q(&self) -> &DenseMatrix {
        &self.q
    }

    pub fn r(&self) -> &DenseMatrix {
        &self.r
    }

    pub fn into_q(self) -> DenseMatrix {
        self.q
    }

    /// `Q·R`
    pub fn product(&self) -> DenseMatrix {
        self.q.matmul(&self.r).expect("conformable by construction")
    }
}

/// Householder reflections applied in place to column-major `cols`.
///
/// Returns the reflector scalars; on exit the upper triangle of `cols` holds
/// `R` and the part below the diagonal holds the reflector tails (implicit
/// unit head).
pub(crate) fn householder_in_place(cols: &mut [Vec<f64>]) -> Vec<f64> {
    let p = cols.len();
    let mut tau = vec![0.0; p];
    for j in 0..p {
        let (head, tail) = cols.split_at_mut(j + 1);
        let v = &mut head[j];
        let alpha = v[j];
        let xnorm = norm2(&v[j + 1..]);
        if xnorm == 0.0 {
            // Already triangular in this column; H = I.
            continue;
        }
        let beta = -alpha.hypot(xnorm).copysign(alpha);
        tau[j] = (beta - alpha) / beta;
        let scale = 1.0 / (alpha - beta);
        v[j + 1..].iter_mut().for_each(|e| *e *= scale);
        v[j] = beta;
        for c in tail.iter_mut() {
            let w = tau[j] * (c[j] + dot(&v[j + 1..], &c[j + 1..]));
            c[j] -= w;
            for (ci, vi) in c[j + 1..].iter_mut().zip(&v[j + 1..]) {
                *ci -= w * vi;
            }
        }
    }
    tau
}

/// Forms the thin `Q` (m×p, column-major) from reflectors left by
/// [`householder_in_place`].
pub(crate) fn form_q(reflectors: &[Vec<f64>], tau: &[f64], m: usize) -> Vec<Vec<f64>> {
    let p = reflectors.len();
    let mut q: Vec<Vec<f64>> = (0..p)
        .map(|j| {
            let mut e = vec![0.0; m];
            e[j] = 1.0;
            e
        })
        .collect();
    for j in (0..p).rev() {
        if tau[j] == 0.0 {
            continue;
        }
        let v = &reflectors[j];
        for c in q[j..].iter_mut() {
            let w = tau[j] * (c[j] + dot(&v[j + 1..], &c[j + 1..]));
            c[j] -= w;
            for (ci, vi) in c[j + 1..].iter_mut().zip(&v[j + 1..]) {
                *ci -= w * vi;
            }
        }
    }
    q
}

pub(crate) fn upper_triangle(cols: &[Vec<f64>]) -> DenseMatrix {
    let p = cols.len();
    let mut r = DenseMatrix::zeros(p, p);
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().take(j + 1).enumerate() {
            r.set(i, j, v);
        }
    }
    r
}

/// Thin Householder QR of a matrix with at least as many rows as columns.
/// Rank deficiency is allowed and shows up as zeros on the diagonal of `R`.
pub fn qr(a: &DenseMatrix) -> Result<QrFactors> {
    let (m, p) = a.shape();
    if m < p {
        return Err(Error::InvalidParameter(format!(
            "qr needs rows >= cols, got {m}x{p}"
        )));
    }
    let mut cols = a.to_columns();
    let tau = householder_in_place(&mut cols);
    let r = upper_triangle(&cols);
    let q = DenseMatrix::from_column_vecs(m, &form_q(&cols, &tau, m));
    Ok(QrFactors { q, r })
}
