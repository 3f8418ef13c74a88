use super::qr::QrFactors;
use crate::error::{Error, Result};
use crate::matrix::{axpy, dot, norm2, DenseMatrix};

/// Plane rotation `[c s; -s c]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: f64, b: f64) -> (f64, f64) {
    if b == 0.0 {
        return (1.0, 0.0);
    }
    let r = a.hypot(b);
    (a / r, b / r)
}

/// Applies the rotation to rows `i` and `i + 1` of column-major `r`,
/// starting at column `from`.
fn rotate_rows(r: &mut [Vec<f64>], i: usize, from: usize, c: f64, s: f64) {
    for col in r[from..].iter_mut() {
        let (x, y) = (col[i], col[i + 1]);
        col[i] = c * x + s * y;
        col[i + 1] = -s * x + c * y;
    }
}

/// Applies the transposed rotation to columns `i` and `i + 1` of `q`, so
/// that `Q·R` is unchanged.
fn rotate_cols(q: &mut [Vec<f64>], i: usize, c: f64, s: f64) {
    let (a, b) = q.split_at_mut(i + 1);
    for (x, y) in a[i].iter_mut().zip(b[0].iter_mut()) {
        let (xv, yv) = (*x, *y);
        *x = c * xv + s * yv;
        *y = -s * xv + c * yv;
    }
}

/// Factors of `Q·R + u·vᵀ`, obtained by updating `F` with Givens rotations
/// rather than refactorizing.
///
/// For thin factors the part of `u` outside `range(Q)` is split off as an
/// extra orthonormal column, the augmented system is updated in O(m·p)
/// rotations work, and the trailing (zero) row of the result is dropped.
pub fn qr_rank1_update(f: &QrFactors, u: &[f64], v: &[f64]) -> Result<QrFactors> {
    let (m, p) = f.q.shape();
    if u.len() != m || v.len() != p {
        return Err(Error::DimensionMismatch {
            op: "qr_rank1_update",
            left: (m, p),
            right: (u.len(), v.len()),
        });
    }
    let mut q = f.q.to_columns();
    // R as columns of length p + 1; the last entry is the augmented row.
    let mut r: Vec<Vec<f64>> = (0..p)
        .map(|j| {
            let mut c = f.r.column(j);
            c.push(0.0);
            c
        })
        .collect();

    // w = Qᵀu, residual = u − Qw, with one reorthogonalization pass.
    let mut w: Vec<f64> = q.iter().map(|qc| dot(qc, u)).collect();
    let mut resid = u.to_vec();
    for (qc, &wc) in q.iter().zip(&w) {
        axpy(-wc, qc, &mut resid);
    }
    for (qc, wc) in q.iter().zip(w.iter_mut()) {
        let corr = dot(qc, &resid);
        axpy(-corr, qc, &mut resid);
        *wc += corr;
    }
    let rho = norm2(&resid);
    let unorm = norm2(u);
    let augmented = rho > 64.0 * f64::EPSILON * unorm;
    if augmented {
        resid.iter_mut().for_each(|e| *e /= rho);
        q.push(resid);
        w.push(rho);
    } else {
        q.push(vec![0.0; m]);
        w.push(0.0);
    }

    // Reduce w to a multiple of e1, bottom-up; R picks up a subdiagonal.
    for i in (0..p).rev() {
        let (c, s) = givens(w[i], w[i + 1]);
        if s == 0.0 {
            continue;
        }
        w[i] = c * w[i] + s * w[i + 1];
        w[i + 1] = 0.0;
        rotate_rows(&mut r, i, i, c, s);
        rotate_cols(&mut q, i, c, s);
    }

    // R + w₀·e₁vᵀ is upper Hessenberg.
    for (col, &vj) in r.iter_mut().zip(v) {
        col[0] += w[0] * vj;
    }

    // Restore triangular form.
    for i in 0..p {
        let (c, s) = givens(r[i][i], r[i][i + 1]);
        if s == 0.0 {
            continue;
        }
        rotate_rows(&mut r, i, i, c, s);
        r[i][i + 1] = 0.0;
        rotate_cols(&mut q, i, c, s);
    }

    q.pop();
    let q = DenseMatrix::from_column_vecs(m, &q);
    let mut rm = DenseMatrix::zeros(p, p);
    for (j, col) in r.iter().enumerate() {
        for i in 0..=j {
            rm.set(i, j, col[i]);
        }
    }
    Ok(QrFactors { q, r: rm })
}
