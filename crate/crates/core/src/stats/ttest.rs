use super::special::regularized_incomplete_beta;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    pub t: f64,
    pub dof: usize,
    /// Two-sided p-value.
    pub p: f64,
    /// Set when the differences have zero variance but a nonzero mean; `t`
    /// is then infinite and `p` is reported as 0.
    pub degenerate: bool,
}

/// Two-sided tail probability `P(|T| ≥ |t|)` of Student's t with `dof`
/// degrees of freedom, `I_{ν/(ν+t²)}(ν/2, 1/2)`.
pub fn t_sf(t: f64, dof: usize) -> f64 {
    let nu = dof.max(1) as f64;
    if t.is_infinite() {
        return 0.0;
    }
    let x = nu / (nu + t * t);
    regularized_incomplete_beta(nu / 2.0, 0.5, x).clamp(0.0, 1.0)
}

/// Paired t-test on `d = a − b` with `n − 1` degrees of freedom.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TTestResult> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            op: "paired_t_test",
            left: (a.len(), 1),
            right: (b.len(), 1),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::param("paired t-test needs at least two pairs"));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    let dof = n - 1;
    if var == 0.0 {
        return Ok(if mean == 0.0 {
            TTestResult { t: 0.0, dof, p: 1.0, degenerate: false }
        } else {
            TTestResult {
                t: f64::INFINITY.copysign(mean),
                dof,
                p: 0.0,
                degenerate: true,
            }
        });
    }
    let t = mean / (var / n as f64).sqrt();
    Ok(TTestResult {
        t,
        dof,
        p: t_sf(t, dof),
        degenerate: false,
    })
}
