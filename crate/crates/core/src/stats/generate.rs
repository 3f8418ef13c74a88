use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::rng::Stream;

/// Entry distribution of a synthetic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    /// Uniform on `[low, high)`.
    Uniform { low: f64, high: f64 },
    /// Gaussian via Box-Muller.
    Normal { mean: f64, sd: f64 },
    /// `P(r) ∝ r^(−exponent)` on `1..=support`, by inverse CDF.
    Zipf { exponent: f64, support: usize },
    /// Poisson by sequential inversion; rates above 30 are rejected.
    Poisson { rate: f64 },
}

pub const POISSON_MAX_RATE: f64 = 30.0;

impl Distribution {
    pub const NAMES: [&'static str; 4] = ["uniform", "normal", "zipf", "poisson"];

    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Uniform { .. } => "uniform",
            Distribution::Normal { .. } => "normal",
            Distribution::Zipf { .. } => "zipf",
            Distribution::Poisson { .. } => "poisson",
        }
    }

    /// Builds a distribution from its name and positional parameters.
    /// Missing parameters take the defaults: uniform(0, 1), normal(0, 1),
    /// zipf(1.5, 1000), poisson(4).
    pub fn from_parts(name: &str, params: &[f64]) -> Result<Self> {
        let get = |i: usize, default: f64| params.get(i).copied().unwrap_or(default);
        let (d, arity) = match name.to_ascii_lowercase().as_str() {
            "uniform" => (Distribution::Uniform { low: get(0, 0.0), high: get(1, 1.0) }, 2),
            "normal" => (Distribution::Normal { mean: get(0, 0.0), sd: get(1, 1.0) }, 2),
            "zipf" => {
                let support = get(1, 1000.0);
                if support.fract() != 0.0 || support < 1.0 {
                    return Err(Error::param(format!("zipf support {support} must be a positive integer")));
                }
                (Distribution::Zipf { exponent: get(0, 1.5), support: support as usize }, 2)
            }
            "poisson" => (Distribution::Poisson { rate: get(0, 4.0) }, 1),
            other => {
                return Err(Error::param(format!(
                    "unknown distribution '{other}', expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        if params.len() > arity {
            return Err(Error::param(format!("{name} takes at most {arity} parameters")));
        }
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Distribution::Uniform { low, high } => low.is_finite() && high.is_finite() && low < high,
            Distribution::Normal { mean, sd } => mean.is_finite() && sd.is_finite() && sd > 0.0,
            Distribution::Zipf { exponent, support } => exponent.is_finite() && exponent > 1.0 && support >= 1,
            Distribution::Poisson { rate } => rate > 0.0 && rate <= POISSON_MAX_RATE,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(format!("invalid parameters for {self}")))
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Uniform { low, high } => write!(f, "uniform({low}, {high})"),
            Distribution::Normal { mean, sd } => write!(f, "normal({mean}, {sd})"),
            Distribution::Zipf { exponent, support } => write!(f, "zipf({exponent}, {support})"),
            Distribution::Poisson { rate } => write!(f, "poisson({rate})"),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    /// `name` or `name:p1,p2`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::param(format!("bad distribution parameter '{p}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Distribution::from_parts(name.trim(), &params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    pub dist: Distribution,
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
}

/// i.i.d. entries from `spec.dist`, filled row by row from `spec.seed`.
pub fn generate(spec: &DistributionSpec) -> Result<DenseMatrix> {
    spec.dist.validate()?;
    if spec.rows == 0 || spec.cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut s = Stream::new(spec.seed);
    let n = spec.rows * spec.cols;
    let data: Vec<f64> = match spec.dist {
        Distribution::Uniform { low, high } => (0..n).map(|_| low + (high - low) * s.uniform()).collect(),
        Distribution::Normal { mean, sd } => (0..n).map(|_| mean + sd * s.gaussian()).collect(),
        Distribution::Zipf { exponent, support } => {
            let mut cdf: Vec<f64> = (1..=support).map(|r| (r as f64).powf(-exponent)).collect();
            let mut acc = 0.0;
            for c in cdf.iter_mut() {
                acc += *c;
                *c = acc;
            }
            cdf.iter_mut().for_each(|c| *c /= acc);
            cdf[support - 1] = 1.0;
            (0..n)
                .map(|_| {
                    let u = s.uniform();
                    (cdf.partition_point(|&c| c <= u) + 1) as f64
                })
                .collect()
        }
        Distribution::Poisson { rate } => {
            let p0 = (-rate).exp();
            (0..n)
                .map(|_| {
                    let u = s.uniform();
                    let (mut k, mut p, mut cdf) = (0u32, p0, p0);
                    // The tail beyond a few hundred is below double resolution.
                    while u >= cdf && k < 1000 {
                        k += 1;
                        p *= rate / k as f64;
                        cdf += p;
                    }
                    k as f64
                })
                .collect()
        }
    };
    DenseMatrix::new(spec.rows, spec.cols, data)
}
