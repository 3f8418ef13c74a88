//! Repeated-trial comparison of S-RSVD against plain RSVD.
//!
//! For every trial the data matrix is generated (or loaded) once, and every
//! algorithm in every `(k, q)` cell runs on that matrix with the same sketch
//! seed. The only input that differs is the shift. Errors are measured
//! against the original data, adding the mean back where the factorization
//! was of a centered matrix.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{center_explicitly, column_mean, DataMatrix, LinearOperator};
use crate::pca::{win_rate_slices, PcaModel};
use crate::rng::mix;
use crate::rsvd::{rsvd, shifted_rsvd, RsvdParams};
use crate::stats::{generate, paired_t_test, Distribution, DistributionSpec};

/// k values behind every MSE-SUM. Stops at 50 so that `K = 2k` fits 100-row
/// data.
pub const MSE_SUM_KS: [usize; 10] = [1, 2, 3, 4, 5, 10, 20, 30, 40, 50];

#[derive(Debug, Clone)]
pub enum DataSource {
    /// Fresh i.i.d. data for every trial.
    Synthetic { dist: Distribution, rows: usize, cols: usize },
    /// The same matrix in every trial; only the sketch seed changes.
    Fixed { name: String, data: Arc<DataMatrix> },
}

impl DataSource {
    pub fn name(&self) -> String {
        match self {
            DataSource::Synthetic { dist, .. } => dist.name().to_string(),
            DataSource::Fixed { name, .. } => name.clone(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            DataSource::Synthetic { rows, cols, .. } => (*rows, *cols),
            DataSource::Fixed { data, .. } => data.shape(),
        }
    }

    fn materialize(&self, seed: u64) -> Result<Arc<DataMatrix>> {
        match self {
            DataSource::Synthetic { dist, rows, cols } => {
                let spec = DistributionSpec { dist: *dist, rows: *rows, cols: *cols, seed };
                Ok(Arc::new(DataMatrix::Dense(generate(&spec)?)))
            }
            DataSource::Fixed { data, .. } => Ok(Arc::clone(data)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    /// Shifted RSVD with the column mean.
    Srsvd,
    /// Unshifted RSVD.
    Rsvd,
    /// RSVD of the explicitly centered matrix, mean added back.
    Explicit,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Srsvd => "srsvd",
            Algorithm::Rsvd => "rsvd",
            Algorithm::Explicit => "exact",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompareConfig {
    pub sources: Vec<DataSource>,
    pub ks: Vec<usize>,
    pub qs: Vec<usize>,
    pub trials: usize,
    /// Sketch width is `ceil(oversample · k)`.
    pub oversample: f64,
    pub explicit: bool,
    pub seed: u64,
}

impl CompareConfig {
    pub fn new(sources: Vec<DataSource>, ks: Vec<usize>, qs: Vec<usize>, trials: usize, seed: u64) -> Self {
        CompareConfig {
            sources,
            ks,
            qs,
            trials,
            oversample: 2.0,
            explicit: false,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.sources.is_empty() || self.ks.is_empty() || self.qs.is_empty() {
            return Err(Error::param("need at least one data source, k and q"));
        }
        for s in &self.sources {
            let (m, n) = s.shape();
            for &k in &self.ks {
                let p = RsvdParams::with_oversample(k, self.oversample, 0, 0)?;
                if p.sketch > m.min(n) {
                    return Err(Error::param(format!(
                        "k = {k} needs sketch width {} but {} is {m}x{n}",
                        p.sketch,
                        s.name()
                    )));
                }
            }
        }
        Ok(())
    }

    fn algorithms(&self) -> Vec<Algorithm> {
        let mut a = vec![Algorithm::Srsvd, Algorithm::Rsvd];
        if self.explicit {
            a.push(Algorithm::Explicit);
        }
        a
    }
}

/// One algorithm run in one `(source, trial, k, q)` cell.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub source: usize,
    pub trial: usize,
    /// Seed of the sketch, shared by all algorithms in the trial.
    pub seed: u64,
    /// FNV-1a hash of the data the run consumed.
    pub data_hash: u64,
    pub k: usize,
    pub q: usize,
    pub algorithm: Algorithm,
    pub mse: f64,
    pub per_column: Vec<f64>,
    pub elapsed: Duration,
}

/// Statistics over all trials of one `(source, k, q)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub source: usize,
    pub k: usize,
    pub q: usize,
    pub mse_srsvd: f64,
    pub mse_rsvd: f64,
    pub mse_explicit: Option<f64>,
    /// Paired t-test on the per-trial MSE pairs.
    pub t1: f64,
    pub p1: f64,
    /// Paired t-test on the per-column errors pooled over trials.
    pub t2: f64,
    pub p2: f64,
    /// Pooled per-column win-rates.
    pub wr_srsvd: f64,
    pub wr_rsvd: f64,
}

/// Sums of the cell means over `k` for one `(source, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SumSummary {
    pub source: usize,
    pub q: usize,
    pub srsvd: f64,
    pub rsvd: f64,
    pub explicit: Option<f64>,
}

impl SumSummary {
    /// `MSE-SUM(S-RSVD) − MSE-SUM(RSVD)`; negative when S-RSVD is better.
    pub fn diff(&self) -> f64 {
        self.srsvd - self.rsvd
    }
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub config: CompareConfig,
    pub records: Vec<TrialRecord>,
    pub cells: Vec<CellSummary>,
    pub sums: Vec<SumSummary>,
}

/// 64-bit FNV-1a over the row-major bit patterns.
pub fn data_hash<M: LinearOperator + ?Sized>(x: &M) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    for b in (x.rows() as u64).to_le_bytes().into_iter().chain((x.cols() as u64).to_le_bytes()) {
        eat(b);
    }
    let mut row = vec![0.0; x.cols()];
    for i in 0..x.rows() {
        x.dense_row(i, &mut row);
        for v in &row {
            v.to_bits().to_le_bytes().into_iter().for_each(&mut eat);
        }
    }
    h
}

fn run_unit(cfg: &CompareConfig, source: usize, trial: usize) -> Result<Vec<TrialRecord>> {
    let trial_seed = mix(cfg.seed, trial as u64);
    let data_seed = mix(trial_seed, 0);
    let seed = mix(trial_seed, 1);
    let x = cfg.sources[source].materialize(data_seed)?;
    let x: &DataMatrix = &x;
    let hash = data_hash(x);
    let mean = column_mean(x);
    let centered = if cfg.explicit {
        Some(DataMatrix::Dense(center_explicitly(&x.to_dense(), &mean)?))
    } else {
        None
    };

    let mut out = Vec::new();
    for &q in &cfg.qs {
        for &k in &cfg.ks {
            let params = RsvdParams::with_oversample(k, cfg.oversample, q, seed)?;
            for alg in cfg.algorithms() {
                let model = match alg {
                    Algorithm::Srsvd => PcaModel::from_result(shifted_rsvd(x, &mean, &params)?),
                    Algorithm::Rsvd => PcaModel::from_result(rsvd(x, &params)?),
                    Algorithm::Explicit => {
                        let c = centered.as_ref().expect("centered when explicit");
                        PcaModel::with_mean(mean.clone(), rsvd(c, &params)?)
                    }
                };
                let (err, elapsed) = {
                    let start = std::time::Instant::now();
                    let e = model.reconstruction_errors(x)?;
                    (e, start.elapsed())
                };
                out.push(TrialRecord {
                    source,
                    trial,
                    seed,
                    data_hash: hash,
                    k,
                    q,
                    algorithm: alg,
                    mse: err.mse,
                    per_column: err.per_column,
                    elapsed,
                });
            }
        }
    }
    Ok(out)
}

pub fn run_comparison(cfg: &CompareConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    let units: Vec<(usize, usize)> = (0..cfg.sources.len())
        .flat_map(|s| (0..cfg.trials).map(move |t| (s, t)))
        .collect();
    let chunks = units
        .par_iter()
        .map(|&(s, t)| run_unit(cfg, s, t))
        .collect::<Result<Vec<_>>>()?;
    let records: Vec<TrialRecord> = chunks.into_iter().flatten().collect();
    let (cells, sums) = summarize(cfg, &records)?;
    Ok(ComparisonReport {
        config: cfg.clone(),
        records,
        cells,
        sums,
    })
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    s / n as f64
}

fn summarize(cfg: &CompareConfig, records: &[TrialRecord]) -> Result<(Vec<CellSummary>, Vec<SumSummary>)> {
    let mut cells = Vec::new();
    let mut sums = Vec::new();
    for source in 0..cfg.sources.len() {
        for &q in &cfg.qs {
            let mut sum = SumSummary {
                source,
                q,
                srsvd: 0.0,
                rsvd: 0.0,
                explicit: cfg.explicit.then_some(0.0),
            };
            for &k in &cfg.ks {
                let pick = |alg: Algorithm| -> Vec<&TrialRecord> {
                    records
                        .iter()
                        .filter(|r| r.source == source && r.k == k && r.q == q && r.algorithm == alg)
                        .collect()
                };
                let (s, r) = (pick(Algorithm::Srsvd), pick(Algorithm::Rsvd));
                let mse_s: Vec<f64> = s.iter().map(|r| r.mse).collect();
                let mse_r: Vec<f64> = r.iter().map(|r| r.mse).collect();
                let col_s: Vec<f64> = s.iter().flat_map(|r| r.per_column.iter().copied()).collect();
                let col_r: Vec<f64> = r.iter().flat_map(|r| r.per_column.iter().copied()).collect();
                let (t1, p1) = if mse_s.len() >= 2 {
                    let t = paired_t_test(&mse_s, &mse_r)?;
                    (t.t, t.p)
                } else {
                    (f64::NAN, f64::NAN)
                };
                let t2 = paired_t_test(&col_s, &col_r)?;
                let (wr_srsvd, wr_rsvd) = win_rate_slices(&col_s, &col_r)?;
                let mse_explicit = cfg
                    .explicit
                    .then(|| mean(pick(Algorithm::Explicit).iter().map(|r| r.mse)));
                let cell = CellSummary {
                    source,
                    k,
                    q,
                    mse_srsvd: mean(mse_s.iter().copied()),
                    mse_rsvd: mean(mse_r.iter().copied()),
                    mse_explicit,
                    t1,
                    p1,
                    t2: t2.t,
                    p2: t2.p,
                    wr_srsvd,
                    wr_rsvd,
                };
                sum.srsvd += cell.mse_srsvd;
                sum.rsvd += cell.mse_rsvd;
                if let (Some(acc), Some(e)) = (sum.explicit.as_mut(), cell.mse_explicit) {
                    *acc += e;
                }
                cells.push(cell);
            }
            sums.push(sum);
        }
    }
    Ok((cells, sums))
}

impl ComparisonReport {
    pub fn cell(&self, source: usize, k: usize, q: usize) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.source == source && c.k == k && c.q == q)
    }

    pub fn sum(&self, source: usize, q: usize) -> Option<&SumSummary> {
        self.sums.iter().find(|s| s.source == source && s.q == q)
    }

    /// Trial rows followed by `# `-prefixed aggregate blocks. Elapsed times
    /// are only included when `timings` is set, so the default output is
    /// byte-identical across runs.
    pub fn to_csv(&self, timings: bool) -> String {
        let mut out = String::new();
        out.push_str("dataset,rows,cols,trial,seed,data_hash,k,q,algorithm,mse");
        out.push_str(if timings { ",elapsed_ms\n" } else { "\n" });
        for r in &self.records {
            let src = &self.config.sources[r.source];
            let (m, n) = src.shape();
            write!(
                out,
                "{},{m},{n},{},{},{:016x},{},{},{},{}",
                src.name(),
                r.trial,
                r.seed,
                r.data_hash,
                r.k,
                r.q,
                r.algorithm.tag(),
                r.mse
            )
            .unwrap();
            if timings {
                write!(out, ",{:.3}", r.elapsed.as_secs_f64() * 1e3).unwrap();
            }
            out.push('\n');
        }
        let c = &self.config;
        writeln!(out, "# master_seed={} trials={} oversample={} explicit={}", c.seed, c.trials, c.oversample, c.explicit).unwrap();
        out.push_str("# cell,dataset,rows,cols,k,q,mse_srsvd,mse_rsvd,mse_explicit,t1,p1,t2,p2,wr_srsvd,wr_rsvd\n");
        for cell in &self.cells {
            let src = &c.sources[cell.source];
            let (m, n) = src.shape();
            writeln!(
                out,
                "# cell,{},{m},{n},{},{},{},{},{},{},{:e},{},{:e},{},{}",
                src.name(),
                cell.k,
                cell.q,
                cell.mse_srsvd,
                cell.mse_rsvd,
                opt(cell.mse_explicit),
                cell.t1,
                cell.p1,
                cell.t2,
                cell.p2,
                cell.wr_srsvd,
                cell.wr_rsvd
            )
            .unwrap();
        }
        out.push_str("# sum,dataset,rows,cols,q,mse_sum_srsvd,mse_sum_rsvd,mse_sum_explicit,diff\n");
        for s in &self.sums {
            let src = &c.sources[s.source];
            let (m, n) = src.shape();
            writeln!(
                out,
                "# sum,{},{m},{n},{},{},{},{},{}",
                src.name(),
                s.q,
                s.srsvd,
                s.rsvd,
                opt(s.explicit),
                s.diff()
            )
            .unwrap();
        }
        out
    }

    /// Plot-ready CSV for one of the figures `1a`..`1f`.
    pub fn figure_csv(&self, figure: Figure) -> Result<String> {
        let mut out = String::new();
        let first_q = self.config.qs[0];
        match figure {
            Figure::A => {
                out.push_str("k,srsvd,rsvd\n");
                for &k in &self.config.ks {
                    let c = self.cell(0, k, first_q).expect("cell exists");
                    writeln!(out, "{k},{},{}", c.mse_srsvd, c.mse_rsvd).unwrap();
                }
            }
            Figure::B => {
                out.push_str("n,srsvd,rsvd\n");
                for (i, src) in self.config.sources.iter().enumerate() {
                    let s = self.sum(i, first_q).expect("sum exists");
                    writeln!(out, "{},{},{}", src.shape().1, s.srsvd, s.rsvd).unwrap();
                }
            }
            Figure::C | Figure::D => {
                let explicit = figure == Figure::D;
                if explicit && !self.config.explicit {
                    return Err(Error::param("figure 1d needs a run with --explicit"));
                }
                out.push_str(if explicit { "distribution,srsvd,explicit\n" } else { "distribution,srsvd,rsvd\n" });
                for (i, src) in self.config.sources.iter().enumerate() {
                    let s = self.sum(i, first_q).expect("sum exists");
                    let other = if explicit { s.explicit.expect("explicit run") } else { s.rsvd };
                    writeln!(out, "{},{},{}", src.name(), s.srsvd, other).unwrap();
                }
            }
            Figure::E => {
                out.push_str("q,srsvd,rsvd\n");
                for &q in &self.config.qs {
                    let s = self.sum(0, q).expect("sum exists");
                    writeln!(out, "{q},{},{}", s.srsvd, s.rsvd).unwrap();
                }
            }
            Figure::F => {
                out.push_str("distribution,q,diff\n");
                for (i, src) in self.config.sources.iter().enumerate() {
                    for &q in &self.config.qs {
                        let s = self.sum(i, q).expect("sum exists");
                        writeln!(out, "{},{q},{}", src.name(), s.diff()).unwrap();
                    }
                }
            }
        }
        Ok(out)
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl std::str::FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches('1').to_ascii_lowercase().as_str() {
            "a" => Ok(Figure::A),
            "b" => Ok(Figure::B),
            "c" => Ok(Figure::C),
            "d" => Ok(Figure::D),
            "e" => Ok(Figure::E),
            "f" => Ok(Figure::F),
            _ => Err(Error::param(format!("unknown figure '{s}', expected 1a..1f"))),
        }
    }
}
