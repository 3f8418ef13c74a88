//! Shifted randomized singular value decomposition.
//!
//! Computes a rank-`k` SVD of `X - mu 1^T` for dense or sparse `X` without
//! ever allocating the shifted matrix, plus a PCA facade, synthetic data
//! generators, paired t-tests and the comparison harness used by the
//! `srsvd` command-line tool.

pub mod cooc;
pub mod decomp;
pub mod error;
pub mod experiment;
pub mod io;
pub mod matrix;
pub mod pca;
pub mod rng;
pub mod rsvd;
pub mod stats;

pub use decomp::{qr, qr_rank1_update, svd_exact_truncated, svd_small, QrFactors, SvdFactors};
pub use error::{Error, Result};
pub use matrix::{
    column_mean, frobenius_norm, spectral_norm_est, DataMatrix, DenseMatrix, LinearOperator,
    ShiftedOperator, SparseMatrix, Vector,
};

pub use pca::{win_rate, ErrorReport, PcaModel, PcaOptions};
pub use rsvd::{error_bound, reconstruct, rsvd, shifted_rsvd, RsvdParams, SvdResult};
