//! Deterministic dense factorizations: Householder QR, the Givens rank-one
//! QR update and a one-sided Jacobi SVD.

mod qr;
mod svd;
mod update;

pub use qr::{qr, QrFactors};
pub use svd::{svd_exact_truncated, svd_small, SvdFactors};
pub use update::qr_rank1_update;
