//! Synthetic data generators and the paired t-test.

mod generate;
mod special;
mod ttest;

pub use generate::{generate, Distribution, DistributionSpec};
pub use special::{ln_gamma, regularized_incomplete_beta};
pub use ttest::{paired_t_test, t_sf, TTestResult};
