use proptest::prelude::*;
use srsvd::stats::{generate, Distribution, DistributionSpec};
use srsvd::{column_mean, shifted_rsvd, DataMatrix, DenseMatrix, LinearOperator, PcaModel, PcaOptions, Vector};
use crate::support::{config, fro, fro_diff, gaussian, sparse_random, MASTER_SEED};

fn operand(m: usize, n: usize, sparse: bool, seed: u64) -> DataMatrix {
    if sparse {
        sparse_random(m, n, 0.3, seed).into()
    } else {
        let g = gaussian(m, n, seed);
        // Offset rows so the mean matters.
        DenseMatrix::from_fn(m, n, |i, j| g.get(i, j) + i as f64).unwrap().into()
    }
}

fn case() -> impl Strategy<Value = (usize, usize, usize, usize, bool, u64)> {
    (3usize..=30, 0usize..=40, 0usize..=2, any::<bool>(), any::<u64>())
        .prop_flat_map(|(m, extra, q, sparse, seed)| (1usize..=m / 2).prop_map(move |k| (m, m + extra, k, q, sparse, seed)))
}

proptest! {
    #![proptest_config(config(120))]

        fn scores_equal_sigma_times_right_factors((m, n, k, q, sparse, seed) in case()) {
        let x = operand(m, n, sparse, seed);
        let mu = column_mean(&x);
        let opts = PcaOptions { power_iters: q, seed, ..PcaOptions::default() };
        let r = shifted_rsvd(&x, &mu, &opts.params(k).unwrap()).unwrap();
        let sv = r.factors.v.scale_columns(&r.factors.sigma).transpose();
        let model = PcaModel::from_result(r);
        let scores = model.transform(&x).unwrap();
        let d = x.to_dense();
        let xc = DenseMatrix::from_fn(m, n, |i, j| d.get(i, j) - mu[i]).unwrap();
        prop_assert!(fro_diff(&scores, &sv) <= 1e-6 * fro(&xc));
    }

        fn error_report_is_consistent((m, n, k, q, sparse, seed) in case()) {
        let x = operand(m, n, sparse, seed);
        let opts = PcaOptions { power_iters: q, seed, ..PcaOptions::default() };
        let model = PcaModel::fit(&x, k, &opts).unwrap();
        let e = model.reconstruction_errors(&x).unwrap();
        let mean = e.per_column.iter().sum::<f64>() / n as f64;
        prop_assert!((e.mse - mean).abs() <= 1e-12 * mean.abs().max(f64::MIN_POSITIVE));

        // Same errors when recomputed from the dense reconstruction.
        let recon = model.inverse_transform(&model.transform(&x).unwrap()).unwrap();
        let d = x.to_dense();
        for j in 0..n {
            let direct: f64 = (0..m).map(|i| (d.get(i, j) - recon.get(i, j)).powi(2)).sum();
            prop_assert!((direct - e.per_column[j]).abs() <= 1e-9 * (1.0 + direct));
        }
    }

        fn reconstruction_is_a_projection((m, n, k, q, sparse, seed) in case()) {
        let x = operand(m, n, sparse, seed);
        let opts = PcaOptions { power_iters: q, seed, ..PcaOptions::default() };
        let model = PcaModel::fit(&x, k, &opts).unwrap();
        let once = model.inverse_transform(&model.transform(&x).unwrap()).unwrap();
        let twice = model.inverse_transform(&model.transform(&once).unwrap()).unwrap();
        prop_assert!(fro_diff(&once, &twice) <= 1e-10 * fro(&once));
    }
}

fn mean_shift_lowers_mse_on_uniform_data() {
    for k in [1, 2, 5, 10] {
        let (mut shifted, mut plain) = (0.0, 0.0);
        for t in 0..30u64 {
            let spec = DistributionSpec {
                dist: Distribution::Uniform { low: 0.0, high: 1.0 },
                rows: 100,
                cols: 1000,
                seed: MASTER_SEED.wrapping_add(t),
            };
            let x = generate(&spec).unwrap();
            let opts = PcaOptions { seed: t, ..PcaOptions::default() };
            shifted += PcaModel::fit(&x, k, &opts).unwrap().reconstruction_errors(&x).unwrap().mse;
            plain += PcaModel::fit_with_shift(&x, Vector::zeros(100), k, &opts)
                .unwrap()
                .reconstruction_errors(&x)
                .unwrap()
                .mse;
        }
        assert!(shifted < plain, "k={k}: {shifted} vs {plain}");
    }
}

pub const CHECKS: &[(&str, fn())] = &[
    ("scores_equal_sigma_times_right_factors", scores_equal_sigma_times_right_factors),
    ("error_report_is_consistent", error_report_is_consistent),
    ("reconstruction_is_a_projection", reconstruction_is_a_projection),
    ("mean_shift_lowers_mse_on_uniform_data", mean_shift_lowers_mse_on_uniform_data),
];
