use proptest::prelude::*;
use srsvd::stats::{generate, Distribution, DistributionSpec};
use srsvd::{column_mean, rsvd, shifted_rsvd, svd_small, DataMatrix, DenseMatrix, RsvdParams, Vector};
use crate::support::{config, fro, gaussian, gaussian_vec, orthonormality_defect, sparse_random, MASTER_SEED};

fn centered(x: &DenseMatrix, mu: &[f64]) -> DenseMatrix {
    DenseMatrix::from_fn(x.rows(), x.cols(), |i, j| x.get(i, j) - mu[i]).unwrap()
}

/// Shapes with `m ≤ n` and `k < K ≤ m`.
fn case() -> impl Strategy<Value = (usize, usize, usize, usize, usize, u64)> {
    (2usize..=40, 0usize..=30, 0usize..=3, any::<u64>()).prop_flat_map(|(m, extra, q, seed)| {
        let (n, lim) = (m + extra, m);
        (1usize..lim).prop_flat_map(move |k| (k + 1..=lim).prop_map(move |big_k| (m, n, k, big_k, q, seed)))
    })
}

proptest! {
    #![proptest_config(config(150))]

        fn factors_are_orthonormal((m, n, k, big_k, q, seed) in case(), shift_kind in 0u8..3, sparse in any::<bool>()) {
        let x: DataMatrix = if sparse {
            sparse_random(m, n, 0.3, seed).into()
        } else {
            gaussian(m, n, seed).into()
        };
        let mu = match shift_kind {
            0 => Vector::zeros(m),
            1 => column_mean(&x),
            _ => Vector::new(gaussian_vec(m, seed ^ 7)).unwrap(),
        };
        let p = RsvdParams::new(k, big_k, q, seed).unwrap();
        let r = shifted_rsvd(&x, &mu, &p).unwrap();
        prop_assert_eq!(r.factors.rank(), k);
        prop_assert!(orthonormality_defect(&r.factors.u) <= 1e-8);
        prop_assert!(orthonormality_defect(&r.factors.v) <= 1e-8);
        prop_assert!(r.factors.sigma.windows(2).all(|w| w[0] >= w[1]));
    }

        fn tall_inputs_are_orthonormal((m, n, k, big_k, q, seed) in case()) {
        // m ≤ n from the strategy, so the transpose is tall.
        let x = gaussian(m, n, seed).transpose();
        let r = rsvd(&x, &RsvdParams::new(k, big_k, q, seed).unwrap()).unwrap();
        prop_assert_eq!(r.factors.u.rows(), n);
        prop_assert!(orthonormality_defect(&r.factors.u) <= 1e-8);
        prop_assert!(orthonormality_defect(&r.factors.v) <= 1e-8);
    }

        fn seed_determinism((m, n, k, big_k, q, seed) in case()) {
        let x = gaussian(m, n, seed);
        let mu = column_mean(&x);
        let p = RsvdParams::new(k, big_k, q, seed).unwrap();
        let a = shifted_rsvd(&x, &mu, &p).unwrap();
        let b = shifted_rsvd(&x, &mu, &p).unwrap();
        prop_assert_eq!(a.factors, b.factors);
    }

        fn zero_shift_reduces_to_rsvd((m, n, k, big_k, q, seed) in case()) {
        let x = gaussian(m, n, seed);
        let p = RsvdParams::new(k, big_k, q, seed).unwrap();
        let a = shifted_rsvd(&x, &Vector::zeros(m), &p).unwrap();
        let b = rsvd(&x, &p).unwrap();
        prop_assert_eq!(a.factors, b.factors);
    }
}

proptest! {
    #![proptest_config(config(40))]

        fn singular_values_do_not_overshoot(
        m in 4usize..=60, extra in 0usize..=80, q in 3usize..=4, shift in any::<bool>(), seed in any::<u64>(),
    ) {
        let n = m + extra;
        let x = gaussian(m, n, seed);
        let mu = if shift { column_mean(&x) } else { Vector::zeros(m) };
        let k = (m / 4).max(1);
        let r = shifted_rsvd(&x, &mu, &RsvdParams::new(k, 2 * k, q, seed).unwrap()).unwrap();
        let exact = svd_small(&centered(&x, &mu)).unwrap();
        for j in 0..k {
            prop_assert!(r.factors.sigma[j] <= exact.sigma[j] * (1.0 + 1e-6), "j={} {} > {}", j, r.factors.sigma[j], exact.sigma[j]);
        }
    }
}

/// Mean Frobenius error over 30 seeds for q = 0, 1, 2.
fn mean_errors(x: &DenseMatrix, k: usize) -> [f64; 3] {
    let mu = column_mean(x);
    let xc = centered(x, &mu);
    let mut out = [0.0; 3];
    for (q, slot) in out.iter_mut().enumerate() {
        let mut total = 0.0;
        for t in 0..30 {
            let p = RsvdParams::new(k, 2 * k, q, MASTER_SEED ^ t).unwrap();
            let r = shifted_rsvd(x, &mu, &p).unwrap();
            total += fro(&xc.sub(&r.factors.reconstruct()).unwrap());
        }
        *slot = total / 30.0;
    }
    out
}

fn power_iterations_do_not_hurt_on_average() {
    let dists = [
        Distribution::Uniform { low: 0.0, high: 1.0 },
        Distribution::Normal { mean: 0.0, sd: 1.0 },
        Distribution::Zipf { exponent: 1.5, support: 1000 },
        Distribution::Poisson { rate: 4.0 },
    ];
    for (i, dist) in dists.into_iter().enumerate() {
        let x = generate(&DistributionSpec { dist, rows: 100, cols: 200, seed: MASTER_SEED + i as u64 }).unwrap();
        for k in [2, 10] {
            let e = mean_errors(&x, k);
            assert!(e[1] <= e[0] * 1.001 && e[2] <= e[1] * 1.001, "{dist} k={k}: {e:?}");
        }
    }
}

pub const CHECKS: &[(&str, fn())] = &[
    ("factors_are_orthonormal", factors_are_orthonormal),
    ("tall_inputs_are_orthonormal", tall_inputs_are_orthonormal),
    ("seed_determinism", seed_determinism),
    ("zero_shift_reduces_to_rsvd", zero_shift_reduces_to_rsvd),
    ("singular_values_do_not_overshoot", singular_values_do_not_overshoot),
    ("power_iterations_do_not_hurt_on_average", power_iterations_do_not_hurt_on_average),
];
