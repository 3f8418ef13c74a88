use proptest::prelude::*;
use srsvd::{qr, qr_rank1_update, svd_small, DenseMatrix};
use crate::support::{config, fro, fro_diff, gaussian, gaussian_vec, orthonormal, orthonormality_defect};

fn is_upper_triangular(r: &DenseMatrix) -> bool {
    (0..r.rows()).all(|i| (0..i.min(r.cols())).all(|j| r.get(i, j) == 0.0))
}

proptest! {
    #![proptest_config(config(100))]

        fn qr_reconstructs(m in 1usize..=200, n in 1usize..=50, seed in any::<u64>()) {
        let n = n.min(m);
        let a = gaussian(m, n, seed);
        let f = qr(&a).unwrap();
        prop_assert!(fro_diff(&f.product(), &a) <= 1e-10 * fro(&a));
        prop_assert!(orthonormality_defect(f.q()) <= 1e-12);
        prop_assert!(is_upper_triangular(f.r()));
    }

        fn qr_handles_rank_deficiency(m in 2usize..=60, n in 2usize..=20, seed in any::<u64>()) {
        let n = n.min(m);
        let r = (n / 2).max(1);
        let a = gaussian(m, r, seed).matmul(&gaussian(r, n, seed ^ 1)).unwrap();
        let f = qr(&a).unwrap();
        prop_assert!(fro_diff(&f.product(), &a) <= 1e-10 * fro(&a));
    }
}

proptest! {
    #![proptest_config(config(500))]

        fn rank_one_update_reconstructs(
        m in 1usize..=60, n in 1usize..=30, in_range in any::<bool>(), seed in any::<u64>(),
    ) {
        let n = n.min(m);
        let a = gaussian(m, n, seed);
        let f = qr(&a).unwrap();
        let u = if in_range {
            a.matmul(&DenseMatrix::new(n, 1, gaussian_vec(n, seed ^ 1)).unwrap()).unwrap().into_data()
        } else {
            gaussian_vec(m, seed ^ 1)
        };
        let v = gaussian_vec(n, seed ^ 2);
        let target = DenseMatrix::from_fn(m, n, |i, j| a.get(i, j) + u[i] * v[j]).unwrap();
        let g = qr_rank1_update(&f, &u, &v).unwrap();
        prop_assert!(fro_diff(&g.product(), &target) <= 1e-10 * fro(&target));
        prop_assert!(orthonormality_defect(g.q()) <= 1e-10);
        prop_assert!(is_upper_triangular(g.r()));
    }
}

fn sigma_close(a: &[f64], b: &[f64], rel: f64) -> bool {
    let scale = a.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= rel * scale)
}

proptest! {
    #![proptest_config(config(100))]

        fn svd_invariant_under_orthogonal_maps(m in 1usize..=30, n in 1usize..=30, seed in any::<u64>()) {
        let a = gaussian(m, n, seed);
        let p = orthonormal(m, seed ^ 1);
        let q = orthonormal(n, seed ^ 2);
        let b = p.matmul(&a).unwrap().matmul(&q.transpose()).unwrap();
        let sa = svd_small(&a).unwrap();
        let sb = svd_small(&b).unwrap();
        prop_assert!(sigma_close(&sa.sigma, &sb.sigma, 1e-9), "{:?} vs {:?}", sa.sigma, sb.sigma);
    }

        fn svd_oracle_identities(m in 1usize..=30, n in 1usize..=30, seed in any::<u64>()) {
        let a = gaussian(m, n, seed);
        let f = svd_small(&a).unwrap();
        prop_assert_eq!(f.sigma.len(), m.min(n));
        prop_assert!(f.sigma.windows(2).all(|w| w[0] >= w[1]) && f.sigma.iter().all(|&s| s >= 0.0));
        prop_assert!(fro_diff(&f.reconstruct(), &a) <= 1e-12 * fro(&a) * (m.max(n) as f64));
        prop_assert!(orthonormality_defect(&f.u) <= 1e-12 && orthonormality_defect(&f.v) <= 1e-12);
        // Σσ² = ‖A‖²_F and Σσ⁴ = ‖AᵀA‖²_F, independent of the factorization.
        let s2: f64 = f.sigma.iter().map(|s| s * s).sum();
        let s4: f64 = f.sigma.iter().map(|s| s.powi(4)).sum();
        let f2 = fro(&a).powi(2);
        let g = a.t_matmul(&a).unwrap();
        prop_assert!((s2 - f2).abs() <= 1e-12 * f2);
        prop_assert!((s4 - fro(&g).powi(2)).abs() <= 1e-11 * fro(&g).powi(2));
    }

        fn svd_of_transpose_swaps_sides(m in 1usize..=25, n in 1usize..=25, seed in any::<u64>()) {
        let a = gaussian(m, n, seed);
        let f = svd_small(&a).unwrap();
        let t = svd_small(&a.transpose()).unwrap();
        prop_assert!(sigma_close(&f.sigma, &t.sigma, 1e-12));
        let r = f.sigma.len();
        for j in 0..r {
            let gap = [j.checked_sub(1), (j + 1 < r).then_some(j + 1)]
                .into_iter()
                .flatten()
                .map(|i| (f.sigma[i] - f.sigma[j]).abs())
                .fold(f64::INFINITY, f64::min);
            if f.sigma[j] < 1e-8 * f.sigma[0] || gap < 1e-3 * f.sigma[0] {
                continue;
            }
            let dot_uv: f64 = (0..m).map(|i| f.u.get(i, j) * t.v.get(i, j)).sum();
            let dot_vu: f64 = (0..n).map(|i| f.v.get(i, j) * t.u.get(i, j)).sum();
            prop_assert!((dot_uv.abs() - 1.0).abs() <= 1e-8);
            prop_assert!((dot_vu.abs() - 1.0).abs() <= 1e-8);
            prop_assert!(dot_uv * dot_vu > 0.0);
        }
    }

        fn svd_is_deterministic(m in 1usize..=30, n in 1usize..=30, seed in any::<u64>()) {
        let a = gaussian(m, n, seed);
        prop_assert_eq!(svd_small(&a).unwrap(), svd_small(&a).unwrap());
        let f = qr(&gaussian(m.max(n), m.min(n), seed)).unwrap();
        let g = qr(&gaussian(m.max(n), m.min(n), seed)).unwrap();
        prop_assert_eq!(f.product(), g.product());
    }
}

pub const CHECKS: &[(&str, fn())] = &[
    ("qr_reconstructs", qr_reconstructs),
    ("qr_handles_rank_deficiency", qr_handles_rank_deficiency),
    ("rank_one_update_reconstructs", rank_one_update_reconstructs),
    ("svd_invariant_under_orthogonal_maps", svd_invariant_under_orthogonal_maps),
    ("svd_oracle_identities", svd_oracle_identities),
    ("svd_of_transpose_swaps_sides", svd_of_transpose_swaps_sides),
    ("svd_is_deterministic", svd_is_deterministic),
];
