use proptest::prelude::*;
use srsvd::{DataMatrix, DenseMatrix, LinearOperator, ShiftedOperator, SparseMatrix, Vector};
use crate::support::{config, fro, fro_diff, gaussian, gaussian_vec, sparse_random};

fn densified(x: &DataMatrix, mu: &[f64]) -> DenseMatrix {
    let d = x.to_dense();
    DenseMatrix::from_fn(d.rows(), d.cols(), |i, j| d.get(i, j) - mu[i]).unwrap()
}

fn operand(m: usize, n: usize, sparse: bool, seed: u64) -> DataMatrix {
    if sparse {
        DataMatrix::Sparse(sparse_random(m, n, 0.2, seed))
    } else {
        DataMatrix::Dense(gaussian(m, n, seed))
    }
}

proptest! {
    #![proptest_config(config(200))]

        fn shifted_products_match_densified(
        m in 1usize..=50, n in 1usize..=50, s in 1usize..=8,
        sparse in any::<bool>(), seed in any::<u64>(),
    ) {
        let x = operand(m, n, sparse, seed);
        let mu = Vector::new(gaussian_vec(m, seed ^ 1)).unwrap();
        let a = densified(&x, &mu);
        let op = ShiftedOperator::new(&x, &mu).unwrap();

        let b = gaussian(n, s, seed ^ 2);
        let tol = 1e-12 * fro(&a) * fro(&b);
        prop_assert!(fro_diff(&op.matmat_right(&b).unwrap(), &a.matmul(&b).unwrap()) <= tol);

        let q = gaussian(m, s, seed ^ 3);
        let tol = 1e-12 * fro(&a) * fro(&q);
        prop_assert!(fro_diff(&op.matmat_left_transpose(&q).unwrap(), &a.t_matmul(&q).unwrap()) <= tol);
        prop_assert!(fro_diff(&op.project(&q).unwrap(), &q.t_matmul(&a).unwrap()) <= tol);
    }

        fn zero_shift_is_bitwise_transparent(
        m in 1usize..=50, n in 1usize..=50, s in 1usize..=8,
        sparse in any::<bool>(), seed in any::<u64>(),
    ) {
        let x = operand(m, n, sparse, seed);
        let zero = Vector::zeros(m);
        let op = ShiftedOperator::new(&x, &zero).unwrap();
        let b = gaussian(n, s, seed ^ 2);
        let q = gaussian(m, s, seed ^ 3);
        prop_assert_eq!(op.matmat_right(&b).unwrap(), x.mul_dense(&b).unwrap());
        prop_assert_eq!(op.matmat_left_transpose(&q).unwrap(), x.tr_mul_dense(&q).unwrap());
        prop_assert_eq!(op.project(&q).unwrap(), x.left_mul_tr(&q).unwrap());
    }

        fn sparse_and_dense_storage_agree(m in 1usize..=30, n in 1usize..=30, seed in any::<u64>()) {
        let s = sparse_random(m, n, 0.3, seed);
        let d = s.to_dense();
        prop_assert_eq!(SparseMatrix::from_dense(&d), s.clone());
        prop_assert_eq!(s.transpose().to_dense(), d.transpose());
        let b = gaussian(n, 3, seed ^ 5);
        prop_assert!(fro_diff(&s.mul_dense(&b).unwrap(), &d.matmul(&b).unwrap()) <= 1e-13 * fro(&d) * fro(&b));
        let rs = s.row_sums();
        for (i, r) in rs.iter().enumerate() {
            prop_assert!((r - d.row(i).iter().sum::<f64>()).abs() <= 1e-13 * (1.0 + r.abs()));
        }
    }
}

pub const CHECKS: &[(&str, fn())] = &[
    ("shifted_products_match_densified", shifted_products_match_densified),
    ("zero_shift_is_bitwise_transparent", zero_shift_is_bitwise_transparent),
    ("sparse_and_dense_storage_agree", sparse_and_dense_storage_agree),
];
