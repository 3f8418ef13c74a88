use crate::support::alloc::peak_during;
use srsvd::{column_mean, shifted_rsvd, LinearOperator, RsvdParams, ShiftedOperator};
use crate::support::{gaussian, sparse_random};

const F64: usize = std::mem::size_of::<f64>();

fn shifted_products_stay_within_workspace() {
    let (m, n, s) = (3000, 30_000, 10);
    let x = sparse_random(m, n, 1e-3, 1);
    let mu = column_mean(&x);
    let op = ShiftedOperator::new(&x, &mu).unwrap();
    let b = gaussian(n, s, 2);
    let q = gaussian(m, s, 3);
    let budget = 3 * (m + n) * s * F64;
    assert!(budget * 50 < m * n * F64);

    let (r, peak) = peak_during(|| op.matmat_right(&b).unwrap());
    assert_eq!(r.shape(), (m, s));
    assert!(peak <= budget, "X̄B peaked at {peak} bytes, budget {budget}");

    let (r, peak) = peak_during(|| op.matmat_left_transpose(&q).unwrap());
    assert_eq!(r.shape(), (n, s));
    assert!(peak <= budget, "X̄ᵀQ peaked at {peak} bytes, budget {budget}");

    let (r, peak) = peak_during(|| op.project(&q).unwrap());
    assert_eq!(r.shape(), (s, n));
    assert!(peak <= budget, "QᵀX̄ peaked at {peak} bytes, budget {budget}");
}

fn shifted_rsvd_stays_within_workspace() {
    let (m, n) = (2000, 20_000);
    let x = sparse_random(m, n, 1e-3, 4);
    let mu = column_mean(&x);
    let p = RsvdParams::new(8, 16, 2, 5).unwrap();
    let (r, peak) = peak_during(|| shifted_rsvd(&x, &mu, &p).unwrap());
    assert_eq!(r.factors.u.shape(), (m, 8));
    let budget = 10 * (m + n) * p.sketch * F64;
    assert!(peak <= budget, "peak {peak} bytes, budget {budget}");
    assert!(x.shape() == (m, n) && budget * 10 < m * n * F64);
}

fn counter_sees_a_dense_copy() {
    let x = sparse_random(300, 3000, 1e-3, 6);
    let (_, peak) = peak_during(|| x.to_dense());
    assert!(peak >= 300 * 3000 * F64);
}

pub const CHECKS: &[(&str, fn())] = &[
    ("shifted_products_stay_within_workspace", shifted_products_stay_within_workspace),
    ("shifted_rsvd_stays_within_workspace", shifted_rsvd_stays_within_workspace),
    ("counter_sees_a_dense_copy", counter_sees_a_dense_copy),
];
