use proptest::prelude::*;
use srsvd::stats::{generate, paired_t_test, t_sf, Distribution, DistributionSpec};
use crate::support::config;

fn distribution() -> impl Strategy<Value = Distribution> {
    prop_oneof![
        (-5.0f64..5.0, 0.1f64..5.0).prop_map(|(low, w)| Distribution::Uniform { low, high: low + w }),
        (-5.0f64..5.0, 0.1f64..5.0).prop_map(|(mean, sd)| Distribution::Normal { mean, sd }),
        (1.01f64..3.0, 1usize..2000).prop_map(|(exponent, support)| Distribution::Zipf { exponent, support }),
        (0.01f64..=30.0).prop_map(|rate| Distribution::Poisson { rate }),
    ]
}

proptest! {
    #![proptest_config(config(200))]

        fn t_test_is_antisymmetric(pairs in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2..60)) {
        let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let ab = paired_t_test(&a, &b).unwrap();
        let ba = paired_t_test(&b, &a).unwrap();
        prop_assert_eq!(ab.t, -ba.t);
        prop_assert_eq!(ab.p.to_bits(), ba.p.to_bits());
        prop_assert!((0.0..=1.0).contains(&ab.p));
        prop_assert_eq!(ab.dof, a.len() - 1);
    }

        fn t_tail_is_symmetric_and_monotone(t in 0.0f64..50.0, dt in 0.0f64..5.0, dof in 1usize..500) {
        let p = t_sf(t, dof);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert_eq!(p, t_sf(-t, dof));
        prop_assert!(t_sf(t + dt, dof) <= p);
    }

        fn generators_are_deterministic_and_shaped(
        dist in distribution(), rows in 1usize..20, cols in 1usize..20, seed in any::<u64>(),
    ) {
        let spec = DistributionSpec { dist, rows, cols, seed };
        let a = generate(&spec).unwrap();
        prop_assert_eq!(a.shape(), (rows, cols));
        prop_assert_eq!(&a, &generate(&spec).unwrap());
        let ok = a.data().iter().all(|&v| match dist {
            Distribution::Uniform { low, high } => v >= low && v < high,
            Distribution::Normal { .. } => v.is_finite(),
            Distribution::Zipf { support, .. } => v >= 1.0 && v <= support as f64 && v.fract() == 0.0,
            Distribution::Poisson { .. } => v >= 0.0 && v.fract() == 0.0,
        });
        prop_assert!(ok);
    }
}

fn t_test_closed_form_cases() {
    let r = paired_t_test(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
    assert_eq!((r.t, r.p), (0.0, 1.0));
    let r = paired_t_test(&[1.0, -1.0, 1.0, -1.0], &[0.0; 4]).unwrap();
    assert_eq!((r.t, r.p), (0.0, 1.0));
    assert!((t_sf(1.0, 1) - 0.5).abs() < 1e-14);
    assert!((t_sf(1.96, 1_000_000) - 0.05).abs() <= 1e-3);
    // dof 2 has P(|T| > t) = 1 − t/√(2 + t²).
    for t in [0.1f64, 0.7, 2.0, 9.0] {
        assert!((t_sf(t, 2) - (1.0 - t / (2.0 + t * t).sqrt())).abs() < 1e-13);
    }
}

/// Moments at 10⁵ draws, 4σ tolerances.
fn generator_moments() {
    let draw = |dist| generate(&DistributionSpec { dist, rows: 100, cols: 1000, seed: crate::support::MASTER_SEED }).unwrap().into_data();
    let moments = |x: &[f64]| {
        let n = x.len() as f64;
        let m = x.iter().sum::<f64>() / n;
        (m, x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0), n)
    };
    let (m, v, n) = moments(&draw(Distribution::Uniform { low: 0.0, high: 1.0 }));
    assert!((m - 0.5).abs() < 4.0 * (1.0 / 12.0 / n).sqrt());
    assert!((v - 1.0 / 12.0).abs() < 4.0 * (1.0 / 180.0 / n).sqrt());
    let (m, v, n) = moments(&draw(Distribution::Normal { mean: 0.0, sd: 1.0 }));
    assert!(m.abs() < 4.0 / n.sqrt());
    assert!((v - 1.0).abs() < 4.0 * (2.0 / n).sqrt());
    let (m, v, n) = moments(&draw(Distribution::Poisson { rate: 4.0 }));
    assert!((m - 4.0).abs() < 3.0 * (4.0 / n).sqrt());
    assert!((v - 4.0).abs() < 4.0 * (36.0 / n).sqrt());
    let x = draw(Distribution::Zipf { exponent: 1.5, support: 1000 });
    let h: f64 = (1..=1000).map(|r| (r as f64).powf(-1.5)).sum();
    let f1 = x.iter().filter(|&&v| v == 1.0).count() as f64 / x.len() as f64;
    assert!((f1 * h - 1.0).abs() < 0.1);
}

pub const CHECKS: &[(&str, fn())] = &[
    ("t_test_is_antisymmetric", t_test_is_antisymmetric),
    ("t_tail_is_symmetric_and_monotone", t_tail_is_symmetric_and_monotone),
    ("generators_are_deterministic_and_shaped", generators_are_deterministic_and_shaped),
    ("t_test_closed_form_cases", t_test_closed_form_cases),
    ("generator_moments", generator_moments),
];
