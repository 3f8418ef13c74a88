use proptest::prelude::*;
use srsvd::cooc::{build, vocabulary, CoocSpec};
use srsvd::LinearOperator;
use crate::support::config;

/// Direct scan: for each occurrence of context c, does target t appear at
/// any other position within the window?
fn brute_force(tokens: &[String], contexts: &[String], targets: &[String], w: usize) -> Vec<Vec<f64>> {
    contexts
        .iter()
        .map(|c| {
            let pos: Vec<usize> = (0..tokens.len()).filter(|&p| &tokens[p] == c).collect();
            targets
                .iter()
                .map(|t| {
                    let hits = pos
                        .iter()
                        .filter(|&&p| {
                            (0..tokens.len()).any(|q| q != p && q.abs_diff(p) <= w && &tokens[q] == t)
                        })
                        .count();
                    hits as f64 / pos.len() as f64
                })
                .collect()
        })
        .collect()
}

fn corpus() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "d", "e", "f", "g"]), 1..80)
        .prop_map(|v| v.into_iter().map(String::from).collect())
}

proptest! {
    #![proptest_config(config(200))]

        fn matches_brute_force_scanner(tokens in corpus(), m in 1usize..8, n in 1usize..8, w in 1usize..5) {
        let spec = CoocSpec::new(m, n, w).unwrap();
        let c = build(&tokens, &spec).unwrap();
        prop_assert_eq!(&c.contexts, &vocabulary(&tokens, m));
        prop_assert_eq!(&c.targets, &vocabulary(&tokens, n));
        let oracle = brute_force(&tokens, &c.contexts, &c.targets, w);
        let d = c.matrix.to_dense();
        for (j, row) in oracle.iter().enumerate() {
            for (i, &p) in row.iter().enumerate() {
                prop_assert!((d.get(j, i) - p).abs() <= 1e-15, "({}, {}): {} vs {}", j, i, d.get(j, i), p);
            }
            // Each occurrence sees at most 2w distinct targets.
            prop_assert!(d.row(j).iter().sum::<f64>() <= 2.0 * w as f64 + 1e-12);
        }
    }
}

pub const CHECKS: &[(&str, fn())] = &[
    ("matches_brute_force_scanner", matches_brute_force_scanner),
];
