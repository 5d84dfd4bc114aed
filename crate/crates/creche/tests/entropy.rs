// SPDX-License-Identifier: MIT OR Apache-2.0

use creche::rng::seeded;
use creche::{estimate_entropy, IidSource, MatchProfile};

fn estimate(probs: Vec<f64>, n: usize, seed: u64) -> f64 {
    let x = IidSource::new(probs).unwrap().sample(n, &mut seeded(seed)).unwrap();
    estimate_entropy(&MatchProfile::new(x.symbols()).unwrap()).unwrap()
}

#[test]
fn fair_coin() {
    let h = estimate(vec![0.5, 0.5], 100_000, 60);
    assert!((h - 1.0).abs() <= 0.15, "{h}");
}

#[test]
fn four_ary_uniform() {
    let h = estimate(vec![0.25; 4], 100_000, 61);
    assert!((h - 2.0).abs() <= 0.3, "{h}");
}

#[test]
fn skewed_source_is_ordered_below_uniform() {
    let skewed = estimate(vec![0.1, 0.3, 0.6], 50_000, 62);
    let uniform = estimate(vec![1.0 / 3.0; 3], 50_000, 62);
    assert!(skewed < uniform);
}
