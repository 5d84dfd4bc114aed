// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::*;
use creche::rng::seeded;
use creche::MatchProfile;

fn check(x: &[u16], sample_seed: u64) {
    let p = MatchProfile::new(x).unwrap();
    let want = brute_match_lengths(x);
    assert_eq!(p.match_lengths(), want.as_slice(), "lengths of {x:?}");
    for i in 0..x.len() {
        let set = brute_match_set(x, &want, i);
        assert_eq!(p.match_position_set(i).unwrap(), set, "S_{i} of {x:?}");
        assert_eq!(p.match_set_size(i).unwrap(), set.len());
    }
    let t = p.sample_targets(&mut seeded(sample_seed));
    for (i, &ti) in t.targets().iter().enumerate() {
        assert!(brute_match_set(x, &want, i).contains(&ti), "T_{i}={ti} for {x:?}");
    }
}

#[test]
fn worked_examples() {
    assert_eq!(brute_match_lengths(&[0, 1, 0, 1]), vec![3, 2, 3, 2]);
    assert_eq!(brute_match_lengths(&[0, 0, 0, 0]), vec![4, 4, 3, 2]);
    assert_eq!(brute_match_lengths(&[0, 1, 2]), vec![1, 1, 1]);
    check(&[0, 1, 0, 1], 0);
    check(&[0, 0, 0, 0], 0);
}

#[test]
fn exhaustive_binary() {
    for n in 2..=12 {
        for (s, x) in binary_strings(n).enumerate() {
            check(&x, s as u64);
        }
    }
}

#[test]
fn random_sequences() {
    let mut rng = seeded(20);
    use rand::Rng;
    for case in 0..1000 {
        let n = rng.random_range(2..=64);
        let k = rng.random_range(2..=4);
        let x = random_symbols(&mut rng, n, k);
        check(&x, case);
    }
}

#[test]
fn definition_recheck() {
    // L[i] is the first window length with no other occurrence, so the
    // window one shorter must occur elsewhere.
    let mut rng = seeded(21);
    for _ in 0..200 {
        let x = random_symbols(&mut rng, 40, 2);
        let p = MatchProfile::new(&x).unwrap();
        let n = x.len();
        for (i, &l) in p.match_lengths().iter().enumerate() {
            if l <= n - i {
                assert!(!(0..n).any(|j| j != i && j + l <= n && x[j..j + l] == x[i..i + l]));
            }
            let m = l - 1;
            assert!(m == 0 || (0..n).any(|j| j != i && j + m <= n && x[j..j + m] == x[i..i + m]));
        }
    }
}

#[test]
fn long_sequence_spot_check() {
    let mut rng = seeded(22);
    let x = random_symbols(&mut rng, 3000, 2);
    let p = MatchProfile::new(&x).unwrap();
    let n = x.len();
    for i in (0..n).step_by(97) {
        let l = p.match_lengths()[i];
        let m = l - 1;
        let set: Vec<usize> = (0..n)
            .filter(|&j| j != i && j + m <= n && x[j..j + m] == x[i..i + m])
            .collect();
        assert_eq!(p.match_position_set(i).unwrap(), set);
    }
}
