// SPDX-License-Identifier: MIT OR Apache-2.0

//! Brute-force references shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;

/// Shortest window starting at `i` that occurs at no other start position.
/// A window running past the end occurs nowhere else.
pub fn brute_match_lengths(x: &[u16]) -> Vec<usize> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (1..=n - i)
                .find(|&k| !(0..n).any(|j| j != i && j + k <= n && x[j..j + k] == x[i..i + k]))
                .unwrap_or(n - i + 1)
        })
        .collect()
}

/// Positions `j != i` sharing the length `L[i] - 1` window with `i`.
pub fn brute_match_set(x: &[u16], lengths: &[usize], i: usize) -> Vec<usize> {
    let n = x.len();
    let m = lengths[i] - 1;
    (0..n)
        .filter(|&j| j != i && j + m <= n && x[j..j + m] == x[i..i + m])
        .collect()
}

/// `(c_lr, c_rl)` by direct enumeration over every cut `0..n`.
pub fn brute_crossings(t: &[usize]) -> (Vec<u64>, Vec<u64>) {
    let n = t.len();
    let lr = (0..n)
        .map(|j| t.iter().enumerate().filter(|&(k, &tk)| k < j && tk >= j).count() as u64)
        .collect();
    let rl = (0..n)
        .map(|j| t.iter().enumerate().filter(|&(k, &tk)| k >= j && tk < j).count() as u64)
        .collect();
    (lr, rl)
}

pub fn random_symbols<R: Rng>(rng: &mut R, n: usize, k: u16) -> Vec<u16> {
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

/// All binary strings of length `n`.
pub fn binary_strings(n: usize) -> impl Iterator<Item = Vec<u16>> {
    (0u32..1 << n).map(move |bits| (0..n).map(|b| ((bits >> b) & 1) as u16).collect())
}

/// `|a - b| <= k * sd`.
pub fn within_sigma(a: f64, b: f64, sd: f64, k: f64) -> bool {
    (a - b).abs() <= k * sd
}
