// SPDX-License-Identifier: MIT OR Apache-2.0

//! Match lengths, match-position sets and sampled match targets.
//!
//! The match length at `i` is the length of the shortest window starting at
//! `i` that occurs at no other position. A window running past the end of the
//! string matches nothing, so `L[i] = 1 + max_{j != i} lcp(i, j)` and
//! `L[i] <= n - i + 1`.
//!
//! The positions sharing the length `L[i] - 1` window with `i` form one
//! contiguous run of the suffix array. That run is found in O(1) per position
//! from previous/next-smaller-value tables over the LCP array, so match sets
//! are never materialised.

mod suffix_array;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CrecheError, Result};
use crate::rng;
use crate::sequence::SymbolSequence;

pub use suffix_array::{inverse, lcp_array, suffix_array};

#[derive(Clone, Debug)]
pub struct MatchProfile {
    n: usize,
    sa: Vec<usize>,
    rank: Vec<usize>,
    lcp: Vec<usize>,
    match_lengths: Vec<usize>,
    /// Inclusive suffix-array rank interval holding `i` and its match set.
    intervals: Vec<(usize, usize)>,
}

pub fn compute_match_lengths(x: &SymbolSequence) -> Result<MatchProfile> {
    MatchProfile::new(x.symbols())
}

impl MatchProfile {
    pub fn new(symbols: &[u16]) -> Result<Self> {
        let n = symbols.len();
        if n < 2 {
            return Err(CrecheError::TooShort { min: 2, got: n });
        }
        let s: Vec<u32> = symbols.iter().map(|&c| u32::from(c)).collect();
        let upper = s.iter().copied().max().unwrap_or(0);
        let sa = suffix_array(&s, upper);
        let rank = inverse(&sa);
        let lcp = lcp_array(&s, &sa, &rank);

        let lcp_at = |k: usize| if k < n { lcp[k] } else { 0 };
        let (psv, nsv) = smaller_value_tables(&lcp);

        let mut match_lengths = vec![0usize; n];
        let mut intervals = vec![(0usize, 0usize); n];
        for i in 0..n {
            let r = rank[i];
            let m = lcp[r].max(lcp_at(r + 1));
            match_lengths[i] = m + 1;
            intervals[i] = if m == 0 {
                (0, n - 1)
            } else {
                let lo = if lcp[r] == m { psv[r] } else { r };
                let hi = if lcp_at(r + 1) == m { nsv[r + 1] - 1 } else { r };
                (lo, hi)
            };
        }
        Ok(Self {
            n,
            sa,
            rank,
            lcp,
            match_lengths,
            intervals,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn match_lengths(&self) -> &[usize] {
        &self.match_lengths
    }

    pub fn suffix_array(&self) -> &[usize] {
        &self.sa
    }

    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }

    /// Size of the match-position set at `i`.
    pub fn match_set_size(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        let (lo, hi) = self.intervals[i];
        Ok(hi - lo)
    }

    /// `k`-th element (in suffix order) of the match-position set at `i`.
    pub fn match_set_element(&self, i: usize, k: usize) -> Result<usize> {
        let size = self.match_set_size(i)?;
        if k >= size {
            return Err(CrecheError::IndexOutOfRange { index: k, len: size });
        }
        Ok(self.element_unchecked(i, k))
    }

    fn element_unchecked(&self, i: usize, k: usize) -> usize {
        let (lo, _) = self.intervals[i];
        let mut r = lo + k;
        if r >= self.rank[i] {
            r += 1;
        }
        self.sa[r]
    }

    /// Positions `j != i` whose length `L[i] - 1` window equals the one at
    /// `i`, in ascending order. Every other position when `L[i] = 1`.
    pub fn match_position_set(&self, i: usize) -> Result<Vec<usize>> {
        let size = self.match_set_size(i)?;
        let mut out: Vec<usize> = (0..size).map(|k| self.element_unchecked(i, k)).collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn sample_targets<R: Rng + ?Sized>(&self, rng: &mut R) -> MatchTargets {
        let targets = (0..self.n)
            .map(|i| {
                let (lo, hi) = self.intervals[i];
                self.element_unchecked(i, rng.random_range(0..hi - lo))
            })
            .collect();
        MatchTargets { targets }
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(CrecheError::IndexOutOfRange { index: i, len: self.n });
        }
        Ok(())
    }
}

/// Previous and next strictly smaller values over `lcp` (`lcp[0] = 0` acts as
/// the left sentinel, `n` as the right one).
fn smaller_value_tables(lcp: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = lcp.len();
    let mut psv = vec![0usize; n];
    let mut nsv = vec![n; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    for k in 0..n {
        while let Some(&top) = stack.last() {
            if lcp[top] >= lcp[k] {
                stack.pop();
            } else {
                break;
            }
        }
        psv[k] = stack.last().copied().unwrap_or(0);
        stack.push(k);
    }
    stack.clear();
    for k in (0..n).rev() {
        while let Some(&top) = stack.last() {
            if lcp[top] >= lcp[k] {
                stack.pop();
            } else {
                break;
            }
        }
        nsv[k] = stack.last().copied().unwrap_or(n);
        stack.push(k);
    }
    (psv, nsv)
}

/// Directed match graph: position `i` links to `targets[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchTargets {
    targets: Vec<usize>,
}

impl MatchTargets {
    /// Wraps an arbitrary target array. Self-links are allowed.
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        let n = targets.len();
        if n < 2 {
            return Err(CrecheError::TooShort { min: 2, got: n });
        }
        if let Some(&t) = targets.iter().find(|&&t| t >= n) {
            return Err(CrecheError::IndexOutOfRange { index: t, len: n });
        }
        Ok(Self { targets })
    }

    pub(crate) fn from_vec_unchecked(targets: Vec<usize>) -> Self {
        Self { targets }
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.targets
    }
}

pub fn sample_match_targets(profile: &MatchProfile, seed: u64) -> MatchTargets {
    profile.sample_targets(&mut rng::seeded(seed))
}

pub fn match_position_set(profile: &MatchProfile, i: usize) -> Result<Vec<usize>> {
    profile.match_position_set(i)
}

pub const MIN_ENTROPY_LENGTH: usize = 16;

/// Match-length entropy estimate in bits per symbol: `n log2 n / sum L[i]`.
pub fn estimate_entropy(profile: &MatchProfile) -> Result<f64> {
    let n = profile.len();
    if n < MIN_ENTROPY_LENGTH {
        return Err(CrecheError::TooShort {
            min: MIN_ENTROPY_LENGTH,
            got: n,
        });
    }
    let total: usize = profile.match_lengths().iter().sum();
    let n = n as f64;
    Ok(n * n.log2() / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(s: &[u16]) -> MatchProfile {
        MatchProfile::new(s).unwrap()
    }

    #[test]
    fn abab() {
        let p = profile(&[0, 1, 0, 1]);
        assert_eq!(p.match_lengths(), &[3, 2, 3, 2]);
        assert_eq!(p.match_position_set(0).unwrap(), vec![2]);
        assert_eq!(p.match_position_set(2).unwrap(), vec![0]);
        for seed in 0..20 {
            let t = sample_match_targets(&p, seed);
            assert_eq!(t.targets()[0], 2);
            assert_eq!(t.targets()[2], 0);
        }
    }

    #[test]
    fn aaaa() {
        // Frozen from the brute-force oracle in tests/matchengine_oracle.rs.
        assert_eq!(profile(&[0, 0, 0, 0]).match_lengths(), &[4, 4, 3, 2]);
    }

    #[test]
    fn all_distinct() {
        let p = profile(&[0, 1, 2]);
        assert_eq!(p.match_lengths(), &[1, 1, 1]);
        for i in 0..3 {
            let set = p.match_position_set(i).unwrap();
            assert_eq!(set.len(), 2);
            assert!(!set.contains(&i));
        }
    }

    #[test]
    fn out_of_range_index() {
        let p = profile(&[0, 1, 0]);
        assert!(p.match_set_size(3).is_err());
        assert!(p.match_set_element(0, 5).is_err());
    }

    #[test]
    fn too_short() {
        assert!(MatchProfile::new(&[1]).is_err());
    }

    #[test]
    fn entropy_needs_sixteen_symbols() {
        assert!(estimate_entropy(&profile(&[0, 1, 0, 1])).is_err());
    }

    #[test]
    fn constant_sequence_entropy_vanishes() {
        let small = estimate_entropy(&profile(&[0; 100])).unwrap();
        let large = estimate_entropy(&profile(&[0; 10_000])).unwrap();
        assert!(large < small);
        assert!(large < 0.01, "{large}");
    }

    #[test]
    fn uniform_over_four_element_set() {
        // Positions 0, 3, 6, 9, 12 all start "ab" followed by a distinct symbol.
        let s = [0, 1, 2, 0, 1, 3, 0, 1, 4, 0, 1, 5, 0, 1, 6];
        let p = profile(&s);
        assert_eq!(p.match_lengths()[0], 3);
        assert_eq!(p.match_position_set(0).unwrap(), vec![3, 6, 9, 12]);
        let mut rng = rng::seeded(77);
        let mut counts = [0usize; 4];
        let trials = 10_000;
        for _ in 0..trials {
            let t = p.sample_targets(&mut rng).targets()[0];
            counts[t / 3 - 1] += 1;
        }
        for c in counts {
            let f = c as f64 / trials as f64;
            assert!((0.22..=0.28).contains(&f), "{counts:?}");
        }
    }

    #[test]
    fn targets_validation() {
        assert!(MatchTargets::new(vec![0, 2]).is_err());
        assert!(MatchTargets::new(vec![0]).is_err());
        assert!(MatchTargets::new(vec![1, 1]).is_ok());
    }
}
