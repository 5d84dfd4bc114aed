// SPDX-License-Identifier: MIT OR Apache-2.0

//! Crossing counts of a match graph and the change-point estimate built from
//! them.
//!
//! For a cut `j`, `C_LR(j) = #{k : k < j <= T[k]}` counts links leaving the
//! prefix and `C_RL(j) = #{k : T[k] < j <= k}` counts links entering it from
//! the suffix. Both are normalised against their expectation under uniform
//! targets:
//!
//! ```text
//! psi_lr(j) = C_LR(j) / (n - j) - j / n
//! psi_rl(j) = C_RL(j) / j       - (n - j) / n
//! psi(j)    = max(psi_lr(j), psi_rl(j))
//! ```
//!
//! The estimate is the smallest `j` in `1..n` minimising `psi`. `j = 0` is
//! excluded because `psi_rl(0)` is 0/0.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matchengine::{MatchProfile, MatchTargets};
use crate::rng::CrecheRng;
use crate::sequence::SymbolSequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingCounts {
    /// Indexed by `j` in `0..n`.
    pub c_lr: Vec<u64>,
    pub c_rl: Vec<u64>,
}

impl CrossingCounts {
    pub fn len(&self) -> usize {
        self.c_lr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c_lr.is_empty()
    }
}

/// O(n) crossing counts via difference arrays.
pub fn count_crossings(targets: &MatchTargets) -> CrossingCounts {
    let t = targets.targets();
    let n = t.len();
    // Link k -> t[k] with t[k] > k covers cuts k+1..=t[k]; with t[k] < k it
    // covers t[k]+1..=k.
    let mut d_lr = vec![0i64; n + 1];
    let mut d_rl = vec![0i64; n + 1];
    for (k, &tk) in t.iter().enumerate() {
        if tk > k {
            d_lr[k + 1] += 1;
            d_lr[tk + 1] -= 1;
        } else if tk < k {
            d_rl[tk + 1] += 1;
            d_rl[k + 1] -= 1;
        }
    }
    let prefix = |d: &[i64]| -> Vec<u64> {
        let mut acc = 0i64;
        d[..n]
            .iter()
            .map(|&x| {
                acc += x;
                acc as u64
            })
            .collect()
    };
    CrossingCounts {
        c_lr: prefix(&d_lr),
        c_rl: prefix(&d_rl),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingCurves {
    n: usize,
    counts: CrossingCounts,
    /// Indexed by `j - 1` for `j` in `1..n`.
    psi_lr: Vec<f64>,
    psi_rl: Vec<f64>,
    psi: Vec<f64>,
}

pub fn normalize(counts: CrossingCounts) -> CrossingCurves {
    let n = counts.len();
    let nf = n as f64;
    let mut psi_lr = Vec::with_capacity(n.saturating_sub(1));
    let mut psi_rl = Vec::with_capacity(n.saturating_sub(1));
    let mut psi = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..n {
        let jf = j as f64;
        let lr = counts.c_lr[j] as f64 / (nf - jf) - jf / nf;
        let rl = counts.c_rl[j] as f64 / jf - (nf - jf) / nf;
        psi_lr.push(lr);
        psi_rl.push(rl);
        psi.push(lr.max(rl));
    }
    CrossingCurves {
        n,
        counts,
        psi_lr,
        psi_rl,
        psi,
    }
}

/// Which envelope bound failed, and where.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeViolation {
    pub j: usize,
    pub what: String,
    pub value: f64,
    pub bound: f64,
}

impl std::fmt::Display for EnvelopeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at j={}: value {} vs bound {}", self.what, self.j, self.value, self.bound)
    }
}

const ENVELOPE_SLACK: f64 = 1e-12;

impl CrossingCurves {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &CrossingCounts {
        &self.counts
    }

    pub fn c_lr(&self) -> &[u64] {
        &self.counts.c_lr
    }

    pub fn c_rl(&self) -> &[u64] {
        &self.counts.c_rl
    }

    /// `psi_lr(j)` for `j = 1..n`, stored from index 0.
    pub fn psi_lr(&self) -> &[f64] {
        &self.psi_lr
    }

    pub fn psi_rl(&self) -> &[f64] {
        &self.psi_rl
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    pub fn psi_lr_at(&self, j: usize) -> f64 {
        self.psi_lr[j - 1]
    }

    pub fn psi_rl_at(&self, j: usize) -> f64 {
        self.psi_rl[j - 1]
    }

    pub fn psi_at(&self, j: usize) -> f64 {
        self.psi[j - 1]
    }

    /// Checks `0 <= C_LR(j) <= j`, `0 <= C_RL(j) <= n - j` and the implied
    /// bounds on both normalised curves, at every cut.
    pub fn check_envelope(&self) -> std::result::Result<(), EnvelopeViolation> {
        let n = self.n;
        let nf = n as f64;
        for j in 0..n {
            if self.counts.c_lr[j] > j as u64 {
                return Err(EnvelopeViolation {
                    j,
                    what: "C_LR(j) <= j".into(),
                    value: self.counts.c_lr[j] as f64,
                    bound: j as f64,
                });
            }
            if self.counts.c_rl[j] > (n - j) as u64 {
                return Err(EnvelopeViolation {
                    j,
                    what: "C_RL(j) <= n - j".into(),
                    value: self.counts.c_rl[j] as f64,
                    bound: (n - j) as f64,
                });
            }
        }
        for j in 1..n {
            let jf = j as f64;
            let checks = [
                ("psi_lr lower", self.psi_lr_at(j), -jf / nf, true),
                ("psi_lr upper", self.psi_lr_at(j), jf * jf / (nf * (nf - jf)), false),
                ("psi_rl lower", self.psi_rl_at(j), -(nf - jf) / nf, true),
                ("psi_rl upper", self.psi_rl_at(j), (nf - jf) * (nf - jf) / (nf * jf), false),
            ];
            for (what, value, bound, is_lower) in checks {
                let slack = ENVELOPE_SLACK * (1.0 + bound.abs());
                let ok = if is_lower {
                    value >= bound - slack
                } else {
                    value <= bound + slack
                };
                if !ok {
                    return Err(EnvelopeViolation {
                        j,
                        what: what.into(),
                        value,
                        bound,
                    });
                }
            }
            let expected = self.psi_lr_at(j).max(self.psi_rl_at(j));
            if self.psi_at(j) != expected {
                return Err(EnvelopeViolation {
                    j,
                    what: "psi = max(psi_lr, psi_rl)".into(),
                    value: self.psi_at(j),
                    bound: expected,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChangePointEstimate {
    pub j_star: usize,
    pub gamma_hat: f64,
    pub psi_min: f64,
}

/// Smallest `j` in `1..n` at which `psi` attains its minimum.
pub fn creche_estimate(curves: &CrossingCurves) -> ChangePointEstimate {
    let mut best = 0usize;
    for (idx, &v) in curves.psi.iter().enumerate() {
        if v < curves.psi[best] {
            best = idx;
        }
    }
    let j_star = best + 1;
    ChangePointEstimate {
        j_star,
        gamma_hat: j_star as f64 / curves.n as f64,
        psi_min: curves.psi[best],
    }
}

/// Full pipeline on one sequence: match profile, sampled targets, crossing
/// curves and the estimate.
pub fn detect(x: &SymbolSequence, rng: &mut CrecheRng) -> Result<(CrossingCurves, ChangePointEstimate)> {
    let profile = MatchProfile::new(x.symbols())?;
    let targets = profile.sample_targets(rng);
    let curves = normalize(count_crossings(&targets));
    let estimate = creche_estimate(&curves);
    Ok((curves, estimate))
}
