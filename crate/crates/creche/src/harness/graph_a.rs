// SPDX-License-Identifier: MIT OR Apache-2.0

//! End-to-end runs on generated or supplied sequences.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{check_trials, run_trials, EnvelopeTally, Histogram};
use crate::crossings::{count_crossings, creche_estimate, detect, normalize, ChangePointEstimate, CrossingCurves};
use crate::error::{CrecheError, Result};
use crate::matchengine::MatchProfile;
use crate::rng::{seeded, trial_rng};
use crate::sequence::{change_index, concatenate, encode_bytes, EncodingPolicy};
use crate::sources::SourceSpec;

/// Two sources joined at `round(n * gamma)`. Without `gamma` the whole
/// sequence comes from `left`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphASetup {
    pub left: SourceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<SourceSpec>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub gamma: Option<f64>,
    pub change_index: Option<usize>,
    pub estimates: Vec<ChangePointEstimate>,
    pub histogram: Histogram,
    /// Average `psi` over trials, for `j = 1..n`.
    pub mean_psi: Vec<f64>,
    pub envelope: EnvelopeTally,
}

impl TrialSummary {
    /// Fraction of trials with `|gamma_hat - gamma| <= tol`. Zero for runs
    /// without a change.
    pub fn hit_rate(&self, tol: f64) -> f64 {
        let Some(g) = self.gamma else { return 0.0 };
        let hits = self
            .estimates
            .iter()
            .filter(|e| (e.gamma_hat - g).abs() <= tol)
            .count();
        hits as f64 / self.trials as f64
    }
}

pub fn run_graph_a_experiment(
    setup: &GraphASetup,
    trials: usize,
    seed: u64,
    bin_width: f64,
) -> Result<TrialSummary> {
    check_trials(trials)?;
    let n = setup.n;
    if n < 2 {
        return Err(CrecheError::TooShort { min: 2, got: n });
    }
    let left = setup.left.build()?;
    let (right, c) = match (&setup.right, setup.gamma) {
        (Some(spec), Some(g)) => {
            let right = spec.build()?;
            if right.alphabet_size() != left.alphabet_size() {
                return Err(CrecheError::IncompatibleAlphabets(format!(
                    "left source has {} symbols, right source has {}",
                    left.alphabet_size(),
                    right.alphabet_size()
                )));
            }
            (Some(right), Some(change_index(n, g)?))
        }
        (None, None) => (None, None),
        _ => {
            return Err(CrecheError::param(
                "a right source and gamma must be given together",
            ))
        }
    };

    let mut histogram = Histogram::new(bin_width)?;
    let mut estimates = Vec::with_capacity(trials);
    let mut sum_psi = vec![0.0f64; n - 1];
    let mut envelope = EnvelopeTally::default();
    run_trials(
        trials,
        |t| {
            let mut rng = trial_rng(seed, t);
            let symbols = match (&right, c) {
                (Some(right), Some(c)) => {
                    let mut s = left.sample_symbols(c, &mut rng);
                    s.extend(right.sample_symbols(n - c, &mut rng));
                    s
                }
                _ => left.sample_symbols(n, &mut rng),
            };
            let profile = MatchProfile::new(&symbols)?;
            let curves = normalize(count_crossings(&profile.sample_targets(&mut rng)));
            Ok(curves)
        },
        |curves| {
            let est = creche_estimate(&curves);
            histogram.add(est.j_star, n);
            estimates.push(est);
            for (acc, &v) in sum_psi.iter_mut().zip(curves.psi()) {
                *acc += v;
            }
            envelope.record(curves.check_envelope());
        },
    )?;
    Ok(TrialSummary {
        n,
        trials,
        seed,
        gamma: setup.gamma,
        change_index: c,
        estimates,
        histogram,
        mean_psi: sum_psi.iter().map(|s| s / trials as f64).collect(),
        envelope,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TextReport {
    pub n: usize,
    pub alphabet_size: u32,
    /// Position of the first symbol of the second text.
    pub true_index: usize,
    pub true_ratio: f64,
    pub estimate: ChangePointEstimate,
    #[serde(skip)]
    pub curves: Option<CrossingCurves>,
}

/// Encodes both files with `policy`, joins them and runs the detector.
pub fn run_text_experiment(
    file_a: &Path,
    file_b: &Path,
    policy: EncodingPolicy,
    seed: u64,
) -> Result<TextReport> {
    let read = |p: &Path| -> Result<_> {
        let raw = std::fs::read(p).map_err(|e| CrecheError::io(p, e))?;
        if raw.is_empty() {
            return Err(CrecheError::EmptyInput);
        }
        encode_bytes(&raw, policy)
    };
    let a = read(file_a)?;
    let b = read(file_b)?;
    let (joined, true_index) = concatenate(&a, &b)?;
    let (curves, estimate) = detect(&joined, &mut seeded(seed))?;
    Ok(TextReport {
        n: joined.len(),
        alphabet_size: joined.alphabet_size(),
        true_index,
        true_ratio: true_index as f64 / joined.len() as f64,
        estimate,
        curves: Some(curves),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iid(p: &[f64]) -> SourceSpec {
        SourceSpec::Iid { probs: p.to_vec() }
    }

    #[test]
    fn summary_conserves_mass() {
        let setup = GraphASetup {
            left: iid(&[0.1, 0.3, 0.6]),
            right: Some(iid(&[0.5, 0.25, 0.25])),
            n: 2000,
            gamma: Some(0.3),
        };
        let s = run_graph_a_experiment(&setup, 10, 3, 0.01).unwrap();
        assert_eq!(s.histogram.total(), 10);
        assert_eq!(s.mean_psi.len(), 1999);
        assert_eq!(s.change_index, Some(600));
        assert!(s.envelope.is_clean());
    }

    #[test]
    fn mismatched_setup_is_rejected() {
        let mut setup = GraphASetup {
            left: iid(&[0.5, 0.5]),
            right: Some(iid(&[0.2, 0.3, 0.5])),
            n: 100,
            gamma: Some(0.5),
        };
        assert!(run_graph_a_experiment(&setup, 1, 0, 0.01).is_err());
        setup.right = None;
        assert!(run_graph_a_experiment(&setup, 1, 0, 0.01).is_err());
        setup.gamma = None;
        assert!(run_graph_a_experiment(&setup, 1, 0, 0.01).is_ok());
    }
}
