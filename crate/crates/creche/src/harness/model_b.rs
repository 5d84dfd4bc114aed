// SPDX-License-Identifier: MIT OR Apache-2.0

//! Repeated draws from the two-block model.

use serde::{Deserialize, Serialize};

use super::{check_trials, run_trials, EnvelopeTally};
use crate::crossings::{count_crossings, creche_estimate, normalize, ChangePointEstimate};
use crate::error::{CrecheError, Result};
use crate::modelb::{consistency_bound, consistency_constant, sample_model_b_with, theory_curves, ModelBParams};
use crate::rng::trial_rng;

/// What one trial reports at the probed cuts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelBTrial {
    pub estimate: ChangePointEstimate,
    pub c_lr: Vec<u64>,
    pub c_rl: Vec<u64>,
    pub z_lr: Vec<f64>,
    pub z_rl: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelBBatch {
    pub params: ModelBParams,
    pub probes: Vec<usize>,
    pub seed: u64,
    pub trials: Vec<ModelBTrial>,
    /// Average `psi` over trials, for `j = 1..n`.
    pub mean_psi: Vec<f64>,
    pub envelope: EnvelopeTally,
}

/// Runs `trials` draws, recording counts and martingale transforms at each
/// cut in `probes` (which must lie in `1..n`).
pub fn run_model_b_batch(params: &ModelBParams, probes: &[usize], trials: usize, seed: u64) -> Result<ModelBBatch> {
    params.validate()?;
    check_trials(trials)?;
    let n = params.n;
    if let Some(&j) = probes.iter().find(|&&j| j == 0 || j >= n) {
        return Err(CrecheError::IndexOutOfRange { index: j, len: n });
    }
    let theory = theory_curves(params);

    let mut records = Vec::with_capacity(trials);
    let mut sum_psi = vec![0.0f64; n - 1];
    let mut envelope = EnvelopeTally::default();
    run_trials(
        trials,
        |t| {
            let mut rng = trial_rng(seed, t);
            let curves = normalize(count_crossings(&sample_model_b_with(params, &mut rng)));
            let record = ModelBTrial {
                estimate: creche_estimate(&curves),
                c_lr: probes.iter().map(|&j| curves.c_lr()[j]).collect(),
                c_rl: probes.iter().map(|&j| curves.c_rl()[j]).collect(),
                z_lr: probes.iter().map(|&j| theory.z_lr(j, curves.psi_lr_at(j))).collect(),
                z_rl: probes.iter().map(|&j| theory.z_rl(j, curves.psi_rl_at(j))).collect(),
            };
            Ok((record, curves))
        },
        |(record, curves)| {
            for (acc, &v) in sum_psi.iter_mut().zip(curves.psi()) {
                *acc += v;
            }
            envelope.record(curves.check_envelope());
            records.push(record);
        },
    )?;
    let mean_psi = sum_psi.iter().map(|s| s / trials as f64).collect();
    Ok(ModelBBatch {
        params: *params,
        probes: probes.to_vec(),
        seed,
        trials: records,
        mean_psi,
        envelope,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub s: f64,
    /// Trials with `|gamma_hat - gamma| >= s / sqrt(n)`.
    pub exceedances: usize,
    pub empirical: f64,
    /// `min(1, K / s^2)`.
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub params: ModelBParams,
    pub trials: usize,
    pub seed: u64,
    pub constant_k: f64,
    pub rows: Vec<ConsistencyRow>,
    /// Trials whose estimate is not exactly the change index.
    pub exact_errors: usize,
    pub exact_error_rate: f64,
    pub estimates: Vec<ChangePointEstimate>,
    pub envelope: EnvelopeTally,
    /// Average `psi` over trials, for `j = 1..n`.
    #[serde(skip)]
    pub mean_psi: Vec<f64>,
}

impl ConsistencyReport {
    pub fn all_within_bound(&self) -> bool {
        self.rows.iter().all(|r| r.within_bound)
    }
}

pub fn run_model_b_consistency(
    params: &ModelBParams,
    s_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<ConsistencyReport> {
    let batch = run_model_b_batch(params, &[], trials, seed)?;
    let c = params.c();
    let sqrt_n = (params.n as f64).sqrt();
    let estimates: Vec<ChangePointEstimate> = batch.trials.iter().map(|t| t.estimate).collect();
    let rows = s_grid
        .iter()
        .map(|&s| {
            let exceedances = estimates
                .iter()
                .filter(|e| (e.gamma_hat - params.gamma).abs() >= s / sqrt_n)
                .count();
            let empirical = exceedances as f64 / trials as f64;
            let bound = consistency_bound(params, s);
            ConsistencyRow {
                s,
                exceedances,
                empirical,
                bound,
                within_bound: empirical <= bound,
            }
        })
        .collect();
    let exact_errors = estimates.iter().filter(|e| e.j_star != c).count();
    Ok(ConsistencyReport {
        params: *params,
        trials,
        seed,
        constant_k: consistency_constant(params),
        rows,
        exact_errors,
        exact_error_rate: exact_errors as f64 / trials as f64,
        estimates,
        envelope: batch.envelope,
        mean_psi: batch.mean_psi,
    })
}
