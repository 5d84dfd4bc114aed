// SPDX-License-Identifier: MIT OR Apache-2.0

//! Monte Carlo experiments.
//!
//! Trial `t` of a run draws from `rng::trial_rng(seed, t)`. Trials execute on
//! the current rayon pool in fixed batches and are reduced in trial order, so
//! every report is identical for any thread count.

mod graph_a;
mod model_b;
mod null;
mod spec;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crossings::EnvelopeViolation;
use crate::error::{CrecheError, Result};

pub use graph_a::{run_graph_a_experiment, run_text_experiment, GraphASetup, TextReport, TrialSummary};
pub use model_b::{
    run_model_b_batch, run_model_b_consistency, ConsistencyReport, ConsistencyRow, ModelBBatch,
    ModelBTrial,
};
pub use null::{run_null_band_check, NullBandReport};
pub use spec::{run_experiment, ExperimentKind, ExperimentOutcome, ExperimentSpec};

const BATCH: usize = 64;

/// Runs `trial(0..trials)` in parallel batches, feeding results to `sink` in
/// trial order.
pub(crate) fn run_trials<T, F, S>(trials: usize, trial: F, mut sink: S) -> Result<()>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
    S: FnMut(T),
{
    for start in (0..trials).step_by(BATCH) {
        let end = (start + BATCH).min(trials);
        let batch: Vec<T> = (start..end)
            .into_par_iter()
            .map(|t| trial(t as u64))
            .collect::<Result<_>>()?;
        batch.into_iter().for_each(&mut sink);
    }
    Ok(())
}

pub(crate) fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(CrecheError::param("trials must be at least 1"));
    }
    Ok(())
}

/// Tally of envelope failures over a run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeTally {
    pub violations: usize,
    pub first: Option<EnvelopeViolation>,
}

impl EnvelopeTally {
    pub(crate) fn record(&mut self, result: std::result::Result<(), EnvelopeViolation>) {
        if let Err(v) = result {
            self.violations += 1;
            self.first.get_or_insert(v);
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

/// Histogram of change-ratio estimates over `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(bin_width: f64) -> Result<Self> {
        let bins = (1.0 / bin_width).round();
        if !(bin_width > 0.0 && bin_width <= 1.0) || ((1.0 / bin_width) - bins).abs() > 1e-9 {
            return Err(CrecheError::param(format!(
                "histogram bin width must divide 1, got {bin_width}"
            )));
        }
        Ok(Self {
            bin_width,
            counts: vec![0; bins as usize],
        })
    }

    /// Adds the estimate `j_star / n`. Binning is done in integers so that
    /// exact ratios such as 1/2 never fall into the bin below.
    pub fn add(&mut self, j_star: usize, n: usize) {
        let bins = self.counts.len();
        let idx = ((j_star as u128 * bins as u128) / n as u128) as usize;
        self.counts[idx.min(bins - 1)] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Centre of the fullest bin, ties going to the smaller estimate.
    pub fn mode(&self) -> f64 {
        let mut best = 0;
        for (i, &c) in self.counts.iter().enumerate() {
            if c > self.counts[best] {
                best = i;
            }
        }
        (best as f64 + 0.5) * self.bin_width
    }
}
