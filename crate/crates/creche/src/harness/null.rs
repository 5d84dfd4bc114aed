// SPDX-License-Identifier: MIT OR Apache-2.0

//! No-change model: uniform targets.
//!
//! Under uniform targets `psi_lr` is a martingale with
//! `Var psi_lr(j) = j^2 / (n^2 (n - j))`, and Doob's inequality gives
//! `P(sup_{j <= n(1-a)} |psi_lr(j)| >= s / sqrt(n)) <= (1-a)^2 / (a s^2)`.
//! Past `n(1-a)` no such control exists: near `j = n` the curve swings by
//! O(1).

use serde::{Deserialize, Serialize};

use super::{check_trials, run_trials, EnvelopeTally};
use crate::crossings::{count_crossings, normalize};
use crate::error::{CrecheError, Result};
use crate::modelb::uniform_targets;
use crate::rng::trial_rng;
use crate::stats::Moments;

/// Default level for the whole-range excursion count.
pub const ENDPOINT_THRESHOLD: f64 = 0.9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullBandReport {
    pub n: usize,
    pub alpha: f64,
    pub s: f64,
    pub trials: usize,
    pub seed: u64,
    /// Last cut covered by the band, `floor(n (1 - alpha))`.
    pub band_end: usize,
    /// Trials with `sup_{j <= band_end} |psi_lr(j)| >= s / sqrt(n)`.
    pub band_exceedances: usize,
    pub band_exceedance_rate: f64,
    /// `(1 - alpha)^2 / (alpha s^2)`.
    pub band_bound: f64,
    /// `sqrt(n) psi_lr(band_end)` across trials.
    pub fixed_point: Moments,
    /// Limiting variance `(1 - alpha)^2 / alpha` of the fixed-point statistic.
    pub fixed_point_variance: f64,
    pub endpoint_threshold: f64,
    /// Trials with `sup_{j <= n-1} |psi_lr(j)| >= endpoint_threshold`.
    pub endpoint_exceedances: usize,
    pub endpoint_exceedance_rate: f64,
    pub envelope: EnvelopeTally,
}

struct NullTrial {
    band_sup: f64,
    fixed: f64,
    full_sup: f64,
    envelope: std::result::Result<(), crate::crossings::EnvelopeViolation>,
}

pub fn run_null_band_check(n: usize, alpha: f64, s: f64, trials: usize, seed: u64) -> Result<NullBandReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CrecheError::param(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if s.is_nan() || s <= 0.0 {
        return Err(CrecheError::param(format!("s must be positive, got {s}")));
    }
    if n < 4 {
        return Err(CrecheError::TooShort { min: 4, got: n });
    }
    check_trials(trials)?;
    let band_end = ((n as f64 * (1.0 - alpha)).floor() as usize).clamp(1, n - 1);
    let sqrt_n = (n as f64).sqrt();

    let mut band_sups = Vec::with_capacity(trials);
    let mut fixed = Vec::with_capacity(trials);
    let mut full_sups = Vec::with_capacity(trials);
    let mut envelope = EnvelopeTally::default();

    run_trials(
        trials,
        |t| {
            let mut rng = trial_rng(seed, t);
            let curves = normalize(count_crossings(&uniform_targets(n, &mut rng)));
            let abs = |j: usize| curves.psi_lr_at(j).abs();
            Ok(NullTrial {
                band_sup: (1..=band_end).map(abs).fold(0.0, f64::max),
                fixed: sqrt_n * curves.psi_lr_at(band_end),
                full_sup: (1..n).map(abs).fold(0.0, f64::max),
                envelope: curves.check_envelope(),
            })
        },
        |trial| {
            band_sups.push(trial.band_sup);
            fixed.push(trial.fixed);
            full_sups.push(trial.full_sup);
            envelope.record(trial.envelope);
        },
    )?;

    let level = s / sqrt_n;
    let band_exceedances = band_sups.iter().filter(|&&x| x >= level).count();
    let endpoint_exceedances = full_sups.iter().filter(|&&x| x >= ENDPOINT_THRESHOLD).count();
    Ok(NullBandReport {
        n,
        alpha,
        s,
        trials,
        seed,
        band_end,
        band_exceedances,
        band_exceedance_rate: band_exceedances as f64 / trials as f64,
        band_bound: (1.0 - alpha).powi(2) / (alpha * s * s),
        fixed_point: Moments::from_samples(&fixed),
        fixed_point_variance: (1.0 - alpha).powi(2) / alpha,
        endpoint_threshold: ENDPOINT_THRESHOLD,
        endpoint_exceedances,
        endpoint_exceedance_rate: endpoint_exceedances as f64 / trials as f64,
        envelope,
    })
}
