// SPDX-License-Identifier: MIT OR Apache-2.0

//! JSON experiment descriptions and their runner.
//!
//! ```json
//! {
//!   "kind": "graph-a-synthetic",
//!   "left": {"type": "iid", "probs": [0.1, 0.3, 0.6]},
//!   "right": {"type": "iid", "probs": [0.5, 0.25, 0.25]},
//!   "n": 50000,
//!   "gamma": 0.2,
//!   "trials": 100,
//!   "seed": 1
//! }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::graph_a::{run_graph_a_experiment, run_text_experiment, GraphASetup, TextReport, TrialSummary};
use super::model_b::{run_model_b_consistency, ConsistencyReport};
use super::null::{run_null_band_check, NullBandReport};
use crate::error::{CrecheError, Result};
use crate::modelb::{theory_curves, ModelBParams};
use crate::output::{self, RunManifest};
use crate::sequence::EncodingPolicy;

fn default_trials() -> usize {
    1
}

fn default_bin_width() -> f64 {
    0.01
}

fn default_s_grid() -> Vec<f64> {
    vec![2.0, 4.0, 8.0]
}

fn default_null_s() -> f64 {
    3.0
}

fn default_null_alpha() -> f64 {
    0.5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Uniform targets, band check on `psi_lr`.
    Null {
        n: usize,
        #[serde(default = "default_null_alpha")]
        alpha: f64,
        #[serde(default = "default_null_s")]
        s: f64,
    },
    /// Two-block model, consistency sweep over `s_grid`.
    ModelB {
        n: usize,
        gamma: f64,
        alpha_l: f64,
        alpha_r: f64,
        #[serde(default = "default_s_grid")]
        s_grid: Vec<f64>,
    },
    GraphASynthetic(GraphASetup),
    GraphAText {
        file_a: PathBuf,
        file_b: PathBuf,
        #[serde(default)]
        policy: EncodingPolicy,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    #[serde(flatten)]
    pub kind: ExperimentKind,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_bin_width")]
    pub histogram_bin_width: f64,
    /// Directory for CSV tables and `manifest.json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CrecheError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(CrecheError::param("trials must be at least 1"));
        }
        match &self.kind {
            ExperimentKind::ModelB {
                n,
                gamma,
                alpha_l,
                alpha_r,
                s_grid,
            } => {
                ModelBParams::new(*n, *gamma, *alpha_l, *alpha_r)?;
                if s_grid.iter().any(|s| s.is_nan() || *s <= 0.0) {
                    return Err(CrecheError::param("s_grid entries must be positive"));
                }
            }
            ExperimentKind::GraphAText { file_a, file_b, .. } => {
                for f in [file_a, file_b] {
                    if !f.is_file() {
                        return Err(CrecheError::param(format!("no such file: {}", f.display())));
                    }
                }
            }
            ExperimentKind::Null { alpha, s, .. } => {
                if !(0.0..1.0).contains(alpha) || *alpha == 0.0 || s.is_nan() || *s <= 0.0 {
                    return Err(CrecheError::param("null run needs 0 < alpha < 1 and s > 0"));
                }
            }
            ExperimentKind::GraphASynthetic(_) => {}
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentOutcome {
    Null(NullBandReport),
    ModelB(ConsistencyReport),
    GraphASynthetic(TrialSummary),
    GraphAText(TextReport),
}

impl ExperimentOutcome {
    /// Aggregates only: per-trial lists and curves are left to the CSV files.
    pub fn summary(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            ExperimentOutcome::Null(r) => json!(r),
            ExperimentOutcome::ModelB(report) => json!({
                "params": report.params,
                "trials": report.trials,
                "constant_k": report.constant_k,
                "rows": report.rows,
                "exact_errors": report.exact_errors,
                "exact_error_rate": report.exact_error_rate,
                "envelope": report.envelope,
            }),
            ExperimentOutcome::GraphASynthetic(s) => json!({
                "n": s.n,
                "trials": s.trials,
                "gamma": s.gamma,
                "change_index": s.change_index,
                "histogram_mode": s.histogram.mode(),
                "histogram_total": s.histogram.total(),
                "envelope": s.envelope,
            }),
            ExperimentOutcome::GraphAText(r) => json!(r),
        }
    }
}

/// Runs `spec` and, when it names an output directory, writes its tables and
/// `manifest.json` there.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    spec.validate()?;
    let outcome = match &spec.kind {
        ExperimentKind::Null { n, alpha, s } => {
            ExperimentOutcome::Null(run_null_band_check(*n, *alpha, *s, spec.trials, spec.seed)?)
        }
        ExperimentKind::ModelB {
            n,
            gamma,
            alpha_l,
            alpha_r,
            s_grid,
        } => {
            let params = ModelBParams::new(*n, *gamma, *alpha_l, *alpha_r)?;
            ExperimentOutcome::ModelB(run_model_b_consistency(&params, s_grid, spec.trials, spec.seed)?)
        }
        ExperimentKind::GraphASynthetic(setup) => ExperimentOutcome::GraphASynthetic(run_graph_a_experiment(
            setup,
            spec.trials,
            spec.seed,
            spec.histogram_bin_width,
        )?),
        ExperimentKind::GraphAText { file_a, file_b, policy } => {
            ExperimentOutcome::GraphAText(run_text_experiment(file_a, file_b, *policy, spec.seed)?)
        }
    };
    if let Some(dir) = &spec.out {
        write_artifacts(spec, &outcome, dir)?;
    }
    Ok(outcome)
}

fn write_artifacts(spec: &ExperimentSpec, outcome: &ExperimentOutcome, dir: &Path) -> Result<()> {
    let mut artifacts = Vec::new();
    let mut emit = |name: &str, f: &dyn Fn(&mut std::io::BufWriter<std::fs::File>) -> std::io::Result<()>| {
        artifacts.push(name.to_string());
        output::write_file(&dir.join(name), f)
    };
    match outcome {
        ExperimentOutcome::Null(_) => {}
        ExperimentOutcome::ModelB(report) => {
            let theory = theory_curves(&report.params);
            emit("consistency.csv", &|w| output::write_consistency_csv(w, &report.rows))?;
            emit("mean_curve.csv", &|w| output::write_mean_curve_csv(w, &report.mean_psi, Some(&theory)))?;
            emit("estimates.csv", &|w| output::write_estimates_csv(w, &report.estimates))?;
        }
        ExperimentOutcome::GraphASynthetic(s) => {
            emit("histogram.csv", &|w| output::write_histogram_csv(w, &s.histogram))?;
            emit("mean_curve.csv", &|w| output::write_mean_curve_csv(w, &s.mean_psi, None))?;
            emit("estimates.csv", &|w| output::write_estimates_csv(w, &s.estimates))?;
        }
        ExperimentOutcome::GraphAText(r) => {
            if let Some(curves) = &r.curves {
                emit("curve.csv", &|w| output::write_curves_csv(w, curves, Some(r.true_index)))?;
            }
        }
    }
    let mut spec_json = serde_json::to_value(spec)?;
    if let Some(obj) = spec_json.as_object_mut() {
        // The output location does not change the results.
        obj.remove("out");
    }
    let mut manifest = RunManifest::new(spec_json, spec.seed, outcome.summary());
    manifest.artifacts = artifacts;
    manifest.write(&dir.join("manifest.json"))
}
