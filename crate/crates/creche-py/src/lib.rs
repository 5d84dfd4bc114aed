// SPDX-License-Identifier: MIT OR Apache-2.0

//! Python bindings. The module imports as `creche`.
//!
//! Sequences are passed as `bytes` (encoded with a policy) or as lists of
//! integer symbols. Parameter errors raise `ValueError`, file errors `OSError`.

use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use creche::harness::{self, ExperimentSpec};
use creche::rng::seeded;
use creche::{CrecheError, EncodingPolicy, ModelBParams, SourceSpec, SymbolSequence};

fn to_py(e: CrecheError) -> PyErr {
    match e {
        CrecheError::Io { .. } => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn policy(name: &str) -> PyResult<EncodingPolicy> {
    name.parse().map_err(to_py)
}

fn sequence_from(symbols: Vec<u32>, alphabet_size: Option<u32>) -> PyResult<SymbolSequence> {
    let k = match alphabet_size {
        Some(k) => k,
        None => symbols.iter().max().map_or(1, |&m| m + 1),
    };
    SymbolSequence::new(symbols, k).map_err(to_py)
}

/// Outcome of one detection: `j_star`, `gamma_hat = j_star / n`, `psi_min`.
#[pyclass(frozen, get_all, module = "creche")]
struct ChangePoint {
    n: usize,
    j_star: usize,
    gamma_hat: f64,
    psi_min: f64,
}

#[pymethods]
impl ChangePoint {
    fn __repr__(&self) -> String {
        format!(
            "ChangePoint(n={}, j_star={}, gamma_hat={}, psi_min={})",
            self.n, self.j_star, self.gamma_hat, self.psi_min
        )
    }
}

/// Crossing counts and normalised curves. Count lists run over cuts `0..n`,
/// curve lists over `j = 1..n-1`.
#[pyclass(frozen, get_all, module = "creche")]
struct Curves {
    c_lr: Vec<u64>,
    c_rl: Vec<u64>,
    psi_lr: Vec<f64>,
    psi_rl: Vec<f64>,
    psi: Vec<f64>,
}

impl From<&creche::CrossingCurves> for Curves {
    fn from(c: &creche::CrossingCurves) -> Self {
        Self {
            c_lr: c.c_lr().to_vec(),
            c_rl: c.c_rl().to_vec(),
            psi_lr: c.psi_lr().to_vec(),
            psi_rl: c.psi_rl().to_vec(),
            psi: c.psi().to_vec(),
        }
    }
}

fn estimate_of(n: usize, e: creche::ChangePointEstimate) -> ChangePoint {
    ChangePoint {
        n,
        j_star: e.j_star,
        gamma_hat: e.gamma_hat,
        psi_min: e.psi_min,
    }
}

/// Match lengths and match-position sets of one sequence.
#[pyclass(module = "creche")]
struct MatchProfile {
    inner: creche::MatchProfile,
}

#[pymethods]
impl MatchProfile {
    #[new]
    fn new(symbols: Vec<u16>) -> PyResult<Self> {
        Ok(Self {
            inner: creche::MatchProfile::new(&symbols).map_err(to_py)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn match_lengths(&self) -> Vec<usize> {
        self.inner.match_lengths().to_vec()
    }

    fn match_position_set(&self, i: usize) -> PyResult<Vec<usize>> {
        self.inner.match_position_set(i).map_err(to_py)
    }

    fn sample_targets(&self, seed: u64) -> Vec<usize> {
        self.inner.sample_targets(&mut seeded(seed)).into_inner()
    }

    /// Bits per symbol, `n log2 n / sum L`.
    fn entropy(&self) -> PyResult<f64> {
        creche::estimate_entropy(&self.inner).map_err(to_py)
    }
}

/// Runs the detector on raw bytes.
#[pyfunction]
#[pyo3(signature = (data, seed=0, policy="identity"))]
fn detect(data: &[u8], seed: u64, policy: &str) -> PyResult<(ChangePoint, Curves)> {
    let x = creche::encode_bytes(data, self::policy(policy)?).map_err(to_py)?;
    let (curves, est) = creche::detect(&x, &mut seeded(seed)).map_err(to_py)?;
    Ok((estimate_of(x.len(), est), Curves::from(&curves)))
}

/// Runs the detector on integer symbols.
#[pyfunction]
#[pyo3(signature = (symbols, seed=0, alphabet_size=None))]
fn detect_symbols(symbols: Vec<u32>, seed: u64, alphabet_size: Option<u32>) -> PyResult<(ChangePoint, Curves)> {
    let x = sequence_from(symbols, alphabet_size)?;
    let (curves, est) = creche::detect(&x, &mut seeded(seed)).map_err(to_py)?;
    Ok((estimate_of(x.len(), est), Curves::from(&curves)))
}

/// Curves and estimate for an explicit target array.
#[pyfunction]
fn crossing_curves(targets: Vec<usize>) -> PyResult<(ChangePoint, Curves)> {
    let n = targets.len();
    let t = creche::MatchTargets::new(targets).map_err(to_py)?;
    let curves = creche::normalize(creche::count_crossings(&t));
    Ok((estimate_of(n, creche::creche_estimate(&curves)), Curves::from(&curves)))
}

#[pyfunction]
fn estimate_entropy(data: &[u8]) -> PyResult<f64> {
    let x = creche::encode_bytes(data, EncodingPolicy::Identity).map_err(to_py)?;
    let p = creche::MatchProfile::new(x.symbols()).map_err(to_py)?;
    creche::estimate_entropy(&p).map_err(to_py)
}

/// Draws `n` symbols from a source given as JSON, e.g.
/// `{"type": "iid", "probs": [0.5, 0.5]}`.
#[pyfunction]
#[pyo3(signature = (source_json, n, seed=0))]
fn sample_source(source_json: &str, n: usize, seed: u64) -> PyResult<Vec<u16>> {
    let spec: SourceSpec =
        serde_json::from_str(source_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let src = spec.build().map_err(to_py)?;
    Ok(src.sample_symbols(n, &mut seeded(seed)))
}

/// Two-block model with its closed-form curves.
#[pyclass(frozen, module = "creche")]
struct ModelB {
    params: ModelBParams,
}

#[pymethods]
impl ModelB {
    #[new]
    #[pyo3(signature = (n, gamma, alpha_l, alpha_r))]
    fn new(n: usize, gamma: f64, alpha_l: f64, alpha_r: f64) -> PyResult<Self> {
        Ok(Self {
            params: ModelBParams::new(n, gamma, alpha_l, alpha_r).map_err(to_py)?,
        })
    }

    #[getter]
    fn change_index(&self) -> usize {
        self.params.c()
    }

    fn sample(&self, seed: u64) -> Vec<usize> {
        creche::sample_model_b(&self.params, seed).into_inner()
    }

    fn mean_lr(&self, j: usize) -> f64 {
        creche::theory_curves(&self.params).mean_lr(j)
    }

    fn mean_rl(&self, j: usize) -> f64 {
        creche::theory_curves(&self.params).mean_rl(j)
    }

    fn var_z_lr(&self, j: usize) -> f64 {
        creche::theory_curves(&self.params).var_z_lr(j)
    }

    fn var_z_rl(&self, j: usize) -> f64 {
        creche::theory_curves(&self.params).var_z_rl(j)
    }

    fn d_min(&self) -> (f64, f64) {
        let t = creche::theory_curves(&self.params);
        (t.d_min_lr(), t.d_min_rl())
    }

    fn consistency_constant(&self) -> f64 {
        creche::modelb::consistency_constant(&self.params)
    }

    fn consistency_bound(&self, s: f64) -> f64 {
        creche::consistency_bound(&self.params, s)
    }

    fn __repr__(&self) -> String {
        let p = &self.params;
        format!("ModelB(n={}, gamma={}, alpha_l={}, alpha_r={})", p.n, p.gamma, p.alpha_l, p.alpha_r)
    }
}

/// Runs a JSON experiment spec and returns its JSON summary.
#[pyfunction]
#[pyo3(signature = (spec_json, out=None))]
fn run_experiment(py: Python<'_>, spec_json: &str, out: Option<PathBuf>) -> PyResult<String> {
    let mut spec = ExperimentSpec::from_json(spec_json).map_err(to_py)?;
    if out.is_some() {
        spec.out = out;
    }
    let outcome = py.detach(|| harness::run_experiment(&spec)).map_err(to_py)?;
    Ok(outcome.summary().to_string())
}

/// `round(n * gamma)`, checked to lie in `1..n`.
#[pyfunction]
fn change_index(n: usize, gamma: f64) -> PyResult<usize> {
    creche::change_index(n, gamma).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "creche")]
fn creche_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<ChangePoint>()?;
    m.add_class::<Curves>()?;
    m.add_class::<MatchProfile>()?;
    m.add_class::<ModelB>()?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(detect_symbols, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_curves, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(sample_source, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(change_index, m)?)?;
    Ok(())
}
