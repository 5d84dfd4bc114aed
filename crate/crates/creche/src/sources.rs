// SPDX-License-Identifier: MIT OR Apache-2.0

//! Synthetic IID and first-order Markov sources.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CrecheError, Result};
use crate::rng;
use crate::sequence::SymbolSequence;

const SUM_TOLERANCE: f64 = 1e-12;
const POWER_ITERATION_LIMIT: usize = 1_000_000;
const POWER_ITERATION_TOLERANCE: f64 = 1e-15;

fn validate_probs(probs: &[f64], what: &str) -> Result<()> {
    if probs.is_empty() {
        return Err(CrecheError::InvalidProbabilities(format!("{what} is empty")));
    }
    if probs.len() > crate::sequence::MAX_ALPHABET as usize {
        return Err(CrecheError::AlphabetSize(probs.len() as u32));
    }
    if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(CrecheError::InvalidProbabilities(format!("{what} has entry {p}")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > SUM_TOLERANCE {
        return Err(CrecheError::InvalidProbabilities(format!("{what} sums to {total}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IidSource {
    probs: Vec<f64>,
}

impl IidSource {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        validate_probs(&probs, "probability vector")?;
        Ok(Self { probs })
    }

    pub fn uniform(alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(CrecheError::AlphabetSize(0));
        }
        Self::new(vec![1.0 / alphabet_size as f64; alphabet_size])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    pub fn sample_symbols<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<u16> {
        let dist = WeightedIndex::new(&self.probs).expect("validated weights");
        (0..n).map(|_| dist.sample(rng) as u16).collect()
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<SymbolSequence> {
        check_length(n)?;
        Ok(SymbolSequence::from_parts(
            self.sample_symbols(n, rng),
            self.alphabet_size() as u32,
            None,
        ))
    }
}

/// `n` IID draws from `src` under `seed`.
pub fn sample_iid(src: &IidSource, n: usize, seed: u64) -> Result<SymbolSequence> {
    src.sample(n, &mut rng::seeded(seed))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovSource {
    transition: Vec<Vec<f64>>,
    initial: Vec<f64>,
}

impl MarkovSource {
    /// Builds a chain. With no initial vector the chain starts from its
    /// stationary distribution.
    pub fn new(transition: Vec<Vec<f64>>, initial: Option<Vec<f64>>) -> Result<Self> {
        let k = transition.len();
        if k == 0 {
            return Err(CrecheError::InvalidTransition("matrix is empty".into()));
        }
        for (r, row) in transition.iter().enumerate() {
            if row.len() != k {
                return Err(CrecheError::InvalidTransition(format!(
                    "row {r} has {} entries, expected {k}",
                    row.len()
                )));
            }
            validate_probs(row, &format!("row {r}"))
                .map_err(|e| CrecheError::InvalidTransition(e.to_string()))?;
        }
        let initial = match initial {
            Some(v) => {
                if v.len() != k {
                    return Err(CrecheError::InvalidProbabilities(format!(
                        "initial vector has {} entries, expected {k}",
                        v.len()
                    )));
                }
                validate_probs(&v, "initial vector")?;
                v
            }
            None => power_iterate(&transition)?,
        };
        Ok(Self { transition, initial })
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn alphabet_size(&self) -> usize {
        self.transition.len()
    }

    pub fn stationary_distribution(&self) -> Result<Vec<f64>> {
        power_iterate(&self.transition)
    }

    pub fn sample_symbols<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<u16> {
        let rows: Vec<WeightedIndex<f64>> = self
            .transition
            .iter()
            .map(|row| WeightedIndex::new(row).expect("validated row"))
            .collect();
        let start = WeightedIndex::new(&self.initial).expect("validated initial vector");
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        let mut state = start.sample(rng);
        out.push(state as u16);
        for _ in 1..n {
            state = rows[state].sample(rng);
            out.push(state as u16);
        }
        out
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<SymbolSequence> {
        check_length(n)?;
        Ok(SymbolSequence::from_parts(
            self.sample_symbols(n, rng),
            self.alphabet_size() as u32,
            None,
        ))
    }
}

pub fn sample_markov(src: &MarkovSource, n: usize, seed: u64) -> Result<SymbolSequence> {
    src.sample(n, &mut rng::seeded(seed))
}

pub fn stationary_distribution(src: &MarkovSource) -> Result<Vec<f64>> {
    src.stationary_distribution()
}

/// Power iteration from the uniform vector.
fn power_iterate(p: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = p.len();
    let mut pi = vec![1.0 / k as f64; k];
    let mut next = vec![0.0; k];
    let mut residual = f64::INFINITY;
    for _ in 0..POWER_ITERATION_LIMIT {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (i, row) in p.iter().enumerate() {
            for (j, &pij) in row.iter().enumerate() {
                next[j] += pi[i] * pij;
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        residual = pi
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut pi, &mut next);
        if residual <= POWER_ITERATION_TOLERANCE {
            return Ok(pi);
        }
    }
    Err(CrecheError::NoConvergence {
        iterations: POWER_ITERATION_LIMIT,
        residual,
    })
}

fn check_length(n: usize) -> Result<()> {
    if n < 2 {
        return Err(CrecheError::TooShort { min: 2, got: n });
    }
    Ok(())
}

/// Source descriptor as it appears in experiment configs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SourceSpec {
    Iid {
        probs: Vec<f64>,
    },
    Markov {
        transition: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<Vec<f64>>,
    },
}

/// A validated source ready to draw from.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Iid(IidSource),
    Markov(MarkovSource),
}

impl SourceSpec {
    pub fn build(&self) -> Result<Source> {
        Ok(match self {
            SourceSpec::Iid { probs } => Source::Iid(IidSource::new(probs.clone())?),
            SourceSpec::Markov { transition, initial } => {
                Source::Markov(MarkovSource::new(transition.clone(), initial.clone())?)
            }
        })
    }
}

impl Source {
    pub fn alphabet_size(&self) -> usize {
        match self {
            Source::Iid(s) => s.alphabet_size(),
            Source::Markov(s) => s.alphabet_size(),
        }
    }

    pub fn sample_symbols<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<u16> {
        match self {
            Source::Iid(s) => s.sample_symbols(n, rng),
            Source::Markov(s) => s.sample_symbols(n, rng),
        }
    }
}
