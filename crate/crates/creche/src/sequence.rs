// SPDX-License-Identifier: MIT OR Apache-2.0

//! Finite-alphabet sequences and their construction from raw bytes.
//!
//! Symbols are dense 0-based ids below `alphabet_size`. Sequences that came
//! from bytes remember which byte each id stands for, so they can be decoded
//! and so two byte-derived sequences can be merged over a common alphabet.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{CrecheError, Result};

pub const MAX_ALPHABET: u32 = 1 << 16;

/// How raw bytes become symbol ids.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncodingPolicy {
    /// Symbol id = byte value, alphabet of 256.
    #[default]
    Identity,
    /// Distinct bytes in sorted order map to `0..k`.
    DenseRemap,
    /// ASCII letters are lowercased and mapped to `0..26`; every other byte is
    /// dropped.
    LowercaseLetters,
}

impl std::str::FromStr for EncodingPolicy {
    type Err = CrecheError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Self::Identity),
            "dense-remap" | "dense" => Ok(Self::DenseRemap),
            "lowercase-letters" | "letters" => Ok(Self::LowercaseLetters),
            other => Err(CrecheError::param(format!(
                "unknown encoding policy {other:?} (expected identity, dense-remap or lowercase-letters)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolSequence {
    symbols: Vec<u16>,
    alphabet_size: u32,
    /// Byte represented by each symbol id, when the sequence came from bytes.
    labels: Option<Vec<u8>>,
}

impl SymbolSequence {
    /// Validates an explicit symbol array. At least two symbols are required.
    pub fn new(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
            return Err(CrecheError::AlphabetSize(alphabet_size));
        }
        if symbols.is_empty() {
            return Err(CrecheError::EmptyInput);
        }
        if symbols.len() < 2 {
            return Err(CrecheError::TooShort {
                min: 2,
                got: symbols.len(),
            });
        }
        let mut out = Vec::with_capacity(symbols.len());
        for (position, &symbol) in symbols.iter().enumerate() {
            if symbol >= alphabet_size {
                return Err(CrecheError::SymbolOutOfRange {
                    symbol,
                    position,
                    alphabet_size,
                });
            }
            out.push(symbol as u16);
        }
        Ok(Self {
            symbols: out,
            alphabet_size,
            labels: None,
        })
    }

    pub(crate) fn from_parts(symbols: Vec<u16>, alphabet_size: u32, labels: Option<Vec<u8>>) -> Self {
        debug_assert!(symbols.len() >= 2);
        debug_assert!(symbols.iter().all(|&s| u32::from(s) < alphabet_size));
        Self {
            symbols,
            alphabet_size,
            labels,
        }
    }

    pub fn symbols(&self) -> &[u16] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn labels(&self) -> Option<&[u8]> {
        self.labels.as_deref()
    }

    /// Maps symbol ids back to the bytes they were encoded from.
    pub fn decode_bytes(&self) -> Option<Vec<u8>> {
        let labels = self.labels.as_ref()?;
        Some(self.symbols.iter().map(|&s| labels[s as usize]).collect())
    }

    /// Number of distinct symbols that actually occur.
    pub fn distinct_symbols(&self) -> usize {
        self.symbols.iter().collect::<BTreeSet<_>>().len()
    }
}

pub fn encode_bytes(raw: &[u8], policy: EncodingPolicy) -> Result<SymbolSequence> {
    if raw.is_empty() {
        return Err(CrecheError::EmptyInput);
    }
    let (symbols, alphabet_size, labels): (Vec<u16>, u32, Vec<u8>) = match policy {
        EncodingPolicy::Identity => (
            raw.iter().map(|&b| u16::from(b)).collect(),
            256,
            (0..=255u8).collect(),
        ),
        EncodingPolicy::DenseRemap => {
            let distinct: Vec<u8> = raw.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
            let mut map = [0u16; 256];
            for (id, &b) in distinct.iter().enumerate() {
                map[b as usize] = id as u16;
            }
            (
                raw.iter().map(|&b| map[b as usize]).collect(),
                distinct.len() as u32,
                distinct,
            )
        }
        EncodingPolicy::LowercaseLetters => (
            raw.iter()
                .filter(|b| b.is_ascii_alphabetic())
                .map(|b| u16::from(b.to_ascii_lowercase() - b'a'))
                .collect(),
            26,
            (b'a'..=b'z').collect(),
        ),
    };
    if symbols.is_empty() {
        return Err(CrecheError::EmptyInput);
    }
    if symbols.len() < 2 {
        return Err(CrecheError::TooShort {
            min: 2,
            got: symbols.len(),
        });
    }
    Ok(SymbolSequence::from_parts(symbols, alphabet_size, Some(labels)))
}

/// Joins two sequences, returning the result and the index of the first
/// symbol of `right`.
///
/// Byte-derived sequences are remapped onto the union of their labels.
/// Unlabelled sequences share ids directly and the wider alphabet wins.
pub fn concatenate(left: &SymbolSequence, right: &SymbolSequence) -> Result<(SymbolSequence, usize)> {
    if left.is_empty() || right.is_empty() {
        return Err(CrecheError::EmptyInput);
    }
    let change = left.len();
    let mut symbols = Vec::with_capacity(left.len() + right.len());
    let (alphabet_size, labels) = match (&left.labels, &right.labels) {
        (None, None) => {
            symbols.extend_from_slice(&left.symbols);
            symbols.extend_from_slice(&right.symbols);
            (left.alphabet_size.max(right.alphabet_size), None)
        }
        (Some(a), Some(b)) if a == b => {
            symbols.extend_from_slice(&left.symbols);
            symbols.extend_from_slice(&right.symbols);
            (left.alphabet_size, Some(a.clone()))
        }
        (Some(a), Some(b)) => {
            let union: Vec<u8> = a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect();
            let mut id_of = [0u16; 256];
            for (id, &byte) in union.iter().enumerate() {
                id_of[byte as usize] = id as u16;
            }
            symbols.extend(left.symbols.iter().map(|&s| id_of[a[s as usize] as usize]));
            symbols.extend(right.symbols.iter().map(|&s| id_of[b[s as usize] as usize]));
            (union.len() as u32, Some(union))
        }
        _ => {
            return Err(CrecheError::IncompatibleAlphabets(
                "cannot join a byte-derived sequence with a raw symbol sequence".into(),
            ))
        }
    };
    Ok((SymbolSequence::from_parts(symbols, alphabet_size, labels), change))
}

/// Change index `round(n * gamma)` with halves rounded up. Must land in
/// `1..=n-1`.
pub fn change_index(n: usize, gamma: f64) -> Result<usize> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(CrecheError::param(format!("gamma must lie in (0,1), got {gamma}")));
    }
    let c = (n as f64 * gamma + 0.5).floor() as usize;
    if c < 1 || c + 1 > n {
        return Err(CrecheError::param(format!(
            "change index round({n} * {gamma}) = {c} is outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(c)
}
