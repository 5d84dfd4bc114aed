// SPDX-License-Identifier: MIT OR Apache-2.0

//! Offline change-point detection for finite-alphabet sequences.
//!
//! Every position of a sequence is linked to a uniformly chosen position that
//! shares its longest repeated prefix (the match graph). A change in the
//! source shows up as a cut of the sequence that few links cross. The
//! estimator normalises the left-to-right and right-to-left crossing counts
//! against their no-change means and returns the cut that minimises the larger
//! of the two.
//!
//! The crate also ships a two-block toy model of the match graph together with
//! its closed-form mean and variance curves, and a Monte Carlo harness that
//! checks the estimator against them.

#![forbid(unsafe_code)]

pub mod crossings;
pub mod error;
pub mod harness;
pub mod matchengine;
pub mod modelb;
pub mod output;
pub mod rng;
pub mod sequence;
pub mod sources;
pub mod stats;

pub use crossings::{
    count_crossings, creche_estimate, detect, normalize, ChangePointEstimate, CrossingCounts,
    CrossingCurves, EnvelopeViolation,
};
pub use error::{CrecheError, Result};
pub use matchengine::{
    compute_match_lengths, estimate_entropy, sample_match_targets, MatchProfile, MatchTargets,
};
pub use modelb::{
    consistency_bound, sample_model_b, simulate_inar, theory_curves, z_transform_lr,
    z_transform_rl, InarPath, ModelBParams, TheoryCurves,
};
pub use sequence::{
    change_index, concatenate, encode_bytes, EncodingPolicy, SymbolSequence,
};
pub use sources::{IidSource, MarkovSource, SourceSpec};
