// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded random streams.
//!
//! All randomness flows from a single `u64` seed. Multi-trial runs give trial
//! `t` its own ChaCha stream `t` under the master seed, so a trial's draws do
//! not depend on which thread ran it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type CrecheRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> CrecheRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(master_seed: u64, trial: u64) -> CrecheRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}
