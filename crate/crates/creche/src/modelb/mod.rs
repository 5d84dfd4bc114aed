// SPDX-License-Identifier: MIT OR Apache-2.0

//! Two-block toy model of the match graph and its closed-form theory.
//!
//! Positions before the change index `c` link uniformly to their own block
//! with weight 1 per target and to the other block with weight `alpha_l`;
//! positions from `c` on do the same with `alpha_r`. With `alpha = 1` both
//! blocks collapse to uniform targets (no change); with `alpha = 0` no link
//! crosses `c`.

mod bound;
mod inar;
mod theory;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::crossings::CrossingCurves;
use crate::error::{CrecheError, Result};
use crate::matchengine::MatchTargets;
use crate::rng;
use crate::sequence::change_index;

pub use bound::{consistency_bound, consistency_constant};
pub use inar::{marginal_p, mean_y, simulate_inar, var_w, var_z, InarPath};
pub use theory::{theory_curves, TheoryCurves, TheoryPoint};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelBParams {
    pub n: usize,
    pub gamma: f64,
    pub alpha_l: f64,
    pub alpha_r: f64,
}

impl ModelBParams {
    pub fn new(n: usize, gamma: f64, alpha_l: f64, alpha_r: f64) -> Result<Self> {
        let p = Self {
            n,
            gamma,
            alpha_l,
            alpha_r,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, a) in [("alpha_l", self.alpha_l), ("alpha_r", self.alpha_r)] {
            if !(0.0..=1.0).contains(&a) {
                return Err(CrecheError::param(format!("{name} must lie in [0,1], got {a}")));
            }
        }
        if self.n < 2 {
            return Err(CrecheError::TooShort { min: 2, got: self.n });
        }
        change_index(self.n, self.gamma)?;
        Ok(())
    }

    /// Change index `round(n * gamma)`.
    pub fn c(&self) -> usize {
        change_index(self.n, self.gamma).expect("validated params")
    }

    pub fn delta_l(&self) -> f64 {
        self.gamma + (1.0 - self.gamma) * self.alpha_l
    }

    pub fn delta_r(&self) -> f64 {
        self.gamma * self.alpha_r + (1.0 - self.gamma)
    }

    /// Real-valued change location `n * gamma` used by the theory formulas.
    pub fn n_gamma(&self) -> f64 {
        self.n as f64 * self.gamma
    }

    /// The same model seen with positions reversed: the blocks swap, so
    /// `gamma -> 1 - gamma` and the two cross-probabilities trade places.
    pub fn mirrored(&self) -> Self {
        Self {
            n: self.n,
            gamma: 1.0 - self.gamma,
            alpha_l: self.alpha_r,
            alpha_r: self.alpha_l,
        }
    }

    /// Probability that a row in the left block links into the right block.
    /// Row weights are normalised over the integer block sizes, which matches
    /// `(1 - gamma) alpha_l / delta_l` whenever `n * gamma` is integral.
    pub fn cross_probability_left(&self) -> f64 {
        let c = self.c() as f64;
        let right = (self.n as f64 - c) * self.alpha_l;
        right / (c + right)
    }

    pub fn cross_probability_right(&self) -> f64 {
        let c = self.c() as f64;
        let left = c * self.alpha_r;
        left / (left + (self.n as f64 - c))
    }

    /// Exact mean and variance of `C_LR(j)` under the sampler, `j` in `1..n`.
    ///
    /// Before `c` this is `Bin(j, (m - j) / m)` with `m = c + (n - c) alpha_l`.
    /// From `c` on it is the sum of `Bin(c, q_l (n - j) / (n - c))` and
    /// `Bin(j - c, (1 - q_r) (n - j) / (n - c))`.
    pub fn c_lr_moments(&self, j: usize) -> (f64, f64) {
        let (n, c) = (self.n as f64, self.c() as f64);
        let jf = j as f64;
        let (q_l, q_r) = (self.cross_probability_left(), self.cross_probability_right());
        let bin = |trials: f64, p: f64| (trials * p, trials * p * (1.0 - p));
        if jf < c {
            bin(jf, q_l + (1.0 - q_l) * (c - jf) / c)
        } else {
            let tail = (n - jf) / (n - c);
            let (m1, v1) = bin(c, q_l * tail);
            let (m2, v2) = bin(jf - c, (1.0 - q_r) * tail);
            (m1 + m2, v1 + v2)
        }
    }
}

pub fn sample_model_b_with<R: Rng + ?Sized>(params: &ModelBParams, rng: &mut R) -> MatchTargets {
    let n = params.n;
    let c = params.c();
    let p_left_cross = params.cross_probability_left();
    let p_right_cross = params.cross_probability_right();
    let targets = (0..n)
        .map(|i| {
            let cross = if i < c {
                rng.random_bool(p_left_cross)
            } else {
                rng.random_bool(p_right_cross)
            };
            let left_block = (i < c) != cross;
            if left_block {
                rng.random_range(0..c)
            } else {
                rng.random_range(c..n)
            }
        })
        .collect();
    MatchTargets::from_vec_unchecked(targets)
}

pub fn sample_model_b(params: &ModelBParams, seed: u64) -> MatchTargets {
    sample_model_b_with(params, &mut rng::seeded(seed))
}

/// Independent uniform targets on `0..n` (the no-change model).
pub fn uniform_targets<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MatchTargets {
    MatchTargets::from_vec_unchecked((0..n).map(|_| rng.random_range(0..n)).collect())
}

/// Martingale transform of `psi_lr`, for `j` in `1..n` (index `j - 1`).
///
/// Before `c` the centred curve is rescaled by `(n - j) / (n delta_l - j)`;
/// from `c` on it is only centred.
pub fn z_transform_lr(curves: &CrossingCurves, theory: &TheoryCurves) -> Vec<f64> {
    (1..curves.n())
        .map(|j| theory.z_lr(j, curves.psi_lr_at(j)))
        .collect()
}

/// Time-reversed martingale transform of `psi_rl`, for `j` in `1..n`.
pub fn z_transform_rl(curves: &CrossingCurves, theory: &TheoryCurves) -> Vec<f64> {
    (1..curves.n())
        .map(|j| theory.z_rl(j, curves.psi_rl_at(j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::{count_crossings, normalize};

    #[test]
    fn params_validation() {
        assert!(ModelBParams::new(100, 0.4, 0.2, 0.2).is_ok());
        assert!(ModelBParams::new(100, 1.5, 0.2, 0.2).is_err());
        assert!(ModelBParams::new(100, 0.001, 0.2, 0.2).is_err());
        assert!(ModelBParams::new(100, 0.4, -0.1, 0.2).is_err());
        assert!(ModelBParams::new(100, 0.4, 0.2, 1.1).is_err());
    }

    #[test]
    fn deltas() {
        let p = ModelBParams::new(10_000, 0.4, 0.2, 0.2).unwrap();
        assert!((p.delta_l() - 0.52).abs() < 1e-15);
        assert!((p.delta_r() - 0.68).abs() < 1e-15);
        assert_eq!(p.c(), 4000);
    }

    #[test]
    fn row_distributions_sum_to_one() {
        for &(n, gamma, al, ar) in &[(10_000, 0.4, 0.2, 0.2), (1000, 0.25, 0.7, 0.1), (50, 0.5, 1.0, 0.0)] {
            let p = ModelBParams::new(n, gamma, al, ar).unwrap();
            let nf = n as f64;
            let c = p.c() as f64;
            let left = c / (nf * p.delta_l()) + (nf - c) * al / (nf * p.delta_l());
            let right = c * ar / (nf * p.delta_r()) + (nf - c) / (nf * p.delta_r());
            assert!((left - 1.0).abs() < 1e-9);
            assert!((right - 1.0).abs() < 1e-9);
            assert!(
                (p.cross_probability_left() - (nf - c) * al / (nf * p.delta_l())).abs() < 1e-12
            );
        }
    }

    #[test]
    fn c_lr_moments_match_published_binomial() {
        let p = ModelBParams::new(10_000, 0.4, 0.2, 0.2).unwrap();
        let m = p.n as f64 * p.delta_l();
        for j in [1usize, 1250, 3999] {
            let jf = j as f64;
            let q = (m - jf) / m;
            let (mean, var) = p.c_lr_moments(j);
            assert!((mean - jf * q).abs() < 1e-9);
            assert!((var - jf * q * (1.0 - q)).abs() < 1e-9);
        }
        // Continuous across the change and zero at the right end.
        let (a, _) = p.c_lr_moments(3999);
        let (b, _) = p.c_lr_moments(4000);
        assert!((a - b).abs() < 1.0);
        let null = ModelBParams::new(100, 0.3, 1.0, 1.0).unwrap();
        for j in [10usize, 30, 70] {
            let (mean, _) = null.c_lr_moments(j);
            assert!((mean - j as f64 * (100.0 - j as f64) / 100.0).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_cross_probability_stays_in_block() {
        let p = ModelBParams::new(1000, 0.3, 0.0, 0.0).unwrap();
        let t = sample_model_b(&p, 4);
        let c = p.c();
        assert!(t.targets().iter().enumerate().all(|(i, &ti)| (i < c) == (ti < c)));
    }

    #[test]
    fn unit_alphas_reduce_z_to_psi() {
        let p = ModelBParams::new(500, 0.4, 1.0, 1.0).unwrap();
        let theory = theory_curves(&p);
        let curves = normalize(count_crossings(&sample_model_b(&p, 8)));
        let z = z_transform_lr(&curves, &theory);
        for j in 1..500 {
            assert!((z[j - 1] - curves.psi_lr_at(j)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_recovery_at_half() {
        let p = ModelBParams::new(2000, 0.5, 0.0, 0.0).unwrap();
        for seed in 0..20 {
            let curves = normalize(count_crossings(&sample_model_b(&p, seed)));
            let est = crate::crossings::creche_estimate(&curves);
            assert_eq!(est.gamma_hat, 0.5);
        }
    }
}
