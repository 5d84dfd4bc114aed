// SPDX-License-Identifier: MIT OR Apache-2.0

//! Non-stationary INAR(1) process with binomial marginals.
//!
//! `Y_0 = 0` and `Y_{j+1} = thin(Y_j, (N-j-1)/(N-j)) + Bern(beta (N-j-1)/N)`,
//! where `thin(y, a)` keeps each of `y` units independently with probability
//! `a`. Then `Y_j ~ Bin(j, beta (N-j)/N)`, and both
//! `Z_j = Y_j/(N-j) - beta j/N` and
//! `W_j = (1 + d/(N-j))^{Y_j} / (1 + d beta/N)^j` are martingales. Under
//! uniform targets `C_LR(j)` follows this process with `N = n`, `beta = 1`.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{CrecheError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InarPath {
    pub big_n: u64,
    pub beta: f64,
    /// `Y_0..=Y_steps`.
    pub y: Vec<u64>,
}

pub fn simulate_inar<R: Rng + ?Sized>(big_n: u64, beta: f64, steps: u64, rng: &mut R) -> Result<InarPath> {
    if big_n == 0 {
        return Err(CrecheError::param("N must be positive"));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(CrecheError::param(format!("beta must lie in (0,1], got {beta}")));
    }
    if steps >= big_n {
        return Err(CrecheError::param(format!("steps ({steps}) must be below N ({big_n})")));
    }
    let nf = big_n as f64;
    let mut y = Vec::with_capacity(steps as usize + 1);
    let mut current = 0u64;
    y.push(current);
    for j in 0..steps {
        let remaining = (big_n - j) as f64;
        let keep = (remaining - 1.0) / remaining;
        let kept = if current == 0 {
            0
        } else {
            Binomial::new(current, keep)
                .expect("retention probability in [0,1]")
                .sample(rng)
        };
        let arrival = rng.random_bool(beta * (remaining - 1.0) / nf);
        current = kept + u64::from(arrival);
        y.push(current);
    }
    Ok(InarPath { big_n, beta, y })
}

impl InarPath {
    pub fn steps(&self) -> usize {
        self.y.len() - 1
    }

    pub fn z(&self, j: usize) -> f64 {
        let nf = self.big_n as f64;
        self.y[j] as f64 / (nf - j as f64) - self.beta * j as f64 / nf
    }

    pub fn w(&self, j: usize, d: f64) -> f64 {
        let nf = self.big_n as f64;
        let jf = j as f64;
        (1.0 + d / (nf - jf)).powf(self.y[j] as f64) / (1.0 + d * self.beta / nf).powf(jf)
    }
}

/// Success probability of the binomial marginal of `Y_j`.
pub fn marginal_p(big_n: u64, beta: f64, j: u64) -> f64 {
    beta * (big_n - j) as f64 / big_n as f64
}

pub fn mean_y(big_n: u64, beta: f64, j: u64) -> f64 {
    j as f64 * marginal_p(big_n, beta, j)
}

pub fn var_z(big_n: u64, beta: f64, j: u64) -> f64 {
    let p = marginal_p(big_n, beta, j);
    let rem = (big_n - j) as f64;
    j as f64 * p * (1.0 - p) / (rem * rem)
}

/// Exact `Var W_j` from the binomial generating function.
pub fn var_w(big_n: u64, beta: f64, j: u64, d: f64) -> f64 {
    let p = marginal_p(big_n, beta, j);
    let g = 1.0 + d / (big_n - j) as f64;
    let l = 1.0 + d * beta / big_n as f64;
    let jf = j as f64;
    (1.0 - p + p * g * g).powf(jf) / l.powf(2.0 * jf) - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn validation() {
        let mut r = rng::seeded(0);
        assert!(simulate_inar(10, 0.5, 10, &mut r).is_err());
        assert!(simulate_inar(10, 0.0, 5, &mut r).is_err());
        assert!(simulate_inar(10, 1.5, 5, &mut r).is_err());
        assert!(simulate_inar(0, 0.5, 0, &mut r).is_err());
        let path = simulate_inar(10, 1.0, 9, &mut r).unwrap();
        assert_eq!(path.y.len(), 10);
        assert_eq!(path.y[0], 0);
        assert!(path.y.iter().enumerate().all(|(j, &y)| y <= j as u64));
    }

    #[test]
    fn w_starts_at_one() {
        let path = simulate_inar(50, 0.7, 10, &mut rng::seeded(1)).unwrap();
        assert_eq!(path.w(0, 1.0), 1.0);
        assert_eq!(path.z(0), 0.0);
    }

    #[test]
    fn var_w_is_zero_at_start() {
        assert_eq!(var_w(500, 0.7, 0, 1.0), 0.0);
        assert!(var_w(500, 0.7, 250, 1.0) > 0.0);
    }
}
