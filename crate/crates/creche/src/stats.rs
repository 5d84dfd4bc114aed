// SPDX-License-Identifier: MIT OR Apache-2.0

//! Sample moments used by the Monte Carlo checks.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    /// Unbiased (n-1) sample variance.
    pub variance: f64,
    /// Moment coefficient of skewness `m3 / m2^{3/2}`.
    pub skewness: f64,
}

impl Moments {
    pub fn from_samples(xs: &[f64]) -> Self {
        let count = xs.len();
        if count == 0 {
            return Self {
                count,
                mean: f64::NAN,
                variance: f64::NAN,
                skewness: f64::NAN,
            };
        }
        let n = count as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let (m2, m3) = xs.iter().fold((0.0, 0.0), |(a, b), &x| {
            let d = x - mean;
            (a + d * d, b + d * d * d)
        });
        let variance = if count > 1 { m2 / (n - 1.0) } else { 0.0 };
        let pop_m2 = m2 / n;
        let skewness = if pop_m2 > 0.0 {
            (m3 / n) / pop_m2.powf(1.5)
        } else {
            0.0
        };
        Self {
            count,
            mean,
            variance,
            skewness,
        }
    }

    /// Standard error of the mean using the sample variance.
    pub fn std_error(&self) -> f64 {
        (self.variance / self.count as f64).sqrt()
    }
}

/// Standard deviation of a binomial proportion estimate.
pub fn proportion_sd(p: f64, trials: usize) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}
