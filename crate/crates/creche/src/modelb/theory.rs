// SPDX-License-Identifier: MIT OR Apache-2.0

//! Closed-form means and martingale variances of the normalised crossing
//! curves under the two-block model.
//!
//! All formulas use the real change location `n * gamma`; the regime switch
//! happens at the integer change index `c` used by the sampler.

use serde::{Deserialize, Serialize};

use super::ModelBParams;
use crate::error::{CrecheError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoryCurves {
    params: ModelBParams,
}

pub fn theory_curves(params: &ModelBParams) -> TheoryCurves {
    TheoryCurves { params: *params }
}

/// Every theory quantity at one cut `j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoryPoint {
    pub j: usize,
    pub mean_lr_1: f64,
    pub mean_lr_2: f64,
    pub mean_rl_1: f64,
    pub mean_rl_2: f64,
    /// Piecewise mean of `psi_lr` (`mean_lr_1` before `c`, `mean_lr_2` after).
    pub mean_lr: f64,
    pub mean_rl: f64,
    pub mean_psi: f64,
    pub var_z_lr: f64,
    pub var_z_rl: f64,
}

impl TheoryCurves {
    pub fn params(&self) -> &ModelBParams {
        &self.params
    }

    fn nf(&self) -> f64 {
        self.params.n as f64
    }

    /// Concave part of the `psi_lr` mean, left of the change.
    pub fn mean_lr_1(&self, j: f64) -> f64 {
        let p = &self.params;
        let n = self.nf();
        -(j * j) / (n * (n - j)) * ((1.0 - p.gamma) * (1.0 - p.alpha_l) / p.delta_l())
    }

    /// Linear part of the `psi_lr` mean, right of the change.
    pub fn mean_lr_2(&self, j: f64) -> f64 {
        let p = &self.params;
        let n = self.nf();
        p.gamma * p.alpha_l / p.delta_l() - p.gamma / p.delta_r()
            + (j / n) * (p.gamma * (1.0 - p.alpha_r) / p.delta_r())
    }

    /// Linear part of the `psi_rl` mean, left of the change.
    pub fn mean_rl_1(&self, j: f64) -> f64 {
        let p = &self.params;
        let n = self.nf();
        (1.0 - p.gamma) * p.alpha_r / p.delta_r() - (1.0 - p.gamma) / p.delta_l()
            + ((n - j) / n) * ((1.0 - p.gamma) * (1.0 - p.alpha_l) / p.delta_l())
    }

    /// Concave part of the `psi_rl` mean, right of the change.
    pub fn mean_rl_2(&self, j: f64) -> f64 {
        let p = &self.params;
        let n = self.nf();
        -((n - j) * (n - j)) / (n * j) * (p.gamma * (1.0 - p.alpha_r) / p.delta_r())
    }

    pub fn d_min_lr(&self) -> f64 {
        let p = &self.params;
        -p.gamma * p.gamma * (1.0 - p.alpha_l) / p.delta_l()
    }

    pub fn d_min_rl(&self) -> f64 {
        let p = &self.params;
        -(1.0 - p.gamma) * (1.0 - p.gamma) * (1.0 - p.alpha_r) / p.delta_r()
    }

    pub fn mean_lr(&self, j: usize) -> f64 {
        if j < self.params.c() {
            self.mean_lr_1(j as f64)
        } else {
            self.mean_lr_2(j as f64)
        }
    }

    pub fn mean_rl(&self, j: usize) -> f64 {
        if j < self.params.c() {
            self.mean_rl_1(j as f64)
        } else {
            self.mean_rl_2(j as f64)
        }
    }

    /// Variance of `Z_LR(j)` before the change, `j^2 / (n^2 delta_l^2 (n delta_l - j))`.
    pub fn var_z_lr_1(&self, j: f64) -> f64 {
        let n = self.nf();
        let dl = self.params.delta_l();
        j * j / (n * n * dl * dl * (n * dl - j))
    }

    /// Variance of `Z_LR(j)` from the change on: the sum of the thinned
    /// left-block links and the right-block links still crossing `j`.
    pub fn var_z_lr_2(&self, j: f64) -> f64 {
        let p = &self.params;
        let n = self.nf();
        let (g, al, ar) = (p.gamma, p.alpha_l, p.alpha_r);
        let (dl, dr) = (p.delta_l(), p.delta_r());
        al * g * (al * j + g * (1.0 - al) * n) / (dl * dl * n * (n - j))
            + (j - g * n) * (j - (1.0 - ar) * g * n) / (dr * dr * n * n * (n - j))
    }

    /// Variance of the rescaled `Z_RL(j)` from the change on,
    /// `(n - j)^2 / (n^2 delta_r^2 (j - n gamma (1 - alpha_r)))`.
    pub fn var_z_rl_2(&self, j: f64) -> f64 {
        let p = &self.params;
        let n = self.nf();
        let dr = p.delta_r();
        (n - j) * (n - j) / (n * n * dr * dr * (j - n * p.gamma * (1.0 - p.alpha_r)))
    }

    /// Variance of the unscaled `Z_RL(j)` before the change, obtained from
    /// `var_z_lr_2` of the position-reversed model at `n - j`.
    pub fn var_z_rl_1(&self, j: f64) -> f64 {
        let mirrored = TheoryCurves {
            params: self.params.mirrored(),
        };
        mirrored.var_z_lr_2(self.nf() - j)
    }

    pub fn var_z_lr(&self, j: usize) -> f64 {
        if j < self.params.c() {
            self.var_z_lr_1(j as f64)
        } else {
            self.var_z_lr_2(j as f64)
        }
    }

    pub fn var_z_rl(&self, j: usize) -> f64 {
        if j < self.params.c() {
            self.var_z_rl_1(j as f64)
        } else {
            self.var_z_rl_2(j as f64)
        }
    }

    /// Martingale transform of one `psi_lr` value at cut `j`.
    pub fn z_lr(&self, j: usize, psi_lr: f64) -> f64 {
        let jf = j as f64;
        if j < self.params.c() {
            let n = self.nf();
            (n - jf) / (n * self.params.delta_l() - jf) * (psi_lr - self.mean_lr_1(jf))
        } else {
            psi_lr - self.mean_lr_2(jf)
        }
    }

    /// Time-reversed martingale transform of one `psi_rl` value at cut `j`.
    pub fn z_rl(&self, j: usize, psi_rl: f64) -> f64 {
        let jf = j as f64;
        if j < self.params.c() {
            psi_rl - self.mean_rl_1(jf)
        } else {
            let p = &self.params;
            jf / (jf - self.nf() * p.gamma * (1.0 - p.alpha_r)) * (psi_rl - self.mean_rl_2(jf))
        }
    }

    /// All quantities at cut `j`, which must lie in `1..n`.
    pub fn at(&self, j: usize) -> Result<TheoryPoint> {
        let n = self.params.n;
        if j == 0 || j >= n {
            return Err(CrecheError::IndexOutOfRange { index: j, len: n });
        }
        let jf = j as f64;
        let mean_lr = self.mean_lr(j);
        let mean_rl = self.mean_rl(j);
        Ok(TheoryPoint {
            j,
            mean_lr_1: self.mean_lr_1(jf),
            mean_lr_2: self.mean_lr_2(jf),
            mean_rl_1: self.mean_rl_1(jf),
            mean_rl_2: self.mean_rl_2(jf),
            mean_lr,
            mean_rl,
            mean_psi: mean_lr.max(mean_rl),
            var_z_lr: self.var_z_lr(j),
            var_z_rl: self.var_z_rl(j),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_params() -> ModelBParams {
        ModelBParams::new(10_000, 0.4, 0.2, 0.2).unwrap()
    }

    #[test]
    fn continuity_at_change() {
        for params in [
            reference_params(),
            ModelBParams::new(1000, 0.25, 0.6, 0.05).unwrap(),
            ModelBParams::new(1000, 0.7, 0.0, 0.3).unwrap(),
        ] {
            let t = theory_curves(&params);
            let ng = params.n_gamma();
            assert!((t.mean_lr_1(ng) - t.d_min_lr()).abs() < 1e-12);
            assert!((t.mean_lr_2(ng) - t.d_min_lr()).abs() < 1e-12);
            assert!((t.mean_rl_1(ng) - t.d_min_rl()).abs() < 1e-12);
            assert!((t.mean_rl_2(ng) - t.d_min_rl()).abs() < 1e-12);
        }
    }

    #[test]
    fn d_min_value() {
        let t = theory_curves(&reference_params());
        assert!((t.d_min_lr() - (-0.16 * 0.8 / 0.52)).abs() < 1e-12);
        assert!((t.d_min_lr() + 0.246_153_846).abs() < 1e-8);
    }

    #[test]
    fn unit_alphas_give_null_centering() {
        let p = ModelBParams::new(1000, 0.37, 1.0, 1.0).unwrap();
        let t = theory_curves(&p);
        for j in [1, 100, 370, 500, 999] {
            let pt = t.at(j).unwrap();
            assert!(pt.mean_lr.abs() < 1e-12, "{pt:?}");
            assert!(pt.mean_rl.abs() < 1e-12, "{pt:?}");
            // Null variance of psi_lr is j^2 / (n^2 (n - j)).
            let jf = j as f64;
            assert!((pt.var_z_lr - jf * jf / (1e6 * (1000.0 - jf))).abs() < 1e-15);
        }
    }

    #[test]
    fn variance_at_change_point() {
        let p = reference_params();
        let t = theory_curves(&p);
        let (g, a, dl, n) = (p.gamma, p.alpha_l, p.delta_l(), p.n as f64);
        let expected = g * g * a / (dl * dl * (1.0 - g) * n);
        assert!((t.var_z_lr(p.c()) - expected).abs() < 1e-15);
    }

    #[test]
    fn reversed_model_matches_direct_formulas() {
        let p = ModelBParams::new(1000, 0.3, 0.25, 0.6).unwrap();
        let t = theory_curves(&p);
        let m = theory_curves(&p.mirrored());
        for j in [10.0, 150.0, 299.0, 300.0, 301.0, 650.0, 990.0] {
            let jr = 1000.0 - j;
            assert!((t.mean_rl_1(j) - m.mean_lr_2(jr)).abs() < 1e-12);
            assert!((t.mean_rl_2(j) - m.mean_lr_1(jr)).abs() < 1e-12);
            if j >= 300.0 {
                assert!((t.var_z_rl_2(j) - m.var_z_lr_1(jr)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn out_of_range_cut() {
        let t = theory_curves(&reference_params());
        assert!(t.at(0).is_err());
        assert!(t.at(10_000).is_err());
        assert!(t.at(1).is_ok());
    }
}
