// SPDX-License-Identifier: MIT OR Apache-2.0

//! Constant `K` of the root-n consistency bound
//! `P(|gamma_hat - gamma| >= s / sqrt(n)) <= K / s^2`.

use super::theory::theory_curves;
use super::ModelBParams;

/// `K` for the given parameters.
///
/// The closed form assumes `d_min_lr >= d_min_rl`. Otherwise the model is
/// reversed first (`gamma -> 1 - gamma`, `alpha_l <-> alpha_r`), which swaps
/// the two minima. The expression is evaluated term for term as published,
/// including the `alpha_r / (1 - gamma)` in its first factor. It is infinite
/// when `alpha_l` is 0 or 1.
pub fn consistency_constant(params: &ModelBParams) -> f64 {
    let theory = theory_curves(params);
    let p = if theory.d_min_lr() >= theory.d_min_rl() {
        *params
    } else {
        params.mirrored()
    };
    let (g, al, ar) = (p.gamma, p.alpha_l, p.alpha_r);
    let (dl, dr) = (p.delta_l(), p.delta_r());

    let first = (al / (1.0 - g) + ar / (1.0 - g)) * dl * dl / (g.powi(6) * (1.0 - al).powi(2));

    let second = (al + g * g * (1.0 - al) * (1.0 - g)).powi(2)
        / (al * (1.0 - g * g).powi(2) * (1.0 - g).powi(3) * (1.0 - al).powi(2));

    let third = (g + al) / (g * g * (1.0 - al) * (1.0 - g * (1.0 - g)))
        * (dr * dr / (g * g * (1.0 - ar).powi(2) * (1.0 - (1.0 - g).powi(2)).powi(2)));

    let k = first + second + third;
    if k.is_nan() {
        f64::INFINITY
    } else {
        k
    }
}

/// `min(1, K / s^2)`.
pub fn consistency_bound(params: &ModelBParams, s: f64) -> f64 {
    if s.is_nan() || s <= 0.0 {
        return 1.0;
    }
    (consistency_constant(params) / (s * s)).min(1.0)
}
