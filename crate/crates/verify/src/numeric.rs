//! Floating check of the S-transformation on truncated characters.

use minmod::characters::character;
use minmod::modular_data::SMatrixHat;
use minmod::{MinimalModel, Result};

/// `max_i |χ_i(i/t) - Σ_j S_ij χ_j(i t)|` with characters truncated at
/// `order`. At `t = 1` both sides are evaluated at the fixed point `τ = i`.
pub fn s_transform_residual(model: &MinimalModel, t: f64, order: usize) -> Result<f64> {
    let s = SMatrixHat::build(model)?;
    let d = s.dim();
    let sf = s.s_float();
    let chars = s.labels().iter().map(|&l| character(model, l, order)).collect::<Result<Vec<_>>>()?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let q_tau = (-two_pi * t).exp();
    let q_dual = (-two_pi / t).exp();
    let at_tau: Vec<f64> = chars.iter().map(|c| c.eval(q_tau)).collect();
    Ok((0..d)
        .map(|i| {
            let rhs: f64 = (0..d).map(|j| sf[i * d + j] * at_tau[j]).sum();
            (chars[i].eval(q_dual) - rhs).abs()
        })
        .fold(0.0, f64::max))
}
