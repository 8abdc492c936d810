//! Radial probability currents of the closed-form channel solutions.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::config::{PartialMode, Regime, ScatteringConfig};
use super::solve::ChannelSolution;
use crate::error::{Error, Result};

/// Closed-form radial current of `a H1 + b H2` at `rho`; negative is net inflow.
///
/// Regular modes carry no current and return exactly zero.
pub fn partial_current(
    cfg: &ScatteringConfig,
    mode: &PartialMode,
    a: Complex64,
    b: Complex64,
    rho: f64,
) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::InvalidConfig(format!("rho must be > 0, got {rho}")));
    }
    let prefactor = 2.0 / (PI * cfg.mass * rho);
    Ok(match mode.regime {
        Regime::Regular => 0.0,
        Regime::Subcritical => prefactor * (a.norm_sqr() - b.norm_sqr()),
        Regime::Supercritical => {
            let e = (PI * mode.mu).exp();
            prefactor * (a.norm_sqr() * e - b.norm_sqr() / e)
        }
    })
}

/// Flux through the cylinder of radius `rho`, `2 pi rho j(rho)`; independent of `rho`.
pub fn cylinder_flux(cfg: &ScatteringConfig, solution: &ChannelSolution, rho: f64) -> Result<f64> {
    let (a, b) = solution.hankel_pair();
    Ok(2.0 * PI * rho * partial_current(cfg, &solution.mode, a, b, rho)?)
}

/// Absorption cross section implied by a measured current.
///
/// With the ingoing wave normalized to unit flux, `p sigma = -2 pi rho M j / (4 w)`
/// where `w` is [`ChannelSolution::ingoing_weight`].
pub fn absorption_from_current(cfg: &ScatteringConfig, solution: &ChannelSolution, rho: f64, current: f64) -> f64 {
    let normalization = 1.0 / (4.0 * solution.ingoing_weight());
    -2.0 * PI * rho * cfg.mass * current * normalization / cfg.p
}
