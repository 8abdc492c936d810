//! Elastic scattering amplitude `f(phi) = (2 pi)^{-1/2} sum_m f_m e^{i m phi}`,
//! normalized so that `d sigma / d phi = |f|^2`.
//!
//! The sum over `m` converges only in the distributional sense. Modes with
//! `|m - beta| <= m_tail` are summed explicitly as the difference from the
//! pure flux-line amplitude, and the flux-line part is added in closed form:
//!
//! ```text
//! f_AB(phi) = -e^{-i pi/4} (2 pi p)^{-1/2} sin(pi beta) e^{i phi/2} / sin(phi/2)
//! ```

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::config::{classify_mode, Regime, ScatteringConfig};
use super::solve::{regular_smatrix, ChannelSolution};
use crate::error::{Error, Result};

/// Default forward exclusion half-angle.
pub const PHI_MIN: f64 = 1e-3;

/// `max(20, ceil(10 sqrt(1 + gamma^2)))`
pub fn default_tail(gamma: f64) -> f64 {
    20f64.max((10.0 * (1.0 + gamma * gamma).sqrt()).ceil())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeOptions {
    pub phi_min: f64,
    /// Modes with `|m - beta|` beyond this take the flux-line value.
    pub m_tail: f64,
}

impl AmplitudeOptions {
    pub fn for_config(cfg: &ScatteringConfig) -> Self {
        Self {
            phi_min: PHI_MIN,
            m_tail: default_tail(cfg.gamma),
        }
    }
}

/// Flux-line S-matrix `e^{i pi (m - |m - beta|)}`.
pub fn flux_line_smatrix(beta: f64, m: i64) -> Complex64 {
    Complex64::from_polar(1.0, PI * (m as f64 - (m as f64 - beta).abs()))
}

/// Closed-form amplitude of the bare flux line (regular solutions everywhere).
pub fn flux_line_amplitude(beta: f64, p: f64, phi: f64) -> Complex64 {
    let pre = Complex64::from_polar(1.0 / (2.0 * PI * p).sqrt(), -FRAC_PI_4);
    -pre * (PI * beta).sin() * Complex64::from_polar(1.0, 0.5 * phi) / (0.5 * phi).sin()
}

/// Wraps `phi` into `(-pi, pi]` and enforces the forward exclusion.
fn reduce_angle(phi: f64, phi_min: f64) -> Result<f64> {
    let mut r = phi.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    if r.abs() < phi_min {
        return Err(Error::ForwardDirection { phi, phi_min });
    }
    Ok(r)
}

/// Amplitude built from explicit `S_m` values.
///
/// Modes absent from `smatrix` inside the tail window take `fallback(m)`;
/// modes beyond it take the flux-line value.
pub fn amplitude_from_smatrix<F>(
    beta: f64,
    p: f64,
    smatrix: &BTreeMap<i64, Complex64>,
    phi: f64,
    options: &AmplitudeOptions,
    fallback: F,
) -> Result<Complex64>
where
    F: Fn(i64) -> Result<Complex64>,
{
    let phi = reduce_angle(phi, options.phi_min)?;
    let lo = (beta - options.m_tail).floor() as i64;
    let hi = (beta + options.m_tail).ceil() as i64;
    let lo = lo.min(smatrix.keys().next().copied().unwrap_or(lo));
    let hi = hi.max(smatrix.keys().next_back().copied().unwrap_or(hi));

    let pre = Complex64::from_polar(1.0 / p.sqrt(), -FRAC_PI_4);
    let mut correction = Complex64::new(0.0, 0.0);
    // ascending m keeps the reduction order fixed
    for m in lo..=hi {
        let s = match smatrix.get(&m) {
            Some(s) => *s,
            None if (m as f64 - beta).abs() <= options.m_tail => fallback(m)?,
            None => continue,
        };
        let diff = s - flux_line_smatrix(beta, m);
        if diff != Complex64::new(0.0, 0.0) {
            correction += diff * Complex64::from_polar(1.0, m as f64 * phi);
        }
    }
    Ok(flux_line_amplitude(beta, p, phi) + pre * correction / (2.0 * PI).sqrt())
}

/// `f(phi)` for the inverse-square problem from solved channels.
///
/// Every non-regular mode must be among `solutions`; missing regular modes
/// are filled in with their closed form.
pub fn amplitude(cfg: &ScatteringConfig, solutions: &[ChannelSolution], phi: f64) -> Result<Complex64> {
    amplitude_with(cfg, solutions, phi, &AmplitudeOptions::for_config(cfg))
}

pub fn amplitude_with(
    cfg: &ScatteringConfig,
    solutions: &[ChannelSolution],
    phi: f64,
    options: &AmplitudeOptions,
) -> Result<Complex64> {
    let smatrix: BTreeMap<i64, Complex64> = solutions.iter().map(|s| (s.mode.m, s.s_matrix)).collect();
    let (lo, hi) = match (smatrix.keys().next(), smatrix.keys().next_back()) {
        (Some(lo), Some(hi)) => (*lo, *hi),
        _ => (0, -1),
    };
    amplitude_from_smatrix(cfg.beta, cfg.p, &smatrix, phi, options, |m| {
        let mode = classify_mode(cfg, m)?;
        if mode.regime != Regime::Regular {
            return Err(Error::IncompleteRange { m, lo, hi });
        }
        Ok(regular_smatrix(&mode))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{solve_mode, BoundaryModel};

    fn cfg(beta: f64, gamma: f64, p: f64) -> ScatteringConfig {
        ScatteringConfig::with_default_mass(beta, gamma, p).unwrap()
    }

    fn solve_range(c: &ScatteringConfig, lo: i64, hi: i64, model: BoundaryModel) -> Vec<ChannelSolution> {
        (lo..=hi)
            .map(|m| {
                let mode = classify_mode(c, m).unwrap();
                let model = match mode.regime {
                    Regime::Subcritical => BoundaryModel::ElasticSubcritical { l: 0.0 },
                    _ => model,
                };
                crate::channel::solve_channel(c, &mode, model).unwrap()
            })
            .collect()
    }

    #[test]
    fn free_particle_has_zero_amplitude() {
        let c = cfg(0.0, 0.0, 1.3);
        let sols = solve_range(&c, -3, 3, BoundaryModel::Sink);
        for phi in [0.01, 0.5, 2.0, PI, -1.0] {
            assert!(amplitude(&c, &sols, phi).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn bare_flux_line_backscattering() {
        let c = cfg(0.5, 0.0, 2.0);
        let sols = solve_range(&c, 0, 1, BoundaryModel::Sink);
        let f = amplitude(&c, &sols, PI).unwrap();
        let expected = (PI * 0.5).sin() / (2.0 * PI * 2.0).sqrt();
        assert!((f.norm() - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn closed_form_matches_brute_force_sum_with_damping() {
        // Abel-regularized partial sum as an independent check of the closed form
        let beta = 0.3;
        let p: f64 = 1.0;
        let phi = 1.1;
        let pre = Complex64::from_polar(1.0 / p.sqrt(), -FRAC_PI_4) / (2.0 * PI).sqrt();
        let eps: f64 = 1e-4;
        let mut sum = Complex64::new(0.0, 0.0);
        for m in -200_000i64..=200_000 {
            let fm = flux_line_smatrix(beta, m) - (PI * beta).cos();
            sum += fm * Complex64::from_polar((-eps * m.abs() as f64).exp(), m as f64 * phi);
        }
        let brute = pre * sum;
        let closed = flux_line_amplitude(beta, p, phi);
        assert!((brute - closed).norm() < 1e-3 * closed.norm());
    }

    #[test]
    fn forward_cone_is_rejected() {
        let c = cfg(0.5, 0.0, 1.0);
        let sols = solve_range(&c, 0, 1, BoundaryModel::Sink);
        assert!(matches!(amplitude(&c, &sols, 1e-4), Err(Error::ForwardDirection { .. })));
        assert!(matches!(amplitude(&c, &sols, 2.0 * PI - 1e-4), Err(Error::ForwardDirection { .. })));
    }

    #[test]
    fn missing_non_regular_mode_is_reported() {
        let c = cfg(0.3, 0.5, 1.0);
        let sols = vec![solve_mode(&c, 1, BoundaryModel::ElasticSubcritical { l: 0.0 }).unwrap()];
        assert!(matches!(amplitude(&c, &sols, 1.0), Err(Error::IncompleteRange { m: 0, .. })));
    }

    #[test]
    fn common_rescaling_leaves_amplitude_unchanged() {
        let c = cfg(0.3, 0.5, 1.0);
        let sols = solve_range(&c, -1, 2, BoundaryModel::Sink);
        let f1 = amplitude(&c, &sols, 2.0).unwrap();
        let scaled: Vec<_> = sols
            .iter()
            .map(|s| {
                let mut s = *s;
                let k = Complex64::new(-2.5, 0.7);
                s.coefficients = match s.coefficients {
                    crate::channel::ChannelCoefficients::Hankel { a, b } => crate::channel::ChannelCoefficients::Hankel { a: a * k, b: b * k },
                    crate::channel::ChannelCoefficients::Regular { c } => crate::channel::ChannelCoefficients::Regular { c: c * k },
                };
                s
            })
            .collect();
        assert_eq!(amplitude(&c, &scaled, 2.0).unwrap(), f1);
    }
}
