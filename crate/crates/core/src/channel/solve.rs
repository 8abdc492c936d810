//! Channel solutions: Hankel coefficients, S-matrix entries, phase shifts and
//! partial absorption cross sections for a single mode.
//!
//! Time dependence is `e^{-iEt}` throughout, so `H1(p rho) ~ e^{+i p rho}` is
//! the outgoing wave at infinity and `rho^{-i mu}` is the ingoing branch at
//! the origin. The radial function is normalized against
//!
//! ```text
//! R -> (2 pi p rho)^{-1/2} [ e^{-i(p rho - pi m - pi/4)} + S_m e^{i(p rho - pi/4)} ]
//! ```
//!
//! and for `R = a H1_nu + b H2_nu` this gives `S_m = e^{i pi m} e^{-i nu pi} a / b`,
//! i.e. `e^{i pi (m - mu)} a/b` for real order and `e^{i pi m} e^{pi mu} a/b`
//! for `nu = i mu`. Stored coefficients are scaled to `b = 1` (`c = 1` for
//! regular modes); only ratios carry physics.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::config::{classify_mode, PartialMode, Regime, ScatteringConfig};
use super::model::BoundaryModel;
use crate::error::{Error, Result};
use crate::specfun::{complex_gamma, hankel_with_derivative, reciprocal_gamma, HankelKind};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Slack allowed on `|S_m| <= 1` before a ratio counts as non-unitary.
pub const UNITARITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelCoefficients {
    /// `R = c J_mu(p rho)`.
    Regular { c: Complex64 },
    /// `R = a H1_nu(p rho) + b H2_nu(p rho)`.
    Hankel { a: Complex64, b: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSolution {
    pub mode: PartialMode,
    /// Model actually applied; `None` for regular modes.
    pub model: Option<BoundaryModel>,
    pub coefficients: ChannelCoefficients,
    pub s_matrix: Complex64,
    /// Complex phase shift with `S_m = e^{2 i delta}`; `None` when `S_m = 0`.
    pub delta: Option<Complex64>,
    pub sigma_abs: f64,
    /// Partial amplitude `f_m = e^{-i pi/4} p^{-1/2} (S_m - cos pi beta)`.
    pub f_coeff: Complex64,
    pub p: f64,
}

impl ChannelSolution {
    /// Coefficients of `H1` and `H2` (a regular `c J_mu` is `c/2 (H1 + H2)`).
    pub fn hankel_pair(&self) -> (Complex64, Complex64) {
        match self.coefficients {
            ChannelCoefficients::Regular { c } => (0.5 * c, 0.5 * c),
            ChannelCoefficients::Hankel { a, b } => (a, b),
        }
    }

    /// Squared modulus of the coefficient of `sqrt(2/(pi p rho)) e^{-i(p rho - pi/4)}`.
    pub fn ingoing_weight(&self) -> f64 {
        let (_, b) = self.hankel_pair();
        match self.mode.regime {
            Regime::Supercritical => b.norm_sqr() * (-PI * self.mode.mu).exp(),
            _ => b.norm_sqr(),
        }
    }

    /// Closed-form `R(rho)` and `dR/drho`.
    pub fn radial(&self, rho: f64) -> Result<(Complex64, Complex64)> {
        let (a, b) = self.hankel_pair();
        let x = self.p * rho;
        let order = self.mode.order();
        let h1 = hankel_with_derivative(HankelKind::First, order, x)?;
        let h2 = hankel_with_derivative(HankelKind::Second, order, x)?;
        Ok((a * h1.0 + b * h2.0, self.p * (a * h1.1 + b * h2.1)))
    }
}

/// `(p/2)^nu`
fn scale_power(p: f64, nu: Complex64) -> Complex64 {
    (nu * (0.5 * p).ln()).exp()
}

/// Converts small-`rho` coefficients `R -> A rho^{-nu} + B rho^{nu}` of a
/// non-regular mode into Hankel coefficients `(a, b)`.
pub fn hankel_from_small_rho(
    mode: &PartialMode,
    p: f64,
    small: Complex64,
    large: Complex64,
) -> Result<(Complex64, Complex64)> {
    let nu = mode.order().nu();
    let c_plus = large * complex_gamma(1.0 + nu)? * scale_power(p, -nu);
    let c_minus = if small == Complex64::new(0.0, 0.0) {
        small
    } else {
        small * complex_gamma(1.0 - nu)? * scale_power(p, nu)
    };
    let rot = (I * PI * nu).exp();
    let a = 0.5 * (c_plus + c_minus * rot);
    let b = 0.5 * (c_plus + c_minus / rot);
    Ok((a, b))
}

/// Inverse of [`hankel_from_small_rho`]: returns `(A, B)`.
pub fn small_rho_from_hankel(
    mode: &PartialMode,
    p: f64,
    a: Complex64,
    b: Complex64,
) -> (Complex64, Complex64) {
    let nu = mode.order().nu();
    let denom = I * (PI * nu).sin();
    let rot = (I * PI * nu).exp();
    let c_minus = (a - b) / denom;
    let c_plus = (b * rot - a / rot) / denom;
    (
        c_minus * scale_power(p, -nu) * reciprocal_gamma(1.0 - nu),
        c_plus * scale_power(p, nu) * reciprocal_gamma(1.0 + nu),
    )
}

/// `S_m` from a Hankel coefficient ratio `a/b` of a non-regular mode.
pub fn smatrix_from_ratio(mode: &PartialMode, ratio: Complex64) -> Complex64 {
    let m_phase = Complex64::from_polar(1.0, PI * mode.m as f64);
    match mode.regime {
        Regime::Supercritical => m_phase * (PI * mode.mu).exp() * ratio,
        _ => m_phase * Complex64::from_polar(1.0, -PI * mode.mu) * ratio,
    }
}

/// Partial absorption from the coefficient ratio:
/// `(1 - |a/b|^2)/p` (subcritical) or `(1 - e^{2 pi mu} |a/b|^2)/p` (supercritical).
pub fn absorption_from_ratio(mode: &PartialMode, p: f64, ratio: Complex64) -> f64 {
    match mode.regime {
        Regime::Regular => 0.0,
        Regime::Subcritical => (1.0 - ratio.norm_sqr()) / p,
        Regime::Supercritical => (1.0 - (2.0 * PI * mode.mu).exp() * ratio.norm_sqr()) / p,
    }
}

/// `f_m = e^{-i pi/4} / sqrt(p) * (S_m - cos pi beta)`.
pub fn partial_amplitude(cfg: &ScatteringConfig, s_matrix: Complex64) -> Complex64 {
    Complex64::from_polar(1.0 / cfg.p.sqrt(), -FRAC_PI_4) * (s_matrix - (PI * cfg.beta).cos())
}

/// Regular-mode S-matrix `e^{i pi (m - mu)}`.
pub fn regular_smatrix(mode: &PartialMode) -> Complex64 {
    Complex64::from_polar(1.0, PI * (mode.m as f64 - mode.mu))
}

/// S-matrix of the self-adjoint extension `rho^{i mu} + e^{i theta} rho^{-i mu}`.
pub fn elastic_supercritical_smatrix(
    cfg: &ScatteringConfig,
    mode: &PartialMode,
    theta: f64,
) -> Result<Complex64> {
    if mode.regime != Regime::Supercritical {
        return Err(Error::ModelRegimeMismatch {
            m: mode.m,
            model: "elastic-supercritical",
            regime: mode.regime.name(),
        });
    }
    let (a, b) = hankel_from_small_rho(mode, cfg.p, Complex64::from_polar(1.0, theta), Complex64::new(1.0, 0.0))?;
    let s = smatrix_from_ratio(mode, a / b);
    Ok(s / s.norm())
}

/// S-matrix of the self-adjoint extension `rho^mu + l rho^-mu`.
pub fn elastic_subcritical_smatrix(cfg: &ScatteringConfig, mode: &PartialMode, l: f64) -> Result<Complex64> {
    if mode.regime != Regime::Subcritical {
        return Err(Error::ModelRegimeMismatch {
            m: mode.m,
            model: "elastic-subcritical",
            regime: mode.regime.name(),
        });
    }
    let ratio = if l.is_infinite() {
        // pure rho^-mu: J_{-mu}
        Complex64::from_polar(1.0, 2.0 * PI * mode.mu)
    } else {
        let (a, b) = hankel_from_small_rho(mode, cfg.p, Complex64::new(l, 0.0), Complex64::new(1.0, 0.0))?;
        a / b
    };
    let s = smatrix_from_ratio(mode, ratio);
    Ok(s / s.norm())
}

fn phase_shift(s: Complex64) -> Option<Complex64> {
    if s == Complex64::new(0.0, 0.0) {
        None
    } else {
        Some(s.ln() / (2.0 * I))
    }
}

/// Fixes the channel coefficients of `mode` under `model`.
pub fn solve_channel(cfg: &ScatteringConfig, mode: &PartialMode, model: BoundaryModel) -> Result<ChannelSolution> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if mode.regime == Regime::Regular {
        let s = regular_smatrix(mode);
        return Ok(ChannelSolution {
            mode: *mode,
            model: None,
            coefficients: ChannelCoefficients::Regular { c: one },
            s_matrix: s,
            delta: phase_shift(s),
            sigma_abs: 0.0,
            f_coeff: partial_amplitude(cfg, s),
            p: cfg.p,
        });
    }
    model.check_regime(mode.m, mode.regime)?;

    let (ratio, s, sigma) = match model {
        BoundaryModel::ElasticSubcritical { l } => {
            let s = elastic_subcritical_smatrix(cfg, mode, l)?;
            (ratio_from_smatrix(mode, s), s, 0.0)
        }
        BoundaryModel::ElasticSupercritical { theta } => {
            let s = elastic_supercritical_smatrix(cfg, mode, theta)?;
            (ratio_from_smatrix(mode, s), s, 0.0)
        }
        BoundaryModel::Sink => {
            // b e^{-pi mu} = a e^{pi mu}: R is proportional to J_{-i mu}
            let ratio = Complex64::new((-2.0 * PI * mode.mu).exp(), 0.0);
            let s = smatrix_from_ratio(mode, ratio);
            (ratio, s, -(-2.0 * PI * mode.mu).exp_m1() / cfg.p)
        }
        BoundaryModel::TotalAbsorption => (zero, zero, 1.0 / cfg.p),
        BoundaryModel::Custom { ratio } => {
            let s = smatrix_from_ratio(mode, ratio);
            if s.norm() > 1.0 + UNITARITY_SLACK {
                return Err(Error::UnitarityViolation {
                    m: mode.m,
                    modulus: s.norm(),
                });
            }
            (ratio, s, absorption_from_ratio(mode, cfg.p, ratio).max(0.0))
        }
    };
    Ok(ChannelSolution {
        mode: *mode,
        model: Some(model),
        coefficients: ChannelCoefficients::Hankel { a: ratio, b: one },
        s_matrix: s,
        delta: phase_shift(s),
        sigma_abs: sigma,
        f_coeff: partial_amplitude(cfg, s),
        p: cfg.p,
    })
}

/// Classifies `m` and solves it in one step.
pub fn solve_mode(cfg: &ScatteringConfig, m: i64, model: BoundaryModel) -> Result<ChannelSolution> {
    let mode = classify_mode(cfg, m)?;
    solve_channel(cfg, &mode, model)
}

fn ratio_from_smatrix(mode: &PartialMode, s: Complex64) -> Complex64 {
    s / smatrix_from_ratio(mode, Complex64::new(1.0, 0.0))
}
