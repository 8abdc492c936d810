use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::Order;

/// Distance from a regime boundary below which a mode is treated as critical.
pub const CRITICAL_TOLERANCE: f64 = 1e-9;

/// Default particle mass; with it `hbar^2 / 2M = 1` in the radial equation.
pub const DEFAULT_MASS: f64 = 0.5;

/// One physical scenario for the flux line plus `-kappa^2 / rho^2` core.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringConfig {
    /// Flux in units of the flux quantum, `0 <= beta < 1`.
    pub beta: f64,
    /// Dimensionless coupling, `gamma^2 = 2 M kappa^2`.
    pub gamma: f64,
    /// Wavenumber.
    pub p: f64,
    /// Particle mass; only enters current normalization.
    pub mass: f64,
}

impl ScatteringConfig {
    pub fn new(beta: f64, gamma: f64, p: f64, mass: f64) -> Result<Self> {
        let cfg = Self { beta, gamma, p, mass };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_default_mass(beta: f64, gamma: f64, p: f64) -> Result<Self> {
        Self::new(beta, gamma, p, DEFAULT_MASS)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta >= 0.0 && self.beta < 1.0) {
            return Err(Error::InvalidConfig(format!("beta must lie in [0, 1), got {}", self.beta)));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidConfig(format!("gamma must be >= 0, got {}", self.gamma)));
        }
        if !(self.p > 0.0 && self.p.is_finite()) {
            return Err(Error::InvalidConfig(format!("p must be > 0, got {}", self.p)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidConfig(format!("mass must be > 0, got {}", self.mass)));
        }
        Ok(())
    }

    /// `sqrt(1 + gamma^2)`: the boundary between regular and subcritical modes.
    pub fn regular_threshold(&self) -> f64 {
        (1.0 + self.gamma * self.gamma).sqrt()
    }

    /// Smallest range of `m` containing every non-regular mode, or `None`.
    pub fn non_regular_range(&self) -> Option<(i64, i64)> {
        let reach = self.regular_threshold();
        let lo = (self.beta - reach).ceil() as i64;
        let hi = (self.beta + reach).floor() as i64;
        let modes: Vec<i64> = (lo..=hi)
            .filter(|&m| classify_mode(self, m).map_or(true, |mode| mode.regime != Regime::Regular))
            .collect();
        Some((*modes.first()?, *modes.last()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `|m - beta| > sqrt(1 + gamma^2)`: one normalizable solution.
    Regular,
    /// `gamma < |m - beta| < sqrt(1 + gamma^2)`: real order `0 < mu < 1`.
    Subcritical,
    /// `|m - beta| < gamma`: imaginary order, fall to the center.
    Supercritical,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Regular => "regular",
            Regime::Subcritical => "subcritical",
            Regime::Supercritical => "supercritical",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Angular channel `m` with its Bessel order data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialMode {
    pub m: i64,
    /// `(m - beta)^2 - gamma^2`
    pub nu_squared: f64,
    /// `sqrt(|nu_squared|)`
    pub mu: f64,
    pub regime: Regime,
}

impl PartialMode {
    /// Bessel order of the radial solutions.
    pub fn order(&self) -> Order {
        match self.regime {
            Regime::Supercritical => Order::Imaginary(self.mu),
            _ => Order::Real(self.mu),
        }
    }
}

/// Computes `nu^2` and the regime of mode `m`.
///
/// Modes within [`CRITICAL_TOLERANCE`] of `|m - beta| = gamma` are rejected.
/// At `|m - beta| = sqrt(1 + gamma^2)` (`mu = 1`) the `rho^-1` branch is not
/// square integrable, so the mode is regular. With `gamma = 0` the mode
/// `m = beta = 0` is the free `J_0` channel.
pub fn classify_mode(cfg: &ScatteringConfig, m: i64) -> Result<PartialMode> {
    let distance = (m as f64 - cfg.beta).abs();
    let nu_squared = distance * distance - cfg.gamma * cfg.gamma;
    let mu = nu_squared.abs().sqrt();
    let upper = cfg.regular_threshold();

    let regime = if cfg.gamma == 0.0 && distance < CRITICAL_TOLERANCE {
        Regime::Regular
    } else if (distance - cfg.gamma).abs() < CRITICAL_TOLERANCE {
        return Err(Error::DegenerateMode { m, distance });
    } else if distance > upper - CRITICAL_TOLERANCE {
        Regime::Regular
    } else if distance > cfg.gamma {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    };
    Ok(PartialMode {
        m,
        nu_squared,
        mu,
        regime,
    })
}
