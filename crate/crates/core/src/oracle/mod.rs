//! Numerical verification engine. Integrates the radial equation
//!
//! ```text
//! R'' + R'/rho - nu^2 R/rho^2 + lambda^2 R/rho^4 + p^2 R = 0
//! ```
//!
//! in `t = ln rho`, where it reads `R_tt = (nu^2 - p^2 e^{2t} - lambda^2 e^{-2t}) R`,
//! and recovers asymptotic coefficients by least-squares matching. The
//! fitting bases (Frobenius series, asymptotic wave series) share no code
//! with `specfun`.

mod basis;
mod fit;
mod pipeline;

use std::f64::consts::{LN_10, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ode::{integrate, StepControl};

pub use basis::{asymptotic_wave, frobenius};
pub use fit::{fit_two_terms, TwoTermFit};
pub use pipeline::*;

/// Coefficients of the radial equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialEquation {
    pub nu_squared: f64,
    pub p: f64,
    /// Strength of the `rho^-4` core; zero for the inverse-square problem.
    pub lambda: f64,
}

impl RadialEquation {
    pub fn new(nu_squared: f64, p: f64) -> Self {
        Self { nu_squared, p, lambda: 0.0 }
    }

    /// `V(t)` in `R_tt = V R`.
    pub fn potential(&self, t: f64) -> f64 {
        let mut v = self.nu_squared - (self.p * t.exp()).powi(2);
        if self.lambda != 0.0 {
            v -= (self.lambda * (-t).exp()).powi(2);
        }
        v
    }
}

/// Numerical solution sampled at the accepted integrator steps.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    /// Strictly monotone radii in integration order.
    pub rho: Vec<f64>,
    pub values: Vec<Complex64>,
    /// `dR/drho`.
    pub derivatives: Vec<Complex64>,
}

impl RadialProfile {
    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// Returns the profile with ascending radii.
    pub fn ascending(mut self) -> Self {
        if self.rho.len() > 1 && self.rho[0] > self.rho[self.rho.len() - 1] {
            self.rho.reverse();
            self.values.reverse();
            self.derivatives.reverse();
        }
        self
    }

    /// Scaled current `rho Im(R* R') / M` at every grid point.
    pub fn scaled_currents(&self, mass: f64) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.rho[i] * (self.values[i].conj() * self.derivatives[i]).im / mass)
            .collect()
    }

    /// `(max - min)` of the scaled current over the grid, relative to
    /// `max rho |R| |R'| / M`, the size the current could have had.
    pub fn current_spread(&self, mass: f64) -> f64 {
        let currents = self.scaled_currents(mass);
        let lo = currents.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = currents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let scale = (0..self.len())
            .map(|i| self.rho[i] * self.values[i].norm() * self.derivatives[i].norm() / mass)
            .fold(0.0, f64::max);
        if scale > 0.0 {
            (hi - lo) / scale
        } else {
            0.0
        }
    }

    /// Indices with `lo <= rho <= hi`.
    pub fn window(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rho[i] >= lo && self.rho[i] <= hi).collect()
    }

    /// Value at `rho` by cubic Hermite interpolation between grid points.
    pub fn interpolate(&self, rho: f64) -> Option<(Complex64, Complex64)> {
        let n = self.len();
        let ascending = n > 1 && self.rho[0] < self.rho[n - 1];
        let (first, last) = if ascending { (self.rho[0], self.rho[n - 1]) } else { (self.rho[n - 1], self.rho[0]) };
        if n < 2 || rho < first || rho > last {
            return None;
        }
        let idx: Vec<usize> = if ascending { (0..n).collect() } else { (0..n).rev().collect() };
        let k = idx.windows(2).position(|w| self.rho[w[1]] >= rho)?;
        let (i, j) = (idx[k], idx[k + 1]);
        let h = self.rho[j] - self.rho[i];
        let s = (rho - self.rho[i]) / h;
        let (y0, y1) = (self.values[i], self.values[j]);
        let (d0, d1) = (self.derivatives[i] * h, self.derivatives[j] * h);
        let h00 = 2.0 * s.powi(3) - 3.0 * s * s + 1.0;
        let h10 = s.powi(3) - 2.0 * s * s + s;
        let h01 = -2.0 * s.powi(3) + 3.0 * s * s;
        let h11 = s.powi(3) - s * s;
        let value = y0 * h00 + d0 * h10 + y1 * h01 + d1 * h11;
        let dv = (y0 * (6.0 * s * s - 6.0 * s)
            + d0 * (3.0 * s * s - 4.0 * s + 1.0)
            + y1 * (-6.0 * s * s + 6.0 * s)
            + d1 * (3.0 * s * s - 2.0 * s))
            / h;
        Some((value, dv))
    }
}

/// Integrates from `rho_start` (where `init = (R, R')`) to `rho_end`.
///
/// `tol` bounds the local error per step relative to the state. Steps are
/// also capped at `ln 10 / 20` in `ln rho` and at `1/points_per_wavelength`
/// of the local oscillation period.
pub fn integrate_radial(
    eq: &RadialEquation,
    rho_start: f64,
    init: (Complex64, Complex64),
    rho_end: f64,
    tol: f64,
    points_per_wavelength: f64,
) -> Result<RadialProfile> {
    if !(rho_start > 0.0 && rho_end > 0.0) {
        return Err(Error::InvalidConfig("integration radii must be positive".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig(format!("tolerance must be positive, got {tol}")));
    }
    let t0 = rho_start.ln();
    let t1 = rho_end.ln();
    let y0 = [init.0, init.1 * rho_start];
    let decade_cap = LN_10 / 20.0;
    let max_step = |t: f64| {
        let omega = (-eq.potential(t)).max(0.0).sqrt();
        if omega > 0.0 {
            decade_cap.min(2.0 * PI / (points_per_wavelength * omega))
        } else {
            decade_cap
        }
    };
    let mut profile = RadialProfile {
        rho: vec![rho_start],
        values: vec![init.0],
        derivatives: vec![init.1],
    };
    let rhs = |t: f64, y: &[Complex64; 2]| [y[1], y[0] * eq.potential(t)];
    let observer = |t: f64, y: &[Complex64; 2]| {
        let rho = t.exp();
        profile.rho.push(rho);
        profile.values.push(y[0]);
        profile.derivatives.push(y[1] / rho);
    };
    integrate(rhs, t0, y0, t1, &StepControl::new(tol), max_step, observer)
        .map_err(|collapse| Error::Stiffness { rho: collapse.t.exp() })?;
    if profile.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Stiffness { rho: rho_end });
    }
    Ok(profile)
}

/// Small-`rho` coefficients `R -> A rho^{-nu} + B rho^{nu}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallRhoFit {
    pub a: Complex64,
    pub b: Complex64,
    pub residual: f64,
}

/// Large-`rho` coefficients of the ingoing and outgoing waves
/// `sqrt(2/(pi p rho)) e^{-+i(p rho - pi/4)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeRhoFit {
    pub ingoing: Complex64,
    pub outgoing: Complex64,
    pub residual: f64,
}

/// Fits the Frobenius pair `rho^{-+nu}(1 + O(rho^2))` over `[lo, hi]`.
pub fn match_small_rho(profile: &RadialProfile, nu: Complex64, p: f64, lo: f64, hi: f64) -> Result<SmallRhoFit> {
    if nu.norm() < 1e-3 {
        return Err(Error::FitDegenerate(format!(
            "order {:.3e} too small: rho^nu and rho^-nu are nearly collinear",
            nu.norm()
        )));
    }
    let idx = profile.window(lo, hi);
    if idx.len() < 4 {
        return Err(Error::FitDegenerate(format!("only {} samples in [{lo:e}, {hi:e}]", idx.len())));
    }
    let samples: Vec<Complex64> = idx.iter().map(|&i| profile.values[i]).collect();
    let minus: Vec<Complex64> = idx.iter().map(|&i| frobenius(-nu, p, profile.rho[i]).0).collect();
    let plus: Vec<Complex64> = idx.iter().map(|&i| frobenius(nu, p, profile.rho[i]).0).collect();
    let fit = fit_two_terms(&samples, &minus, &plus)?;
    Ok(SmallRhoFit {
        a: fit.c1,
        b: fit.c2,
        residual: fit.residual,
    })
}

/// Fits the asymptotic waves over `[lo, hi]`; requires `points_per_wavelength`
/// samples per period `2 pi / p`.
pub fn match_large_rho(
    profile: &RadialProfile,
    nu_squared: f64,
    p: f64,
    lo: f64,
    hi: f64,
    points_per_wavelength: f64,
) -> Result<LargeRhoFit> {
    let reach = profile.rho.iter().cloned().fold(0.0, f64::max);
    if reach < hi * (1.0 - 1e-12) {
        return Err(Error::FitDegenerate(format!("profile ends at {reach:e}, before {hi:e}")));
    }
    let idx = profile.window(lo, hi);
    let periods = (hi - lo) * p / (2.0 * PI);
    if (idx.len() as f64) < points_per_wavelength * periods {
        return Err(Error::FitDegenerate(format!(
            "oscillation under-resolved: {} samples over {periods:.1} periods",
            idx.len()
        )));
    }
    let samples: Vec<Complex64> = idx.iter().map(|&i| profile.values[i]).collect();
    let win: Vec<Complex64> = idx.iter().map(|&i| asymptotic_wave(false, nu_squared, p, profile.rho[i]).0).collect();
    let wout: Vec<Complex64> = idx.iter().map(|&i| asymptotic_wave(true, nu_squared, p, profile.rho[i]).0).collect();
    let fit = fit_two_terms(&samples, &win, &wout)?;
    Ok(LargeRhoFit {
        ingoing: fit.c1,
        outgoing: fit.c2,
        residual: fit.residual,
    })
}

/// `S_m = e^{i pi m} O / I`.
pub fn smatrix_from_waves(m: i64, fit: &LargeRhoFit) -> Complex64 {
    Complex64::from_polar(1.0, PI * m as f64) * fit.outgoing / fit.ingoing
}
