//! Flux line plus an attractive `rho^-4` core:
//!
//! ```text
//! R'' + R'/rho - (m - beta)^2 R/rho^2 + lambda^2 R/rho^4 + p^2 R = 0
//! ```
//!
//! With `rho = rho0 e^x`, `rho0 = sqrt(lambda/p)`, this is the modified
//! Mathieu equation `R_xx - (a - 2 q cosh 2x) R = 0` with `a = (m - beta)^2`
//! and `q = p lambda`. Rather than evaluating Mathieu functions the equation is
//! integrated directly between two asymptotic bases:
//!
//! - near the origin `R3 ~ H1_nu(lambda/rho)` (ingoing toward the core) and
//!   `R4 ~ H2_nu(lambda/rho)`;
//! - far away `R1 ~ H1_nu(p rho)` (outgoing) and `R2 ~ H2_nu(p rho)`.
//!
//! Both bases carry the first WKB phase correction `exp(-+ i q^2 / (6 z^3))`
//! from the opposite end of the potential.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channel::{flux_line_smatrix, DEFAULT_MASS};
use crate::error::{Error, Result};
use crate::oracle::{asymptotic_wave, fit_two_terms, integrate_radial, RadialEquation, RadialProfile};

/// Default local error tolerance for the connection problem.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Smallest accepted tolerance.
pub const MIN_TOLERANCE: f64 = 1e-10;
const POINTS_PER_WAVELENGTH: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticConfig {
    pub beta: f64,
    /// Core strength, `lambda^2 = 2 M kappa^2`; `rho0 = sqrt(lambda / p)`.
    pub lambda: f64,
    pub p: f64,
    pub mass: f64,
}

impl QuarticConfig {
    pub fn new(beta: f64, lambda: f64, p: f64, mass: f64) -> Result<Self> {
        let cfg = Self { beta, lambda, p, mass };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_default_mass(beta: f64, lambda: f64, p: f64) -> Result<Self> {
        Self::new(beta, lambda, p, DEFAULT_MASS)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta >= 0.0 && self.beta < 1.0) {
            return Err(Error::InvalidConfig(format!("beta must lie in [0, 1), got {}", self.beta)));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!("lambda must be > 0, got {}", self.lambda)));
        }
        if !(self.p > 0.0 && self.p.is_finite()) {
            return Err(Error::InvalidConfig(format!("p must be > 0, got {}", self.p)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidConfig(format!("mass must be > 0, got {}", self.mass)));
        }
        Ok(())
    }

    pub fn rho0(&self) -> f64 {
        (self.lambda / self.p).sqrt()
    }

    /// Mathieu `q = p lambda`.
    pub fn q(&self) -> f64 {
        self.p * self.lambda
    }

    /// Mathieu `a = (m - beta)^2`.
    pub fn mathieu_a(&self, m: i64) -> f64 {
        (m as f64 - self.beta).powi(2)
    }
}

/// `T` maps small-`rho` coefficients `(c3, c4)` to large-`rho` `(c1, c2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionMatrix {
    pub entries: [[Complex64; 2]; 2],
    /// `max |T^+ diag(1,-1) T + diag(1,-1)| / max |T_ij|^2`.
    pub flux_residual: f64,
    /// Worst large-`rho` fit residual of the two columns.
    pub fit_residual: f64,
    pub tol: f64,
}

impl ConnectionMatrix {
    pub fn apply(&self, c3: Complex64, c4: Complex64) -> (Complex64, Complex64) {
        let t = &self.entries;
        (t[0][0] * c3 + t[0][1] * c4, t[1][0] * c3 + t[1][1] * c4)
    }

    pub fn determinant(&self) -> Complex64 {
        let t = &self.entries;
        t[0][0] * t[1][1] - t[0][1] * t[1][0]
    }

    /// Largest entry difference to `other`, relative to the largest entry.
    pub fn distance(&self, other: &ConnectionMatrix) -> f64 {
        let mut diff: f64 = 0.0;
        let mut size: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                diff = diff.max((self.entries[i][j] - other.entries[i][j]).norm());
                size = size.max(self.entries[i][j].norm());
            }
        }
        diff / size
    }
}

/// Flux-form defect of a connection matrix; zero when current is conserved.
pub fn flux_defect(t: &[[Complex64; 2]; 2]) -> f64 {
    let sigma = [1.0, -1.0];
    let mut worst: f64 = 0.0;
    let mut size: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut g = Complex64::new(0.0, 0.0);
            for (k, s) in sigma.iter().enumerate() {
                g += t[k][i].conj() * t[k][j] * *s;
            }
            if i == j {
                g += sigma[i];
            }
            worst = worst.max(g.norm());
            size = size.max(t[i][j].norm_sqr());
        }
    }
    worst / size
}

/// Argument beyond which the corrected Hankel asymptote is accurate to `tol`.
fn matching_argument(q: f64, nu: f64, tol: f64) -> f64 {
    50f64.max(nu * nu).max((10.0 * q * q / tol).powf(0.25))
}

/// `H1_nu(z)` or `H2_nu(z)` times `exp(-+ i q^2 / (6 z^3))`, and its `z` derivative.
fn corrected_hankel(first: bool, nu: f64, q: f64, z: f64) -> (Complex64, Complex64) {
    let (w, dw) = asymptotic_wave(first, nu * nu, 1.0, z);
    let sign = if first { 1.0 } else { -1.0 };
    let rot = Complex64::from_polar(1.0, -sign * 0.5 * PI * nu);
    let phase = -sign * q * q / (6.0 * z.powi(3));
    let dphase = sign * q * q / (2.0 * z.powi(4));
    let corr = Complex64::from_polar(1.0, phase);
    let value = rot * w * corr;
    let deriv = rot * corr * (dw + w * Complex64::new(0.0, dphase));
    (value, deriv)
}

/// `R3` (`first`) or `R4` at `rho`, with `dR/drho`.
pub fn small_basis(cfg: &QuarticConfig, nu: f64, first: bool, rho: f64) -> (Complex64, Complex64) {
    let s = cfg.lambda / rho;
    let (v, d) = corrected_hankel(first, nu, cfg.q(), s);
    (v, d * (-s / rho))
}

/// `R1` (`first`) or `R2` at `rho`, with `dR/drho`.
pub fn large_basis(cfg: &QuarticConfig, nu: f64, first: bool, rho: f64) -> (Complex64, Complex64) {
    let (v, d) = corrected_hankel(first, nu, cfg.q(), cfg.p * rho);
    (v, d * cfg.p)
}

/// Radii used by the connection problem.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Layout {
    rho_start: f64,
    window: (f64, f64),
}

fn layout(cfg: &QuarticConfig, nu: f64, tol: f64) -> Result<Layout> {
    let z = matching_argument(cfg.q(), nu, tol);
    let rho_start = cfg.lambda / z;
    let window = (z / cfg.p, 2.0 * z / cfg.p);
    if rho_start >= window.0 {
        return Err(Error::InvalidConfig(format!(
            "q = {} too large: asymptotic regions overlap",
            cfg.q()
        )));
    }
    Ok(Layout { rho_start, window })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= MIN_TOLERANCE) {
        return Err(Error::InvalidConfig(format!("tolerance must be >= {MIN_TOLERANCE:e}, got {tol}")));
    }
    Ok(())
}

fn fit_profile<B>(profile: &RadialProfile, lo: f64, hi: f64, basis: B) -> Result<(Complex64, Complex64, f64)>
where
    B: Fn(bool, f64) -> Complex64,
{
    let idx = profile.window(lo, hi);
    let samples: Vec<Complex64> = idx.iter().map(|&i| profile.values[i]).collect();
    let f1: Vec<Complex64> = idx.iter().map(|&i| basis(true, profile.rho[i])).collect();
    let f2: Vec<Complex64> = idx.iter().map(|&i| basis(false, profile.rho[i])).collect();
    let fit = fit_two_terms(&samples, &f1, &f2)?;
    Ok((fit.c1, fit.c2, fit.residual))
}

/// Integrates `R3` and `R4` outward and projects them on `(R1, R2)`.
pub fn connection_matrix(cfg: &QuarticConfig, m: i64, tol: f64) -> Result<ConnectionMatrix> {
    cfg.validate()?;
    check_tol(tol)?;
    let nu = (m as f64 - cfg.beta).abs();
    let eq = RadialEquation {
        nu_squared: nu * nu,
        p: cfg.p,
        lambda: cfg.lambda,
    };
    let lay = layout(cfg, nu, tol)?;
    let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut fit_residual: f64 = 0.0;
    for (col, first) in [(0, true), (1, false)] {
        let init = small_basis(cfg, nu, first, lay.rho_start);
        let profile = integrate_radial(&eq, lay.rho_start, init, lay.window.1, tol, POINTS_PER_WAVELENGTH)?;
        let (c1, c2, res) = fit_profile(&profile, lay.window.0, lay.window.1, |f, r| large_basis(cfg, nu, f, r).0)?;
        entries[0][col] = c1;
        entries[1][col] = c2;
        fit_residual = fit_residual.max(res);
    }
    Ok(ConnectionMatrix {
        flux_residual: flux_defect(&entries),
        entries,
        fit_residual,
        tol,
    })
}

/// Integrates `R1` and `R2` inward and projects them on `(R3, R4)`: the
/// numerical inverse of [`connection_matrix`].
pub fn inverse_connection_matrix(cfg: &QuarticConfig, m: i64, tol: f64) -> Result<ConnectionMatrix> {
    cfg.validate()?;
    check_tol(tol)?;
    let nu = (m as f64 - cfg.beta).abs();
    let eq = RadialEquation {
        nu_squared: nu * nu,
        p: cfg.p,
        lambda: cfg.lambda,
    };
    let lay = layout(cfg, nu, tol)?;
    let (lo, hi) = (0.5 * lay.rho_start, lay.rho_start);
    let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut fit_residual: f64 = 0.0;
    for (col, first) in [(0, true), (1, false)] {
        let init = large_basis(cfg, nu, first, lay.window.1);
        let profile = integrate_radial(&eq, lay.window.1, init, lo, tol, POINTS_PER_WAVELENGTH)?;
        let (c3, c4, res) = fit_profile(&profile, lo, hi, |f, r| small_basis(cfg, nu, f, r).0)?;
        entries[0][col] = c3;
        entries[1][col] = c4;
        fit_residual = fit_residual.max(res);
    }
    Ok(ConnectionMatrix {
        flux_residual: flux_defect(&entries),
        entries,
        fit_residual,
        tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuarticModel {
    /// Self-adjoint condition `R = e^{-i theta} R3 + e^{i theta} R4`.
    Elastic { theta: f64 },
    /// Only `R3` survives: the particle is captured by the core.
    Sink,
    /// `S_m = 0`.
    TotalAbsorption,
}

impl QuarticModel {
    pub fn name(&self) -> &'static str {
        match self {
            QuarticModel::Elastic { .. } => "elastic",
            QuarticModel::Sink => "sink",
            QuarticModel::TotalAbsorption => "total-absorption",
        }
    }

    /// Elastic angle whose solution tends to the regular free channel as
    /// `lambda -> 0`.
    ///
    /// `e^{-i theta} H1_nu + e^{i theta} H2_nu` is proportional to
    /// `J_{-nu}` for `theta = -pi nu`, to `Y_n` for `theta = pi/2` and to
    /// `J_0` for `theta = 0`; each grows like `rho^nu` between the core and
    /// `1/p`.
    pub fn vanishing_coupling(beta: f64, m: i64) -> Self {
        let nu = (m as f64 - beta).abs();
        let theta = if nu < 1e-9 {
            0.0
        } else if (nu - nu.round()).abs() < 1e-9 {
            0.5 * PI
        } else {
            (-PI * nu).rem_euclid(2.0 * PI)
        };
        QuarticModel::Elastic { theta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticSolution {
    pub m: i64,
    pub model: QuarticModel,
    pub s_matrix: Complex64,
    /// `1 - |S_m|^2`.
    pub capture_probability: f64,
    /// `capture_probability / p`.
    pub sigma_abs: f64,
    /// `e^{-i pi/4} p^{-1/2} (S_m - cos pi beta)`.
    pub f_coeff: Complex64,
    /// `None` for total absorption, where nothing is integrated.
    pub connection: Option<ConnectionMatrix>,
}

/// `S_m = e^{i pi (m - |m - beta|)} c1 / c2` from a connection matrix.
pub fn smatrix_from_connection(cfg: &QuarticConfig, m: i64, t: &ConnectionMatrix, model: QuarticModel) -> Complex64 {
    let (c3, c4) = match model {
        QuarticModel::Elastic { theta } => (Complex64::from_polar(1.0, -theta), Complex64::from_polar(1.0, theta)),
        QuarticModel::Sink => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        QuarticModel::TotalAbsorption => return Complex64::new(0.0, 0.0),
    };
    let (c1, c2) = t.apply(c3, c4);
    flux_line_smatrix(cfg.beta, m) * c1 / c2
}

pub fn quartic_smatrix(cfg: &QuarticConfig, m: i64, model: QuarticModel) -> Result<QuarticSolution> {
    quartic_smatrix_with(cfg, m, model, DEFAULT_TOLERANCE)
}

pub fn quartic_smatrix_with(cfg: &QuarticConfig, m: i64, model: QuarticModel, tol: f64) -> Result<QuarticSolution> {
    cfg.validate()?;
    let (s, connection) = match model {
        QuarticModel::TotalAbsorption => (Complex64::new(0.0, 0.0), None),
        _ => {
            let t = connection_matrix(cfg, m, tol)?;
            let mut s = smatrix_from_connection(cfg, m, &t, model);
            if let QuarticModel::Elastic { .. } = model {
                s /= s.norm();
            }
            (s, Some(t))
        }
    };
    let capture = match model {
        QuarticModel::Elastic { .. } => 0.0,
        QuarticModel::TotalAbsorption => 1.0,
        QuarticModel::Sink => (1.0 - s.norm_sqr()).clamp(0.0, 1.0),
    };
    Ok(QuarticSolution {
        m,
        model,
        s_matrix: s,
        capture_probability: capture,
        sigma_abs: capture / cfg.p,
        f_coeff: Complex64::from_polar(1.0 / cfg.p.sqrt(), -0.25 * PI) * (s - (PI * cfg.beta).cos()),
        connection,
    })
}

/// Model assignment `inner` for `|m| <= m_abs`, `outer` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticSchedule {
    pub m_abs: i64,
    pub inner: QuarticModel,
    pub outer: QuarticModel,
}

pub fn model_schedule(m_abs: i64, inner: QuarticModel, outer: QuarticModel) -> Result<QuarticSchedule> {
    if m_abs < 0 {
        return Err(Error::InvalidConfig(format!("m_abs must be >= 0, got {m_abs}")));
    }
    Ok(QuarticSchedule { m_abs, inner, outer })
}

impl QuarticSchedule {
    pub fn model_for(&self, m: i64) -> QuarticModel {
        if m.abs() <= self.m_abs {
            self.inner
        } else {
            self.outer
        }
    }
}

/// Solves `lo..=hi` under `schedule`; returns the solutions and the total
/// absorption cross section, summed in ascending `m`.
pub fn quartic_cross_section(
    cfg: &QuarticConfig,
    schedule: &QuarticSchedule,
    range: (i64, i64),
    tol: f64,
) -> Result<(Vec<QuarticSolution>, f64)> {
    let mut out = Vec::new();
    for m in range.0..=range.1 {
        out.push(quartic_smatrix_with(cfg, m, schedule.model_for(m), tol)?);
    }
    let total = out.iter().fold(0.0, |acc, s| acc + s.sigma_abs);
    Ok((out, total))
}
