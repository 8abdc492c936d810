//! Release gate: specfun Wronskian sweeps and oracle cross-checks of the
//! closed-form channel solutions, with the worst residual of each check.

use std::fmt;

use num_complex::Complex64;

use crate::channel::{classify_mode, hankel_from_small_rho, solve_channel, BoundaryModel, Regime, ScatteringConfig};
use crate::error::Result;
use crate::oracle::{numeric_channel, OracleSettings};
use crate::quartic::{connection_matrix, DEFAULT_TOLERANCE, MIN_TOLERANCE, smatrix_from_connection, QuarticConfig, QuarticModel};
use crate::specfun::{hankel_with_derivative, wronskian_deviation, HankelKind, Order};

/// Hankel evaluator under test; swappable for fault injection.
pub type HankelEval<'a> = &'a dyn Fn(HankelKind, Order, f64) -> Result<(Complex64, Complex64)>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyProfile {
    pub name: &'static str,
    /// Oracle integration tolerance.
    pub oracle_tol: f64,
    /// Connection-matrix tolerance.
    pub quartic_tol: f64,
}

impl CertifyProfile {
    pub fn default_profile() -> Self {
        Self {
            name: "default",
            oracle_tol: 1e-10,
            quartic_tol: DEFAULT_TOLERANCE,
        }
    }

    /// Integration tolerances divided by 100; the connection problem is
    /// floored at its minimum supported tolerance.
    pub fn strict() -> Self {
        let d = Self::default_profile();
        Self {
            name: "strict",
            oracle_tol: d.oracle_tol / 100.0,
            quartic_tol: (d.quartic_tol / 100.0).max(MIN_TOLERANCE),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    /// Worst residual; infinite when an evaluation failed outright.
    pub worst: f64,
    pub limit: f64,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str, limit: f64) -> Self {
        Self {
            name,
            samples: 0,
            worst: 0.0,
            limit,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, label: impl FnOnce() -> String, value: Result<f64>) {
        self.samples += 1;
        match value {
            Ok(v) if v <= self.limit => self.worst = self.worst.max(v),
            Ok(v) => {
                self.worst = if v.is_nan() { f64::INFINITY } else { self.worst.max(v) };
                self.failures.push(format!("{}: {v:.3e}", label()));
            }
            Err(e) => {
                self.worst = f64::INFINITY;
                self.failures.push(format!("{}: {e}", label()));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub profile: CertifyProfile,
    pub checks: Vec<CheckResult>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for CertificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "profile: {}", self.profile.name)?;
        writeln!(f, "{:<28} {:>7} {:>12} {:>12}  status", "check", "samples", "worst", "limit")?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{:<28} {:>7} {:>12.3e} {:>12.3e}  {status}", c.name, c.samples, c.worst, c.limit)?;
            for msg in c.failures.iter().take(5) {
                writeln!(f, "    {msg}")?;
            }
            if c.failures.len() > 5 {
                writeln!(f, "    ... {} more", c.failures.len() - 5)?;
            }
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn certify(profile: &CertifyProfile) -> CertificationReport {
    certify_with(profile, &hankel_with_derivative)
}

/// As [`certify`] with a substitute Hankel evaluator.
pub fn certify_with(profile: &CertifyProfile, hankel: HankelEval<'_>) -> CertificationReport {
    let (smatrix, current) = channel_agreement(profile);
    let checks = vec![
        wronskian_sweep(hankel),
        smatrix,
        current,
        radial_agreement(profile, hankel),
        quartic_flux(profile),
    ];
    CertificationReport {
        profile: *profile,
        checks,
    }
}

fn wronskian_sweep(hankel: HankelEval<'_>) -> CheckResult {
    let mut check = CheckResult::new("wronskian", 1e-8);
    for i in 0..20 {
        let mu = 0.05 + 0.25 * i as f64;
        for order in [Order::Real(mu), Order::Imaginary(mu)] {
            for k in 0..9 {
                let x = 10f64.powf(-2.0 + 0.5 * k as f64);
                let value = hankel(HankelKind::First, order, x).and_then(|h1| {
                    let h2 = hankel(HankelKind::Second, order, x)?;
                    Ok(wronskian_deviation(h1, h2, x))
                });
                check.record(|| format!("{order:?} x={x:e}"), value);
            }
        }
    }
    check
}

fn sample_channels() -> Vec<(ScatteringConfig, i64, BoundaryModel)> {
    let mut out = Vec::new();
    let points = [(0.3, 0.5, 1.0), (0.7, 1.4, 0.6), (0.1, 2.5, 2.0), (0.5, 0.2, 1.3)];
    for (beta, gamma, p) in points {
        let cfg = ScatteringConfig::with_default_mass(beta, gamma, p).expect("valid sample");
        let (lo, hi) = cfg.non_regular_range().unwrap_or((0, 0));
        for m in (lo - 1)..=(hi + 1) {
            let Ok(mode) = classify_mode(&cfg, m) else { continue };
            let models: &[BoundaryModel] = match mode.regime {
                Regime::Regular => &[BoundaryModel::Sink],
                Regime::Subcritical => &[
                    BoundaryModel::ElasticSubcritical { l: 0.0 },
                    BoundaryModel::ElasticSubcritical { l: 1.5 },
                    BoundaryModel::TotalAbsorption,
                ],
                Regime::Supercritical => &[
                    BoundaryModel::Sink,
                    BoundaryModel::ElasticSupercritical { theta: 2.0 },
                    BoundaryModel::TotalAbsorption,
                ],
            };
            for model in models {
                out.push((cfg, m, *model));
            }
        }
    }
    out
}

fn channel_agreement(profile: &CertifyProfile) -> (CheckResult, CheckResult) {
    let settings = OracleSettings::with_tol(profile.oracle_tol);
    let mut check = CheckResult::new("oracle S-matrix", 1e-5);
    let mut current = CheckResult::new("oracle current constancy", 1e-7);
    for (cfg, m, model) in sample_channels() {
        let label = || format!("beta={} gamma={} m={m} {}", cfg.beta, cfg.gamma, model.name());
        let numeric = classify_mode(&cfg, m).and_then(|mode| {
            let closed = solve_channel(&cfg, &mode, model)?;
            let num = numeric_channel(&cfg, &mode, model, &settings)?;
            Ok(((closed.s_matrix - num.s_matrix).norm(), num.current_spread))
        });
        match numeric {
            Ok((ds, spread)) => {
                check.record(label, Ok(ds));
                current.record(label, Ok(spread));
            }
            Err(e) => check.record(label, Err(e)),
        }
    }
    (check, current)
}

fn radial_agreement(profile: &CertifyProfile, hankel: HankelEval<'_>) -> CheckResult {
    let settings = OracleSettings::with_tol(profile.oracle_tol);
    let mut check = CheckResult::new("closed-form radial", 1e-6);
    for (cfg, m, model) in sample_channels() {
        let label = || format!("beta={} gamma={} m={m} {}", cfg.beta, cfg.gamma, model.name());
        let value = classify_mode(&cfg, m).and_then(|mode| {
            if mode.regime == Regime::Regular {
                return Ok(0.0);
            }
            let num = numeric_channel(&cfg, &mode, model, &settings)?;
            let (a, b) = hankel_from_small_rho(&mode, cfg.p, num.initial.0, num.initial.1)?;
            let mut worst: f64 = 0.0;
            for rho in [1.0 / cfg.p, 10.0 / cfg.p, 50.0 / cfg.p] {
                let (h1, _) = hankel(HankelKind::First, mode.order(), cfg.p * rho)?;
                let (h2, _) = hankel(HankelKind::Second, mode.order(), cfg.p * rho)?;
                let closed = a * h1 + b * h2;
                let (v, _) = num.profile.interpolate(rho).expect("radius inside profile");
                let scale = a.norm() * h1.norm() + b.norm() * h2.norm();
                worst = worst.max((closed - v).norm() / scale);
            }
            Ok(worst)
        });
        check.record(label, value);
    }
    check
}

fn quartic_flux(profile: &CertifyProfile) -> CheckResult {
    let mut check = CheckResult::new("quartic flux form", 1e-6);
    for (beta, lambda, m) in [(0.0, 1.0, 0), (0.3, 2.0, 1), (0.6, 0.5, -1)] {
        let label = || format!("beta={beta} q={lambda} m={m}");
        let value = QuarticConfig::with_default_mass(beta, lambda, 1.0).and_then(|cfg| {
            let t = connection_matrix(&cfg, m, profile.quartic_tol)?;
            let s = smatrix_from_connection(&cfg, m, &t, QuarticModel::Elastic { theta: 0.4 });
            Ok(t.flux_residual.max((s.norm() - 1.0).abs()))
        });
        check.record(label, value);
    }
    check
}
