use num_complex::Complex64;

use super::{
    frobenius, integrate_radial, match_large_rho, match_small_rho, smatrix_from_waves, LargeRhoFit, RadialEquation,
    RadialProfile, SmallRhoFit,
};
use crate::channel::{small_rho_from_hankel, BoundaryModel, PartialMode, Regime, ScatteringConfig};
use crate::error::{Error, Result};

/// Start of the `rho^-mu` branch of subcritical modes, in units of `min(1/p, 1)`.
const RECESSIVE_START: f64 = 0.1;

/// Tolerances and fit windows of the numerical pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    /// Local error per step.
    pub tol: f64,
    /// Start radius as a multiple of `min(1/p, 1)`.
    pub rho_in_scale: f64,
    /// Small-`rho` window is `[rho_in, small_window * rho_in]`.
    pub small_window: f64,
    /// Large-`rho` window in units of `1/p`.
    pub large_window: (f64, f64),
    pub points_per_wavelength: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            rho_in_scale: 1e-4,
            small_window: 10.0,
            large_window: (50.0, 100.0),
            points_per_wavelength: 20.0,
        }
    }
}

impl OracleSettings {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn rho_in(&self, p: f64) -> f64 {
        self.rho_in_scale * (1.0 / p).min(1.0)
    }
}

/// Small-`rho` data `(A, B)` of `R -> A rho^{-nu} + B rho^{nu}` selected by `model`.
pub fn boundary_data(cfg: &ScatteringConfig, mode: &PartialMode, model: BoundaryModel) -> Result<(Complex64, Complex64)> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if mode.regime == Regime::Regular {
        return Ok((zero, one));
    }
    model.check_regime(mode.m, mode.regime)?;
    Ok(match model {
        BoundaryModel::ElasticSubcritical { l } if l.is_infinite() => (one, zero),
        BoundaryModel::ElasticSubcritical { l } => (Complex64::new(l, 0.0), one),
        BoundaryModel::ElasticSupercritical { theta } => (Complex64::from_polar(1.0, theta), one),
        BoundaryModel::Sink => (one, zero),
        BoundaryModel::TotalAbsorption => small_rho_from_hankel(mode, cfg.p, zero, one),
        BoundaryModel::Custom { ratio } => small_rho_from_hankel(mode, cfg.p, ratio, one),
    })
}

/// Initial point of an outward integration.
struct Start {
    a: Complex64,
    b: Complex64,
    rho: f64,
    init: (Complex64, Complex64),
}

impl Start {
    fn new(cfg: &ScatteringConfig, mode: &PartialMode, model: BoundaryModel, settings: &OracleSettings) -> Result<Self> {
        let (a, b) = boundary_data(cfg, mode, model)?;
        let nu = mode.order().nu();
        // rho^-mu decays outward, so starting a subcritical solution at rho_in
        // lets roundoff seed rho^+mu with relative weight ~ eps (p rho_in)^{-2 mu}.
        // The series is exact everywhere: start such solutions further out and
        // integrate inward (where rho^-mu grows) as well as outward.
        let rho = if mode.regime == Regime::Subcritical && a != Complex64::new(0.0, 0.0) {
            RECESSIVE_START * (1.0 / cfg.p).min(1.0)
        } else {
            settings.rho_in(cfg.p)
        };
        let (fm, dfm) = frobenius(-nu, cfg.p, rho);
        let (fp, dfp) = frobenius(nu, cfg.p, rho);
        Ok(Self {
            a,
            b,
            rho,
            init: (a * fm + b * fp, a * dfm + b * dfp),
        })
    }
}

/// `(R, R')` of the channel at each of the ascending `radii`, integrating
/// piecewise so every radius is hit exactly.
pub fn sample_radial(
    cfg: &ScatteringConfig,
    mode: &PartialMode,
    model: BoundaryModel,
    settings: &OracleSettings,
    radii: &[f64],
) -> Result<Vec<(Complex64, Complex64)>> {
    let start = Start::new(cfg, mode, model, settings)?;
    let eq = RadialEquation::new(mode.nu_squared, cfg.p);
    let (mut rho, mut state) = (start.rho, start.init);
    let mut out = Vec::with_capacity(radii.len());
    for &target in radii {
        if target < rho {
            return Err(Error::InvalidConfig(format!("radii must be ascending and >= {rho:e}")));
        }
        let piece = integrate_radial(&eq, rho, state, target, settings.tol, settings.points_per_wavelength)?;
        let last = piece.len() - 1;
        state = (piece.values[last], piece.derivatives[last]);
        rho = target;
        out.push(state);
    }
    Ok(out)
}

/// Everything the numerical pipeline learned about one channel.
#[derive(Debug, Clone)]
pub struct NumericChannel {
    /// Imposed small-`rho` data.
    pub initial: (Complex64, Complex64),
    /// Refit of the small-`rho` data; `None` where the fit is degenerate.
    pub small: Option<SmallRhoFit>,
    pub large: LargeRhoFit,
    pub s_matrix: Complex64,
    pub current_spread: f64,
    pub profile: RadialProfile,
}

/// Integrates the channel selected by `model` outward from `rho_in` past
/// the large-`rho` window and extracts `S_m`.
pub fn numeric_channel(
    cfg: &ScatteringConfig,
    mode: &PartialMode,
    model: BoundaryModel,
    settings: &OracleSettings,
) -> Result<NumericChannel> {
    numeric_channel_to(cfg, mode, model, settings, settings.large_window.1 / cfg.p)
}

/// As [`numeric_channel`] but integrating to at least `rho_out`.
pub fn numeric_channel_to(
    cfg: &ScatteringConfig,
    mode: &PartialMode,
    model: BoundaryModel,
    settings: &OracleSettings,
    rho_out: f64,
) -> Result<NumericChannel> {
    let start = Start::new(cfg, mode, model, settings)?;
    let (a, b) = (start.a, start.b);
    let nu = mode.order().nu();
    let rho_in = settings.rho_in(cfg.p);
    let eq = RadialEquation::new(mode.nu_squared, cfg.p);
    let end = rho_out.max(settings.large_window.1 / cfg.p);
    let ppw = settings.points_per_wavelength;
    let (rho_start, init) = (start.rho, start.init);
    let mut profile = integrate_radial(&eq, rho_start, init, end, settings.tol, ppw)?;
    if rho_start > rho_in {
        let inner = integrate_radial(&eq, rho_start, init, rho_in, settings.tol, ppw)?.ascending();
        let n = inner.len() - 1;
        profile.rho.splice(0..1, inner.rho[..n].iter().cloned());
        profile.values.splice(0..1, inner.values[..n].iter().cloned());
        profile.derivatives.splice(0..1, inner.derivatives[..n].iter().cloned());
    }

    let small = match match_small_rho(&profile, nu, cfg.p, rho_in, settings.small_window * rho_in) {
        Ok(fit) => Some(fit),
        Err(Error::FitDegenerate(_)) => None,
        Err(e) => return Err(e),
    };
    let (lo, hi) = settings.large_window;
    let large = match_large_rho(&profile, mode.nu_squared, cfg.p, lo / cfg.p, hi / cfg.p, ppw)?;
    if large.ingoing.norm() == 0.0 {
        return Err(Error::FitDegenerate("no ingoing wave".into()));
    }
    Ok(NumericChannel {
        initial: (a, b),
        small,
        s_matrix: smatrix_from_waves(mode.m, &large),
        current_spread: profile.current_spread(cfg.mass),
        large,
        profile,
    })
}

/// `S_m` from the numerical pipeline.
pub fn numeric_smatrix(
    cfg: &ScatteringConfig,
    mode: &PartialMode,
    model: BoundaryModel,
    settings: &OracleSettings,
) -> Result<Complex64> {
    Ok(numeric_channel(cfg, mode, model, settings)?.s_matrix)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::channel::{classify_mode, solve_channel};
    use crate::specfun::{bessel_j, Order};

    fn cfg(beta: f64, gamma: f64, p: f64) -> ScatteringConfig {
        ScatteringConfig::with_default_mass(beta, gamma, p).unwrap()
    }

    #[test]
    fn regular_profile_matches_bessel_j() {
        let c = cfg(0.0, 0.0, 1.0);
        let mode = classify_mode(&c, 2).unwrap();
        let ch = numeric_channel(&c, &mode, BoundaryModel::Sink, &OracleSettings::default()).unwrap();
        // profile is Gamma(3) (2/p)^2 J_2
        let scale = 2.0 * 4.0;
        let rho = 50.0;
        let (v, _) = ch.profile.interpolate(rho).unwrap();
        let j = bessel_j(Order::Real(2.0), rho).unwrap().re * scale;
        assert!((v.re - j).abs() < 1e-8 * scale, "{} vs {}", v.re, j);
    }

    #[test]
    fn half_order_is_a_sinusoid() {
        let eq = RadialEquation::new(0.25, 1.3);
        let rho0: f64 = 0.2;
        // u = sqrt(rho) R = sin(p rho)
        let r = (1.3 * rho0).sin() / rho0.sqrt();
        let dr = 1.3 * (1.3 * rho0).cos() / rho0.sqrt() - 0.5 * r / rho0;
        let prof = integrate_radial(&eq, rho0, (r.into(), dr.into()), 40.0, 1e-11, 20.0).unwrap();
        for i in 0..prof.len() {
            let exact = (1.3 * prof.rho[i]).sin() / prof.rho[i].sqrt();
            assert!((prof.values[i].re - exact).abs() < 1e-8);
        }
    }

    #[test]
    fn sink_modulus_from_numerics() {
        let c = cfg(0.3, 0.5, 1.0);
        let mode = classify_mode(&c, 0).unwrap();
        let ch = numeric_channel(&c, &mode, BoundaryModel::Sink, &OracleSettings::default()).unwrap();
        assert!((ch.s_matrix.norm() - (-PI * mode.mu).exp()).abs() < 1e-5);
        let small = ch.small.unwrap();
        assert!(small.b.norm() < 1e-6 * small.a.norm());
        assert!(ch.current_spread < 1e-7);
    }

    #[test]
    fn elastic_supercritical_refit_has_equal_moduli() {
        let c = cfg(0.3, 1.2, 0.7);
        let mode = classify_mode(&c, 0).unwrap();
        let ch = numeric_channel(&c, &mode, BoundaryModel::ElasticSupercritical { theta: 0.0 }, &OracleSettings::default()).unwrap();
        let s = ch.small.unwrap();
        assert!((s.a.norm() - s.b.norm()).abs() < 1e-6 * s.a.norm());
    }

    #[test]
    fn free_s_wave_has_unit_smatrix() {
        let c = cfg(0.0, 0.0, 2.0);
        let mode = classify_mode(&c, 0).unwrap();
        let ch = numeric_channel(&c, &mode, BoundaryModel::Sink, &OracleSettings::default()).unwrap();
        assert!((ch.s_matrix - 1.0).norm() < 1e-6);
        assert!((ch.large.ingoing.norm() - ch.large.outgoing.norm()).abs() < 1e-6 * ch.large.ingoing.norm());
    }

    #[test]
    fn total_absorption_has_no_outgoing_wave() {
        let c = cfg(0.4, 0.9, 1.0);
        for m in [0, 1] {
            let mode = classify_mode(&c, m).unwrap();
            let ch = numeric_channel(&c, &mode, BoundaryModel::TotalAbsorption, &OracleSettings::default()).unwrap();
            assert!(ch.large.outgoing.norm() < 1e-6 * ch.large.ingoing.norm(), "m = {m}");
        }
    }

    #[test]
    fn numeric_and_closed_form_agree() {
        let c = cfg(0.35, 0.8, 1.4);
        for m in -2..=3 {
            let mode = classify_mode(&c, m).unwrap();
            let model = match mode.regime {
                Regime::Subcritical => BoundaryModel::ElasticSubcritical { l: 0.6 },
                _ => BoundaryModel::ElasticSupercritical { theta: 1.1 },
            };
            let closed = solve_channel(&c, &mode, model).unwrap().s_matrix;
            let numeric = numeric_smatrix(&c, &mode, model, &OracleSettings::default()).unwrap();
            assert!((closed - numeric).norm() < 1e-5, "m = {m}: {closed} vs {numeric}");
        }
    }

    #[test]
    fn tiny_order_refuses_small_fit() {
        let prof = RadialProfile { rho: vec![1.0; 8], values: vec![1.0.into(); 8], derivatives: vec![0.0.into(); 8] };
        assert!(matches!(
            match_small_rho(&prof, Complex64::new(1e-4, 0.0), 1.0, 0.5, 2.0),
            Err(Error::FitDegenerate(_))
        ));
    }

    #[test]
    fn coarse_profile_is_rejected() {
        let rho: Vec<f64> = (0..20).map(|i| 50.0 + 2.5 * i as f64).collect();
        let prof = RadialProfile { values: vec![1.0.into(); 20], derivatives: vec![0.0.into(); 20], rho };
        assert!(matches!(
            match_large_rho(&prof, 0.0, 1.0, 50.0, 97.5, 20.0),
            Err(Error::FitDegenerate(_))
        ));
    }
}
