//! Scenario files: a TOML description of one scattering run.
//!
//! ```toml
//! [potential]
//! kind = "inverse-square"   # or "inverse-quartic" (with `lambda` instead of `gamma`)
//! beta = 0.3
//! gamma = 0.5
//! p = 1.0
//! mass = 0.5                # optional
//!
//! [models]
//! subcritical = { kind = "elastic-subcritical", l = 0.0 }
//! supercritical = { kind = "sink" }
//! absorption_window = [0, 1]                       # optional
//! overrides = [{ m = 2, kind = "custom", re = 0.3, im = 0.1 }]
//!
//! [modes]
//! range = "auto"            # or [lo, hi]
//!
//! [phi]
//! start = 0.01
//! stop = 6.27
//! count = 64                # or `values = [...]`
//!
//! [output]
//! format = "csv"            # or "json"
//! dir = "out"
//! ```

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use abscat::channel::{BoundaryModel, ModelSchedule, PHI_MIN};
use abscat::quartic::{QuarticConfig, QuarticModel};
use abscat::ScatteringConfig;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Margin of regular modes added around the non-regular band by `range = "auto"`.
pub const AUTO_MARGIN: i64 = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub potential: Potential,
    #[serde(default)]
    pub models: Models,
    #[serde(default)]
    pub modes: Modes,
    #[serde(default)]
    pub phi: PhiSamples,
    #[serde(default)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialKind {
    InverseSquare,
    InverseQuartic,
}

/// Potential parameters. `gamma` belongs to the inverse-square kind and
/// `lambda` to the inverse-quartic kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Potential {
    pub kind: PotentialKind,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub p: f64,
    #[serde(default = "default_mass")]
    pub mass: f64,
}

fn default_mass() -> f64 {
    0.5
}

impl Potential {
    pub fn kind(&self) -> &'static str {
        match self.kind {
            PotentialKind::InverseSquare => "inverse-square",
            PotentialKind::InverseQuartic => "inverse-quartic",
        }
    }

    fn coupling_field(&self) -> (&'static str, Option<f64>, Option<f64>) {
        match self.kind {
            PotentialKind::InverseSquare => ("gamma", self.gamma, self.lambda),
            PotentialKind::InverseQuartic => ("lambda", self.lambda, self.gamma),
        }
    }

    /// `gamma` or `lambda`, whichever the kind uses.
    pub fn coupling(&self) -> Result<f64, CliError> {
        let (name, value, other) = self.coupling_field();
        if other.is_some() {
            let wrong = if name == "gamma" { "lambda" } else { "gamma" };
            return Err(CliError::Config(format!("potential.{wrong} does not apply to a {} potential", self.kind())));
        }
        value.ok_or_else(|| CliError::Config(format!("potential.{name} is required for a {} potential", self.kind())))
    }

    /// Overwrites one parameter by name (`beta`, `gamma`, `lambda`, `p`, `mass`).
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), CliError> {
        match (self.kind, name) {
            (_, "beta") => self.beta = value,
            (_, "p") => self.p = value,
            (_, "mass") => self.mass = value,
            (PotentialKind::InverseSquare, "gamma") => self.gamma = Some(value),
            (PotentialKind::InverseQuartic, "lambda") => self.lambda = Some(value),
            _ => return Err(CliError::Usage(format!("cannot vary `{name}` for a {} potential", self.kind()))),
        }
        Ok(())
    }

    pub fn inverse_square(&self) -> Option<Result<ScatteringConfig, CliError>> {
        (self.kind == PotentialKind::InverseSquare).then(|| {
            let gamma = self.coupling()?;
            ScatteringConfig::new(self.beta, gamma, self.p, self.mass).map_err(|e| CliError::Config(format!("potential: {e}")))
        })
    }

    pub fn inverse_quartic(&self) -> Option<Result<QuarticConfig, CliError>> {
        (self.kind == PotentialKind::InverseQuartic).then(|| {
            let lambda = self.coupling()?;
            QuarticConfig::new(self.beta, lambda, self.p, self.mass).map_err(|e| CliError::Config(format!("potential: {e}")))
        })
    }
}

/// A boundary model as written in the file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    ElasticSubcritical { l: f64 },
    ElasticSupercritical { theta: f64 },
    /// Quartic self-adjoint condition; `theta` omitted means the angle that
    /// reduces to the free channel as `lambda -> 0`.
    Elastic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<f64>,
    },
    Sink,
    TotalAbsorption,
    Custom { re: f64, im: f64 },
}

impl ModelSpec {
    fn inverse_square(self) -> Result<BoundaryModel, CliError> {
        Ok(match self {
            ModelSpec::ElasticSubcritical { l } => BoundaryModel::ElasticSubcritical { l },
            ModelSpec::ElasticSupercritical { theta } => BoundaryModel::ElasticSupercritical { theta },
            ModelSpec::Sink => BoundaryModel::Sink,
            ModelSpec::TotalAbsorption => BoundaryModel::TotalAbsorption,
            ModelSpec::Custom { re, im } => BoundaryModel::Custom { ratio: Complex64::new(re, im) },
            ModelSpec::Elastic { .. } => {
                return Err(CliError::Config(
                    "models: `elastic` applies to the inverse-quartic potential; use elastic-subcritical or elastic-supercritical".into(),
                ))
            }
        })
    }

    fn inverse_quartic(self) -> Result<Option<QuarticModel>, CliError> {
        Ok(match self {
            ModelSpec::Elastic { theta: Some(theta) } => Some(QuarticModel::Elastic { theta }),
            ModelSpec::Elastic { theta: None } => None,
            ModelSpec::Sink => Some(QuarticModel::Sink),
            ModelSpec::TotalAbsorption => Some(QuarticModel::TotalAbsorption),
            other => {
                return Err(CliError::Config(format!(
                    "models: {other:?} does not apply to the inverse-quartic potential"
                )))
            }
        })
    }
}

// `flatten` rules out deny_unknown_fields here
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelOverride {
    pub m: i64,
    #[serde(flatten)]
    pub model: ModelSpec,
}

/// Per-mode model assignment.
///
/// Inverse-square scenarios use `subcritical`, `supercritical`,
/// `absorption_window` and `overrides`; inverse-quartic scenarios use
/// `inner` for `|m| <= m_abs` and `outer` beyond.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Models {
    #[serde(default = "default_subcritical")]
    pub subcritical: ModelSpec,
    #[serde(default = "default_supercritical")]
    pub supercritical: ModelSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absorption_window: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<ModelOverride>,
    #[serde(default = "default_inner")]
    pub inner: ModelSpec,
    #[serde(default = "default_outer")]
    pub outer: ModelSpec,
    #[serde(default)]
    pub m_abs: i64,
}

fn default_subcritical() -> ModelSpec {
    ModelSpec::ElasticSubcritical { l: 0.0 }
}

fn default_supercritical() -> ModelSpec {
    ModelSpec::Sink
}

fn default_inner() -> ModelSpec {
    ModelSpec::Sink
}

fn default_outer() -> ModelSpec {
    ModelSpec::Sink
}

impl Default for Models {
    fn default() -> Self {
        Self {
            subcritical: default_subcritical(),
            supercritical: default_supercritical(),
            absorption_window: None,
            overrides: Vec::new(),
            inner: default_inner(),
            outer: default_outer(),
            m_abs: 0,
        }
    }
}

impl Models {
    pub fn inverse_square(&self) -> Result<ModelSchedule, CliError> {
        let mut schedule = ModelSchedule::new(self.subcritical.inverse_square()?, self.supercritical.inverse_square()?);
        if let Some([lo, hi]) = self.absorption_window {
            if lo > hi {
                return Err(CliError::Config(format!("models.absorption_window: empty window [{lo}, {hi}]")));
            }
            schedule = schedule.with_absorption_window(lo, hi);
        }
        for o in &self.overrides {
            schedule = schedule.with_override(o.m, o.model.inverse_square()?);
        }
        Ok(schedule)
    }

    /// Quartic schedule; `None` entries mean "vanishing-coupling elastic".
    pub fn inverse_quartic(&self) -> Result<QuarticModels, CliError> {
        let inner = self.inner.inverse_quartic()?;
        let outer = self.outer.inverse_quartic()?;
        if self.m_abs < 0 {
            return Err(CliError::Config(format!("models.m_abs must be >= 0, got {}", self.m_abs)));
        }
        Ok(QuarticModels { m_abs: self.m_abs, inner, outer })
    }
}

/// Quartic schedule allowing per-mode elastic angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticModels {
    pub m_abs: i64,
    inner: Option<QuarticModel>,
    outer: Option<QuarticModel>,
}

impl QuarticModels {
    pub fn model_for(&self, beta: f64, m: i64) -> QuarticModel {
        let chosen = if m.abs() <= self.m_abs { self.inner } else { self.outer };
        chosen.unwrap_or_else(|| QuarticModel::vanishing_coupling(beta, m))
    }

    pub fn describe(&self) -> String {
        let name = |m: Option<QuarticModel>| match m {
            Some(QuarticModel::Elastic { theta }) => format!("elastic(theta={theta})"),
            Some(other) => other.name().to_string(),
            None => "elastic(free-limit)".to_string(),
        };
        format!("|m|<={}: {} else: {}", self.m_abs, name(self.inner), name(self.outer))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModeRange {
    Bounds([i64; 2]),
    Keyword(String),
}

impl Default for ModeRange {
    fn default() -> Self {
        ModeRange::Keyword("auto".into())
    }
}

impl ModeRange {
    /// Parses `auto` or `lo:hi`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s == "auto" {
            return Ok(ModeRange::Keyword(s.into()));
        }
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("--m-range expects `auto` or `lo:hi`, got `{s}`")))?;
        let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| CliError::Usage(format!("--m-range `{s}`: {e}")));
        Ok(ModeRange::Bounds([parse(lo)?, parse(hi)?]))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Modes {
    #[serde(default)]
    pub range: ModeRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum PhiSamples {
    Grid { start: f64, stop: f64, count: usize },
    List { values: Vec<f64> },
}

impl Default for PhiSamples {
    fn default() -> Self {
        PhiSamples::Grid { start: 0.01, stop: 2.0 * PI - 0.01, count: 180 }
    }
}

impl PhiSamples {
    /// The sample angles, rejecting any inside the forward cone.
    pub fn angles(&self) -> Result<Vec<f64>, CliError> {
        let phis = match self {
            PhiSamples::List { values } => values.clone(),
            PhiSamples::Grid { count: 0, .. } => Vec::new(),
            PhiSamples::Grid { start, count: 1, .. } => vec![*start],
            PhiSamples::Grid { start, stop, count } => {
                let step = (stop - start) / (*count - 1) as f64;
                (0..*count).map(|i| start + step * i as f64).collect()
            }
        };
        for &phi in &phis {
            let mut r = phi.rem_euclid(2.0 * PI);
            if r > PI {
                r -= 2.0 * PI;
            }
            if !phi.is_finite() || r.abs() < PHI_MIN {
                return Err(CliError::Config(format!(
                    "phi: angle {phi} lies within {PHI_MIN} rad of the forward direction"
                )));
            }
        }
        Ok(phis)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default)]
    pub format: Format,
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for Output {
    fn default() -> Self {
        Self { format: Format::Csv, dir: default_dir() }
    }
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    /// Concrete mode interval. Explicit ranges must cover every non-regular mode.
    pub fn mode_range(&self) -> Result<(i64, i64), CliError> {
        let beta = self.potential.beta;
        let auto = match self.potential.kind {
            PotentialKind::InverseSquare => {
                let cfg = self.potential.inverse_square().expect("inverse-square")?;
                match cfg.non_regular_range() {
                    Some((lo, hi)) => (lo - AUTO_MARGIN, hi + AUTO_MARGIN),
                    None => (beta.round() as i64 - AUTO_MARGIN, beta.round() as i64 + AUTO_MARGIN),
                }
            }
            PotentialKind::InverseQuartic => {
                let cfg = self.potential.inverse_quartic().expect("inverse-quartic")?;
                // classical capture needs |m - beta| below about sqrt(2 p lambda)
                let half = (2.0 * cfg.p * cfg.lambda).sqrt().ceil() as i64 + AUTO_MARGIN;
                let centre = beta.round() as i64;
                let m_abs = self.models.m_abs;
                ((centre - half).min(-m_abs), (centre + half).max(m_abs))
            }
        };
        match &self.modes.range {
            ModeRange::Keyword(k) if k == "auto" => Ok(auto),
            ModeRange::Keyword(k) => Err(CliError::Config(format!("modes.range: expected \"auto\" or [lo, hi], got \"{k}\""))),
            ModeRange::Bounds([lo, hi]) => {
                if lo > hi {
                    return Err(CliError::Config(format!("modes.range: empty range [{lo}, {hi}]")));
                }
                if let Some(cfg) = self.potential.inverse_square() {
                    if let Some((nlo, nhi)) = cfg?.non_regular_range() {
                        if nlo < *lo || nhi > *hi {
                            return Err(CliError::Config(format!(
                                "modes.range: [{lo}, {hi}] misses non-regular modes [{nlo}, {nhi}]; widen it or use \"auto\""
                            )));
                        }
                    }
                }
                Ok((*lo, *hi))
            }
        }
    }
}
