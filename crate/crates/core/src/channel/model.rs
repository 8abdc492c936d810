use std::collections::BTreeMap;

use num_complex::Complex64;

use super::config::Regime;
use crate::error::{Error, Result};

/// Condition imposed on a channel near the singular line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryModel {
    /// Self-adjoint extension of a subcritical mode, `R -> rho^mu + l rho^-mu`.
    ElasticSubcritical { l: f64 },
    /// Self-adjoint extension of a supercritical mode,
    /// `R -> rho^{i mu} + e^{i theta} rho^{-i mu}`.
    ElasticSupercritical { theta: f64 },
    /// Only the ingoing branch `rho^{-i mu}` survives at the origin.
    Sink,
    /// `S_m = 0`: nothing returns from the singular line.
    TotalAbsorption,
    /// Prescribed Hankel coefficient ratio `a_m / b_m`.
    Custom { ratio: Complex64 },
}

impl BoundaryModel {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryModel::ElasticSubcritical { .. } => "elastic-subcritical",
            BoundaryModel::ElasticSupercritical { .. } => "elastic-supercritical",
            BoundaryModel::Sink => "sink",
            BoundaryModel::TotalAbsorption => "total-absorption",
            BoundaryModel::Custom { .. } => "custom",
        }
    }

    pub fn is_elastic(&self) -> bool {
        matches!(
            self,
            BoundaryModel::ElasticSubcritical { .. } | BoundaryModel::ElasticSupercritical { .. }
        )
    }

    /// Checks that the model makes sense for a mode of `regime`.
    pub fn check_regime(&self, m: i64, regime: Regime) -> Result<()> {
        let ok = match (self, regime) {
            (_, Regime::Regular) => true,
            (BoundaryModel::ElasticSubcritical { l }, Regime::Subcritical) => !l.is_nan(),
            (BoundaryModel::ElasticSupercritical { theta }, Regime::Supercritical) => theta.is_finite(),
            (BoundaryModel::Sink, Regime::Supercritical) => true,
            (BoundaryModel::TotalAbsorption, _) => true,
            (BoundaryModel::Custom { ratio }, _) => ratio.is_finite(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ModelRegimeMismatch {
                m,
                model: self.name(),
                regime: regime.name(),
            })
        }
    }
}

/// Per-mode boundary model assignment.
///
/// Modes fall back to the per-regime defaults unless overridden. Regular
/// modes ignore their model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSchedule {
    pub subcritical: BoundaryModel,
    pub supercritical: BoundaryModel,
    pub overrides: BTreeMap<i64, BoundaryModel>,
}

impl ModelSchedule {
    pub fn new(subcritical: BoundaryModel, supercritical: BoundaryModel) -> Self {
        Self {
            subcritical,
            supercritical,
            overrides: BTreeMap::new(),
        }
    }

    /// Elastic everywhere with `l = 0` and `theta = 0`.
    pub fn elastic() -> Self {
        Self::new(
            BoundaryModel::ElasticSubcritical { l: 0.0 },
            BoundaryModel::ElasticSupercritical { theta: 0.0 },
        )
    }

    /// Sink on supercritical modes, regular (`l = 0`) subcritical modes.
    pub fn sink() -> Self {
        Self::new(BoundaryModel::ElasticSubcritical { l: 0.0 }, BoundaryModel::Sink)
    }

    /// Total absorption on every mode in `lo..=hi`.
    pub fn with_absorption_window(mut self, lo: i64, hi: i64) -> Self {
        for m in lo..=hi {
            self.overrides.insert(m, BoundaryModel::TotalAbsorption);
        }
        self
    }

    pub fn with_override(mut self, m: i64, model: BoundaryModel) -> Self {
        self.overrides.insert(m, model);
        self
    }

    pub fn model_for(&self, m: i64, regime: Regime) -> BoundaryModel {
        if let Some(model) = self.overrides.get(&m) {
            return *model;
        }
        match regime {
            Regime::Supercritical => self.supercritical,
            _ => self.subcritical,
        }
    }

    /// Short human-readable summary.
    pub fn describe(&self) -> String {
        let mut out = format!(
            "subcritical={} supercritical={}",
            describe_model(&self.subcritical),
            describe_model(&self.supercritical)
        );
        for (m, model) in &self.overrides {
            out.push_str(&format!(" m{}={}", m, describe_model(model)));
        }
        out
    }
}

fn describe_model(model: &BoundaryModel) -> String {
    match model {
        BoundaryModel::ElasticSubcritical { l } => format!("elastic(l={l})"),
        BoundaryModel::ElasticSupercritical { theta } => format!("elastic(theta={theta})"),
        BoundaryModel::Custom { ratio } => format!("custom(ratio={}{:+}i)", ratio.re, ratio.im),
        other => other.name().to_string(),
    }
}
