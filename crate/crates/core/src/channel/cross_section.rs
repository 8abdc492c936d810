use std::collections::BTreeMap;

use super::amplitude::amplitude;
use super::config::{classify_mode, ScatteringConfig};
use super::model::ModelSchedule;
use super::solve::{solve_channel, ChannelSolution};
use crate::error::{Error, Result};

/// Absorption and elastic cross sections over a range of modes.
#[derive(Debug, Clone)]
pub struct CrossSectionReport {
    pub mode_range: (i64, i64),
    pub solutions: Vec<ChannelSolution>,
    /// `sigma_abs` per mode.
    pub partial_abs: BTreeMap<i64, f64>,
    /// Sum over `mode_range`, accumulated in ascending `m`.
    pub total_abs: f64,
    /// `(phi, |f(phi)|^2)` pairs.
    pub differential_elastic: Vec<(f64, f64)>,
}

/// Solves every mode in `lo..=hi` and assembles the cross sections.
///
/// The range must contain every non-regular mode; otherwise the tail sum
/// would silently treat a singular channel as free.
pub fn cross_sections(
    cfg: &ScatteringConfig,
    schedule: &ModelSchedule,
    range: (i64, i64),
    phis: &[f64],
) -> Result<CrossSectionReport> {
    cfg.validate()?;
    let (lo, hi) = range;
    if lo > hi {
        return Err(Error::InvalidConfig(format!("empty mode range {lo}..={hi}")));
    }
    if let Some((nlo, nhi)) = cfg.non_regular_range() {
        if nlo < lo {
            return Err(Error::IncompleteRange { m: nlo, lo, hi });
        }
        if nhi > hi {
            return Err(Error::IncompleteRange { m: nhi, lo, hi });
        }
    }

    let mut solutions = Vec::with_capacity((hi - lo + 1) as usize);
    for m in lo..=hi {
        let mode = classify_mode(cfg, m)?;
        let model = schedule.model_for(m, mode.regime);
        solutions.push(solve_channel(cfg, &mode, model)?);
    }

    let partial_abs: BTreeMap<i64, f64> = solutions.iter().map(|s| (s.mode.m, s.sigma_abs)).collect();
    let total_abs = partial_abs.values().fold(0.0, |acc, s| acc + s);

    let mut differential_elastic = Vec::with_capacity(phis.len());
    for &phi in phis {
        let f = amplitude(cfg, &solutions, phi)?;
        differential_elastic.push((phi, f.norm_sqr()));
    }

    Ok(CrossSectionReport {
        mode_range: range,
        solutions,
        partial_abs,
        total_abs,
        differential_elastic,
    })
}
