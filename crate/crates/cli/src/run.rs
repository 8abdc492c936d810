//! Solving a scenario and writing its tables.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use abscat::channel::{
    amplitude, amplitude_from_smatrix, classify_mode, flux_line_smatrix, solve_channel, AmplitudeOptions, ChannelSolution,
    PHI_MIN,
};
use abscat::quartic::{quartic_smatrix, QuarticSolution};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::output::{self, plot_data, Cell, Table};
use crate::scenario::{Format, Scenario};
use crate::CliError;

pub const MODE_COLUMNS: &[&str] = &["m", "regime", "model", "nu_squared", "mu", "re_s", "im_s", "abs_s", "sigma_abs"];
pub const SUMMARY_COLUMNS: &[&str] =
    &["potential", "beta", "coupling", "p", "mass", "m_lo", "m_hi", "sigma_abs_total", "models"];

#[derive(Debug, Clone, PartialEq)]
pub struct ModeRow {
    pub m: i64,
    pub regime: &'static str,
    pub model: &'static str,
    pub nu_squared: f64,
    pub mu: f64,
    pub s_matrix: Complex64,
    pub sigma_abs: f64,
}

impl ModeRow {
    fn from_channel(sol: &ChannelSolution) -> Self {
        Self {
            m: sol.mode.m,
            regime: sol.mode.regime.name(),
            model: sol.model.map_or("none", |m| m.name()),
            nu_squared: sol.mode.nu_squared,
            mu: sol.mode.mu,
            s_matrix: sol.s_matrix,
            sigma_abs: sol.sigma_abs,
        }
    }

    fn from_quartic(beta: f64, sol: &QuarticSolution) -> Self {
        let nu = (sol.m as f64 - beta).abs();
        Self {
            m: sol.m,
            regime: "quartic",
            model: sol.model.name(),
            nu_squared: nu * nu,
            mu: nu,
            s_matrix: sol.s_matrix,
            sigma_abs: sol.sigma_abs,
        }
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Int(self.m),
            Cell::Text(self.regime.into()),
            Cell::Text(self.model.into()),
            Cell::Float(self.nu_squared),
            Cell::Float(self.mu),
            Cell::Float(self.s_matrix.re),
            Cell::Float(self.s_matrix.im),
            Cell::Float(self.s_matrix.norm()),
            Cell::Float(self.sigma_abs),
        ]
    }
}

/// Everything a run produces, before formatting.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub scenario: Scenario,
    pub mode_range: (i64, i64),
    pub modes: Vec<ModeRow>,
    pub total_abs: f64,
    pub models: String,
    pub differential: Vec<(f64, f64)>,
}

fn solver_error(m: i64, e: abscat::Error) -> CliError {
    CliError::Solver(format!("mode m = {m}: {e}"))
}

/// Solves every mode of the scenario. Modes run concurrently; results, and
/// the reported error if several modes fail, follow ascending `m`.
pub fn solve(scenario: &Scenario) -> Result<RunResult, CliError> {
    let (lo, hi) = scenario.mode_range()?;
    let phis = scenario.phi.angles()?;
    let beta = scenario.potential.beta;

    let (modes, models, differential) = if let Some(cfg) = scenario.potential.inverse_square() {
        let cfg = cfg?;
        let schedule = scenario.models.inverse_square()?;
        let solutions = (lo..=hi)
            .into_par_iter()
            .map(|m| {
                let mode = classify_mode(&cfg, m).map_err(|e| solver_error(m, e))?;
                solve_channel(&cfg, &mode, schedule.model_for(m, mode.regime)).map_err(|e| solver_error(m, e))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let differential = phis
            .iter()
            .map(|&phi| {
                let f = amplitude(&cfg, &solutions, phi).map_err(|e| CliError::Solver(format!("phi = {phi}: {e}")))?;
                Ok((phi, f.norm_sqr()))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        (solutions.iter().map(ModeRow::from_channel).collect::<Vec<_>>(), schedule.describe(), differential)
    } else {
        let cfg = scenario.potential.inverse_quartic().expect("inverse-quartic")?;
        let schedule = scenario.models.inverse_quartic()?;
        let solutions = (lo..=hi)
            .into_par_iter()
            .map(|m| quartic_smatrix(&cfg, m, schedule.model_for(beta, m)).map_err(|e| solver_error(m, e)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let smatrix: BTreeMap<i64, Complex64> = solutions.iter().map(|s| (s.m, s.s_matrix)).collect();
        // modes outside the solved range are taken as flux-line modes
        let options = AmplitudeOptions { phi_min: PHI_MIN, m_tail: 0.0 };
        let differential = phis
            .iter()
            .map(|&phi| {
                let f = amplitude_from_smatrix(beta, cfg.p, &smatrix, phi, &options, |m| Ok(flux_line_smatrix(beta, m)))
                    .map_err(|e| CliError::Solver(format!("phi = {phi}: {e}")))?;
                Ok((phi, f.norm_sqr()))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        (
            solutions.iter().map(|s| ModeRow::from_quartic(beta, s)).collect(),
            schedule.describe(),
            differential,
        )
    };

    let total_abs = modes.iter().fold(0.0, |acc, r| acc + r.sigma_abs);
    Ok(RunResult { scenario: scenario.clone(), mode_range: (lo, hi), modes, total_abs, models, differential })
}

impl RunResult {
    pub fn mode_table(&self) -> Table {
        let mut t = Table::new(MODE_COLUMNS);
        for row in &self.modes {
            t.push(row.cells());
        }
        t
    }

    pub fn summary_row(&self) -> Vec<Cell> {
        let pot = &self.scenario.potential;
        vec![
            Cell::Text(pot.kind().into()),
            Cell::Float(pot.beta),
            Cell::Float(pot.coupling().unwrap_or(f64::NAN)),
            Cell::Float(pot.p),
            Cell::Float(pot.mass),
            Cell::Int(self.mode_range.0),
            Cell::Int(self.mode_range.1),
            Cell::Float(self.total_abs),
            Cell::Text(self.models.clone()),
        ]
    }

    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(SUMMARY_COLUMNS);
        t.push(self.summary_row());
        t
    }

    /// Writes `modes.<ext>`, `summary.<ext>`, `dsigma.dat` and the resolved
    /// `scenario.toml` into `dir`.
    pub fn write(&self, dir: &Path, format: Format) -> Result<Vec<PathBuf>, CliError> {
        let ext = output::extension(format);
        let mut resolved = self.scenario.clone();
        resolved.modes.range = crate::scenario::ModeRange::Bounds([self.mode_range.0, self.mode_range.1]);
        resolved.output.format = format;
        resolved.output.dir = dir.to_path_buf();
        Ok(vec![
            output::write(dir, "scenario.toml", &resolved.to_toml())?,
            output::write(dir, &format!("modes.{ext}"), &self.mode_table().render(format))?,
            output::write(dir, &format!("summary.{ext}"), &self.summary_table().render(format))?,
            output::write(dir, "dsigma.dat", &plot_data(&self.differential))?,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(text: &str) -> Scenario {
        Scenario::from_toml(text).unwrap()
    }

    #[test]
    fn sink_scenario_total() {
        let r = solve(&scenario("[potential]\nkind = \"inverse-square\"\nbeta = 0.3\ngamma = 0.5\np = 1.0\n")).unwrap();
        let supercritical = r.modes.iter().filter(|m| m.regime == "supercritical").count();
        assert_eq!(supercritical, 1);
        let expected = 1.0 - (-0.8 * std::f64::consts::PI).exp();
        assert!((r.total_abs - expected).abs() < 1e-12);
        assert!((r.total_abs - 0.9190).abs() < 1e-4);
    }

    #[test]
    fn elastic_scenario_absorbs_nothing() {
        let r = solve(&scenario(
            "[potential]\nkind = \"inverse-square\"\nbeta = 0.3\ngamma = 0.5\np = 1.0\n[models]\nsupercritical = { kind = \"elastic-supercritical\", theta = 0.4 }\n",
        ))
        .unwrap();
        assert_eq!(r.total_abs, 0.0);
    }

    #[test]
    fn pure_flux_line_window() {
        let r = solve(&scenario(
            "[potential]\nkind = \"inverse-square\"\nbeta = 0.3\ngamma = 0.0\np = 2.0\n[models]\nabsorption_window = [0, 1]\n",
        ))
        .unwrap();
        assert_eq!(r.total_abs, 2.0 / 2.0);
    }

    #[test]
    fn quartic_scenario_runs() {
        let r = solve(&scenario(
            "[potential]\nkind = \"inverse-quartic\"\nbeta = 0.2\nlambda = 1.0\np = 1.0\n[modes]\nrange = [-2, 2]\n[phi]\nvalues = [1.0, 3.0]\n",
        ))
        .unwrap();
        assert_eq!(r.modes.len(), 5);
        assert!(r.total_abs > 0.0);
        assert!(r.modes.iter().all(|m| m.s_matrix.norm() <= 1.0 + 1e-9));
        assert!(r.differential.iter().all(|(_, d)| d.is_finite() && *d > 0.0));
    }

    #[test]
    fn solver_errors_carry_the_mode() {
        // sink on a subcritical mode
        let err = solve(&scenario(
            "[potential]\nkind = \"inverse-square\"\nbeta = 0.3\ngamma = 0.5\np = 1.0\n[models]\nsubcritical = { kind = \"sink\" }\n",
        ))
        .unwrap_err();
        assert!(matches!(&err, CliError::Solver(msg) if msg.contains("mode m = 1")), "{err}");
    }
}
