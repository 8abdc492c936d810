//! Cartesian parameter sweeps over a base scenario.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::output::{self, Cell, Table};
use crate::run::{solve, RunResult};
use crate::scenario::{Format, Scenario};
use crate::CliError;

pub const SWEEP_COLUMNS: &[&str] =
    &["point", "potential", "beta", "coupling", "p", "mass", "m_lo", "m_hi", "sigma_abs_total", "models", "status"];
pub const SWEEP_MODE_COLUMNS: &[&str] =
    &["point", "m", "regime", "model", "nu_squared", "mu", "re_s", "im_s", "abs_s", "sigma_abs"];

/// One `--vary` axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    /// Parses `name=start:stop:step` or `name=v1,v2,...`.
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let usage = |msg: String| CliError::Usage(format!("--vary `{spec}`: {msg}"));
        let (name, rest) = spec.split_once('=').ok_or_else(|| usage("expected name=start:stop:step".into()))?;
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| usage(format!("`{s}`: {e}")));
        let values = if rest.contains(':') {
            let parts: Vec<&str> = rest.split(':').collect();
            let [start, stop, step] = parts[..] else {
                return Err(usage("ranges need exactly start:stop:step".into()));
            };
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(usage("need step > 0 and stop >= start".into()));
            }
            // index-based to avoid accumulated rounding; tolerate stop landing just short
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            (0..=n).map(|i| start + step * i as f64).collect()
        } else {
            rest.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err(usage("no values".into()));
        }
        Ok(Self { name: name.trim().to_string(), values })
    }
}

/// Cartesian product of the axes; the first axis varies slowest.
pub fn points(base: &Scenario, axes: &[Axis]) -> Result<Vec<Scenario>, CliError> {
    let mut out = vec![base.clone()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.values.len());
        for s in &out {
            for &v in &axis.values {
                let mut s = s.clone();
                s.potential.set(&axis.name, v)?;
                next.push(s);
            }
        }
        out = next;
    }
    Ok(out)
}

#[derive(Debug)]
pub struct SweepResult {
    pub points: Vec<(Scenario, Result<RunResult, CliError>)>,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.points.iter().filter(|(_, r)| r.is_err()).count()
    }

    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(SWEEP_COLUMNS);
        for (i, (scenario, result)) in self.points.iter().enumerate() {
            let mut row = vec![Cell::Int(i as i64)];
            match result {
                Ok(r) => {
                    row.extend(r.summary_row());
                    row.push(Cell::Text("ok".into()));
                }
                Err(e) => {
                    let p = &scenario.potential;
                    row.extend([
                        Cell::Text(p.kind().into()),
                        Cell::Float(p.beta),
                        Cell::Float(p.coupling().unwrap_or(f64::NAN)),
                        Cell::Float(p.p),
                        Cell::Float(p.mass),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text(e.to_string()),
                    ]);
                }
            }
            t.push(row);
        }
        t
    }

    pub fn mode_table(&self) -> Table {
        let mut t = Table::new(SWEEP_MODE_COLUMNS);
        for (i, (_, result)) in self.points.iter().enumerate() {
            let Ok(r) = result else { continue };
            for row in r.mode_table().rows {
                let mut cells = vec![Cell::Int(i as i64)];
                cells.extend(row);
                t.push(cells);
            }
        }
        t
    }

    pub fn write(&self, dir: &Path, format: Format) -> Result<Vec<PathBuf>, CliError> {
        let ext = output::extension(format);
        Ok(vec![
            output::write(dir, &format!("sweep.{ext}"), &self.summary_table().render(format))?,
            output::write(dir, &format!("sweep_modes.{ext}"), &self.mode_table().render(format))?,
        ])
    }
}

/// Runs every point concurrently; output order follows [`points`].
pub fn sweep(base: &Scenario, axes: &[Axis]) -> Result<SweepResult, CliError> {
    let scenarios = points(base, axes)?;
    let results: Vec<_> = scenarios.par_iter().map(solve).collect();
    Ok(SweepResult { points: scenarios.into_iter().zip(results).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_forms() {
        let a = Axis::parse("beta=0:0.9:0.1").unwrap();
        assert_eq!(a.name, "beta");
        assert_eq!(a.values.len(), 10);
        assert!((a.values[9] - 0.9).abs() < 1e-15);
        assert_eq!(Axis::parse("p=1,2.5").unwrap().values, vec![1.0, 2.5]);
        assert!(Axis::parse("beta").is_err());
        assert!(Axis::parse("beta=1:0:0.1").is_err());
        assert!(Axis::parse("beta=0:1").is_err());
    }

    #[test]
    fn product_order_and_failures() {
        let base = Scenario::from_toml("[potential]\nkind = \"inverse-square\"\nbeta = 0.0\ngamma = 0.5\np = 1.0\n[phi]\nvalues = [3.0]\n").unwrap();
        let axes = [Axis::parse("beta=0.1,0.25").unwrap(), Axis::parse("p=1,2").unwrap()];
        let r = sweep(&base, &axes).unwrap();
        let params: Vec<(f64, f64)> = r.points.iter().map(|(s, _)| (s.potential.beta, s.potential.p)).collect();
        assert_eq!(params, vec![(0.1, 1.0), (0.1, 2.0), (0.25, 1.0), (0.25, 2.0)]);
        assert_eq!(r.failures(), 0);

        // |m - beta| = gamma at m = 0
        let critical = [Axis::parse("beta=0.5").unwrap()];
        let r = sweep(&base, &critical).unwrap();
        assert_eq!(r.failures(), 1);
        let table = r.summary_table().csv();
        assert!(table.contains("regime boundary"), "{table}");
    }
}
