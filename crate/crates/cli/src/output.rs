//! Table rendering. Every float is written as `{:.16e}` (17 significant
//! digits) so identical inputs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::scenario::Format;
use crate::CliError;

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float(*v),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_finite() => float(*v),
            // JSON has no infinities
            Cell::Float(v) => serde_json::to_string(&v.to_string()).unwrap(),
            Cell::Text(s) => serde_json::to_string(s).unwrap(),
        }
    }
}

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    pub fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of objects, one per row, keys in column order.
    pub fn json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("  {");
            for (j, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{name}\": {}", cell.json());
            }
            out.push('}');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }
}

/// Whitespace-separated `phi dsigma/dphi` columns for plotting tools.
pub fn plot_data(samples: &[(f64, f64)]) -> String {
    let mut out = String::from("# phi dsigma_dphi\n");
    for (phi, d) in samples {
        let _ = writeln!(out, "{} {}", float(*phi), float(*d));
    }
    out
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new(&["m", "x", "name"]);
        t.push(vec![Cell::Int(-1), Cell::Float(0.1), Cell::Text("a,b".into())]);
        t.push(vec![Cell::Int(2), Cell::Float(-3.0), Cell::Text("sink".into())]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            table().csv(),
            "m,x,name\n-1,1.0000000000000001e-1,\"a,b\"\n2,-3.0000000000000000e0,sink\n"
        );
    }

    #[test]
    fn json_is_valid_and_ordered() {
        let text = table().json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[1]["name"], "sink");
        assert_eq!(v[0]["x"].as_f64(), Some(0.1));
        assert!(text.find("\"m\"").unwrap() < text.find("\"x\"").unwrap());
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-300] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
    }
}
