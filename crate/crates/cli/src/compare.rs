//! Error norms between two CSV outputs sampled on the same grid.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use tlam_core::table::Table;

use crate::error::{CliError, CliResult};

/// Columns that locate a sample rather than hold a value.
pub const COORDINATE_COLUMNS: [&str; 3] = ["x", "t", "k"];

/// Coordinates closer than this (relative) count as the same grid point.
const GRID_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    Linf,
    /// Root mean square over the grid points.
    L2,
}

impl std::str::FromStr for Norm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "linf" => Ok(Norm::Linf),
            "l2" => Ok(Norm::L2),
            _ => Err(format!("unknown norm `{s}`; expected linf or l2")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColumnError {
    pub column: String,
    pub error: f64,
    pub max_abs: f64,
    /// Coordinates of the largest pointwise difference.
    pub worst_at: Vec<(String, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub norm: Norm,
    pub points: usize,
    pub columns: Vec<ColumnError>,
}

impl CompareReport {
    /// Largest error over all compared columns.
    pub fn max_error(&self) -> f64 {
        self.columns.iter().map(|c| c.error).fold(0.0, f64::max)
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let norm = match self.norm {
            Norm::Linf => "linf",
            Norm::L2 => "l2",
        };
        writeln!(f, "{} points, norm {norm}", self.points)?;
        for c in &self.columns {
            let at: Vec<String> = c.worst_at.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            writeln!(f, "{}: {:e} (worst {:e} at {})", c.column, c.error, c.max_abs, at.join(", "))?;
        }
        Ok(())
    }
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= GRID_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Compares every value column the two tables share.
pub fn compare_tables(a: &Table, b: &Table, norm: Norm) -> CliResult<CompareReport> {
    let coords: Vec<&str> = COORDINATE_COLUMNS
        .iter()
        .copied()
        .filter(|c| a.header.iter().any(|h| h == c))
        .collect();
    for c in COORDINATE_COLUMNS {
        let in_a = a.header.iter().any(|h| h == c);
        let in_b = b.header.iter().any(|h| h == c);
        if in_a != in_b {
            return Err(CliError::GridMismatch(format!("coordinate column `{c}` is in only one file")));
        }
    }
    if a.rows.len() != b.rows.len() {
        return Err(CliError::GridMismatch(format!(
            "{} rows against {}",
            a.rows.len(),
            b.rows.len()
        )));
    }
    let col = |t: &Table, name: &str| t.column(name).expect("header checked");
    let coord_values: Vec<(String, Vec<f64>)> = coords.iter().map(|c| (c.to_string(), col(a, c))).collect();
    for (name, va) in &coord_values {
        let vb = col(b, name);
        if let Some(i) = va.iter().zip(&vb).position(|(x, y)| !same(*x, *y)) {
            return Err(CliError::GridMismatch(format!(
                "row {}: {name} = {} against {}",
                i + 1,
                va[i],
                vb[i]
            )));
        }
    }

    let shared: Vec<&String> = a
        .header
        .iter()
        .filter(|h| !COORDINATE_COLUMNS.contains(&h.as_str()) && b.header.contains(h))
        .collect();
    if shared.is_empty() {
        return Err(CliError::Input("the files share no value column".into()));
    }
    let mut columns = Vec::with_capacity(shared.len());
    for name in shared {
        let (va, vb) = (col(a, name), col(b, name));
        let mut worst = (0.0_f64, 0_usize);
        let mut sum_sq = 0.0;
        for (i, (x, y)) in va.iter().zip(&vb).enumerate() {
            let d = (x - y).abs();
            if d > worst.0 || d.is_nan() {
                worst = (d, i);
            }
            sum_sq += d * d;
        }
        let error = match norm {
            Norm::Linf => worst.0,
            Norm::L2 if va.is_empty() => 0.0,
            Norm::L2 => (sum_sq / va.len() as f64).sqrt(),
        };
        columns.push(ColumnError {
            column: name.clone(),
            error,
            max_abs: worst.0,
            worst_at: coord_values.iter().map(|(c, v)| (c.clone(), v.get(worst.1).copied().unwrap_or(f64::NAN))).collect(),
        });
    }
    Ok(CompareReport {
        norm,
        points: a.rows.len(),
        columns,
    })
}

fn read_table(path: &Path) -> CliResult<Table> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Table::from_csv(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn compare_csv(a: &Path, b: &Path, norm: Norm) -> CliResult<CompareReport> {
    compare_tables(&read_table(a)?, &read_table(b)?, norm)
}
