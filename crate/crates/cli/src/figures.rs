//! Scenario sets that regenerate the data behind each published figure,
//! with the parameters of its caption.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::run::{run, RunManifest};
use crate::scenario::Scenario;

pub const FIGURES: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 10];

fn fig2_laminate() -> Value {
    json!({"alpha1": 1.0, "beta1": 1.0, "t1": 1.0, "alpha2": 4.0, "beta2": 1.0, "t2": 0.5})
}

fn fig3_laminate() -> Value {
    json!({"alpha1": 8.0, "beta1": 0.7, "t1": 2.0, "alpha2": 3.0, "beta2": 0.5906, "t2": 3.0})
}

fn rod(gamma: f64, t_end: f64, half_width: f64, ut: f64) -> Value {
    let velocity = if ut == 0.0 {
        json!({"type": "zero"})
    } else {
        json!({"type": "constant", "value": ut})
    };
    let mut doc = json!({
        "kind": "chiral_fd",
        "params": {
            "lambda": 0.5,
            "gamma": gamma,
            "dx": 0.02,
            "cfl": 0.5,
            "x_min": -half_width,
            "x_max": half_width,
            "initial": {
                "u0": {"type": "gaussian", "a": 1.0},
                "v0": {"type": "gaussian", "a": 1.0},
                "ut0": velocity,
                "vt0": velocity
            },
            "t_end": t_end,
            "record_every": 10,
            "x_stride": 2
        }
    });
    if ut == 0.0 {
        // no stationary comparison at small gyricity
        doc["outputs"] = json!([
            {"format": "csv", "path": "field.csv", "artifact": "field"},
            {"format": "csv", "path": "energy.csv", "artifact": "energy"},
            {"format": "json", "path": "record.json", "artifact": "record"}
        ]);
    }
    doc
}

fn chiral_diagram(case: u32) -> Value {
    json!({
        "kind": "characteristics",
        "params": {"variant": "chiral", "c1": 1.0, "c2": 1.0 / 3.0, "period": 1.0, "n": 4, "case": case}
    })
}

fn cascade(case: u32) -> Value {
    json!({
        "kind": "chiral_cascade",
        "params": {
            "case": case,
            "phi": {"family": "gaussian", "a": 10.0},
            "psi": {"family": "gaussian", "a": 10.0},
            "alpha": 10.0,
            "period": 1.0,
            "n_intervals": 3,
            "c1": 1.0,
            "c2": 1.0 / 3.0,
            "x": {"start": -6.0, "end": 6.0, "count": 241},
            "t_count": 61
        }
    })
}

/// Named scenario documents for figure `n`.
pub fn figure_scenarios(n: u32) -> CliResult<Vec<(&'static str, Value)>> {
    let grid = json!({"n": 1024, "half_width": 120.0});
    let six_cells = json!({"start": 0.0, "end": 30.0, "count": 31});
    Ok(match n {
        2 => vec![
            (
                "diagram",
                json!({
                    "kind": "characteristics",
                    "params": {"variant": "scalar", "laminate": fig2_laminate(), "seeds": [0.0], "n_interfaces": 6}
                }),
            ),
            (
                "comb",
                json!({
                    "kind": "comb_resonance",
                    "params": {"alpha1": 1.0, "beta1": 1.0, "alpha2": 4.0, "beta2": 1.0, "half_period": 2.0, "n_max": 5}
                }),
            ),
        ],
        3 => vec![
            (
                "terms",
                json!({
                    "kind": "scalar_laminate",
                    "params": {
                        "laminate": fig3_laminate(),
                        "displacement": {"family": "gaussian", "a": 0.1},
                        "grid": grid,
                        "times": six_cells,
                        "edge_cells": 6
                    }
                }),
            ),
            (
                "spectral",
                json!({
                    "kind": "spectral_cauchy",
                    "params": {"laminate": fig3_laminate(), "a": 0.1, "grid": grid, "times": six_cells}
                }),
            ),
            (
                "growth",
                json!({
                    "kind": "spectral_growth_scan",
                    "params": {"laminate": fig3_laminate(), "k_min": 0.0, "k_max": 4.0, "count": 401}
                }),
            ),
        ],
        4 => vec![("rod", rod(100.0, 5.0, 12.0, 1.0))],
        5 => vec![("rod", rod(0.5, 10.0, 15.0, 0.0))],
        7 => vec![("diagram", chiral_diagram(1))],
        8 => vec![("cascade", cascade(1))],
        9 => vec![("diagram_case2", chiral_diagram(2)), ("diagram_case3", chiral_diagram(3))],
        10 => vec![("cascade_case2", cascade(2)), ("cascade_case3", cascade(3))],
        _ => {
            return Err(CliError::Input(format!(
                "no data for figure {n}; available: {}",
                FIGURES.map(|f| f.to_string()).join(", ")
            )))
        }
    })
}

/// Runs every scenario of figure `n` into `out_dir/<name>/`, next to a copy
/// of the scenario document.
pub fn reproduce_figure(n: u32, out_dir: &Path) -> CliResult<Vec<(&'static str, RunManifest)>> {
    let mut done = Vec::new();
    for (name, doc) in figure_scenarios(n)? {
        let text = serde_json::to_string_pretty(&doc).expect("literal document") + "\n";
        let scenario = Scenario::from_json(&text)?;
        let dir = out_dir.join(name);
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        let path = dir.join("scenario.json");
        fs::write(&path, &text).map_err(|e| CliError::io(&path, e))?;
        done.push((name, run(&scenario, &dir)?));
    }
    Ok(done)
}
