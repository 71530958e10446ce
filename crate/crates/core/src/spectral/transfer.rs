use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::linalg::Mat2;
use crate::scalar_laminate::{MediumPhase, TemporalLaminate};
use crate::table::Table;

/// Half-width of the band around `|trace| = 2` treated as elliptic.
pub const TRACE_TOLERANCE: f64 = 1e-12;

/// `M = [[0, -k^2 alpha], [1/beta, 0]]`; the state obeys `dY/dT = -M Y`
/// with `Y = (W_hat, V_hat)`.
pub fn system_matrix(k: f64, phase: &MediumPhase) -> Mat2 {
    Mat2::new(0.0, -k * k * phase.alpha, 1.0 / phase.beta, 0.0)
}

/// A real 2x2 propagator over a time span together with what produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferMatrix {
    pub matrix: Mat2,
    pub k: f64,
    pub duration: f64,
    /// Phases in the order they act.
    pub phases: Vec<MediumPhase>,
}

impl TransferMatrix {
    pub fn det(&self) -> f64 {
        self.matrix.det()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// `later * self`: apply `self` first.
    pub fn then(&self, later: &TransferMatrix) -> TransferMatrix {
        let mut phases = self.phases.clone();
        phases.extend_from_slice(&later.phases);
        TransferMatrix {
            matrix: later.matrix * self.matrix,
            k: self.k,
            duration: self.duration + later.duration,
            phases,
        }
    }
}

/// `exp(-M duration)` in closed form, with `theta = |k| c duration`.
pub fn phase_transfer(k: f64, phase: &MediumPhase, duration: f64) -> Result<TransferMatrix> {
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(Error::invalid("duration", format!("must be >= 0, got {duration}")));
    }
    Ok(TransferMatrix {
        matrix: transfer_matrix(k, phase, duration),
        k,
        duration,
        phases: vec![*phase],
    })
}

fn transfer_matrix(k: f64, phase: &MediumPhase, duration: f64) -> Mat2 {
    let ka = k.abs();
    if ka == 0.0 {
        return Mat2::new(1.0, 0.0, -duration / phase.beta, 1.0);
    }
    let z = ka * phase.impedance();
    let (s, c) = (ka * phase.speed() * duration).sin_cos();
    Mat2::new(c, z * s, -s / z, c)
}

/// Product of phase transfers over one period, later phases on the left.
pub fn monodromy(k: f64, lam: &TemporalLaminate) -> TransferMatrix {
    let mut matrix = Mat2::IDENTITY;
    for layer in lam.layers() {
        matrix = transfer_matrix(k, &layer.phase, layer.duration) * matrix;
    }
    TransferMatrix {
        matrix,
        k,
        duration: lam.period(),
        phases: lam.layers().iter().map(|l| l.phase).collect(),
    }
}

/// Propagator from `0` to `t` following the laminate schedule.
pub fn propagator_until(k: f64, lam: &TemporalLaminate, t: f64) -> Mat2 {
    lam.pieces_until(t)
        .iter()
        .fold(Mat2::IDENTITY, |acc, piece| {
            transfer_matrix(k, &piece.phase, piece.duration) * acc
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloquetGrowth {
    pub lambda_max_modulus: f64,
    pub growth_rate: f64,
}

/// Largest Floquet multiplier modulus of a unimodular monodromy matrix from
/// its trace, and `ln` of it per unit time.
pub fn floquet_from_trace(trace: f64, period: f64) -> FloquetGrowth {
    let t = trace.abs();
    if t <= 2.0 + TRACE_TOLERANCE {
        return FloquetGrowth {
            lambda_max_modulus: 1.0,
            growth_rate: 0.0,
        };
    }
    let rho = 0.5 * (t + (t * t - 4.0).sqrt());
    FloquetGrowth {
        lambda_max_modulus: rho,
        growth_rate: rho.ln() / period,
    }
}

pub fn floquet_growth(k: f64, lam: &TemporalLaminate) -> FloquetGrowth {
    floquet_from_trace(monodromy(k, lam).trace(), lam.period())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub k: f64,
    pub lambda_max_modulus: f64,
    pub growth_rate: f64,
}

/// Floquet growth for every `k`, computed in parallel, returned in input order.
pub fn growth_scan(lam: &TemporalLaminate, ks: &[f64]) -> Vec<GrowthRow> {
    ks.par_iter()
        .map(|&k| {
            let g = floquet_growth(k, lam);
            GrowthRow {
                k,
                lambda_max_modulus: g.lambda_max_modulus,
                growth_rate: g.growth_rate,
            }
        })
        .collect()
}

/// Evenly spaced wavenumbers `k_min..=k_max`.
pub fn k_range(k_min: f64, k_max: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 || !(k_max > k_min) {
        return Err(Error::invalid("k range", "need count >= 2 and k_max > k_min"));
    }
    require_positive("count", count as f64)?;
    let step = (k_max - k_min) / (count - 1) as f64;
    Ok((0..count).map(|i| k_min + i as f64 * step).collect())
}

pub fn growth_table(rows: &[GrowthRow]) -> Table {
    let mut t = Table::new(["k", "lambda_max_modulus", "growth_rate"]);
    for r in rows {
        t.push(vec![r.k, r.lambda_max_modulus, r.growth_rate]);
    }
    t
}
