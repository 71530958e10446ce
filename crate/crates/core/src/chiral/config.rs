use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Gyricity held constant on `[t_start, t_end)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GyricityInterval {
    pub t_start: f64,
    pub t_end: f64,
    pub gamma: f64,
}

/// Gyricity added on the spatial strip `[x_start, x_end]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GyricityStrip {
    pub x_start: f64,
    pub x_end: f64,
    pub gamma: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// `U = 0` at both ends (finite rod).
    FixedZero,
    /// The end nodes feel no elastic force; used with domains large enough
    /// that nothing reaches them.
    #[default]
    Window,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// Both gyroscopic terms act.
    #[default]
    Full,
    /// `u` evolves freely and only forces `v` through `-gamma u_t`.
    IncidentDriven,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterfaceRule {
    /// Plain equations of motion: velocity is continuous when gyricity
    /// switches.
    #[default]
    Native,
    /// When a schedule interval of gyricity `gamma` and length `d` ends, the
    /// momentum `M(gamma d) U_t` is carried over as the new velocity.
    MomentumContinuous,
}

/// Dimensionless chiral FD setup. Physical speeds are `c1` and
/// `c2 = lambda c1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiralConfig {
    #[serde(default = "one")]
    pub c1: f64,
    pub lambda: f64,
    /// Gyricity used when `schedule` is empty.
    #[serde(default)]
    pub gamma: f64,
    /// When non-empty, replaces `gamma`; times outside every interval have
    /// zero gyricity.
    #[serde(default)]
    pub schedule: Vec<GyricityInterval>,
    #[serde(default)]
    pub strips: Vec<GyricityStrip>,
    pub dx: f64,
    pub dt: f64,
    pub x_min: f64,
    pub x_max: f64,
    #[serde(default)]
    pub boundary: Boundary,
    #[serde(default)]
    pub coupling: Coupling,
    #[serde(default)]
    pub interface_rule: InterfaceRule,
}

fn one() -> f64 {
    1.0
}

impl ChiralConfig {
    /// Uniform-gyricity configuration with `dt` set from the CFL number.
    pub fn uniform(lambda: f64, gamma: f64, dx: f64, cfl: f64, x_min: f64, x_max: f64) -> Self {
        let mut cfg = ChiralConfig {
            c1: 1.0,
            lambda,
            gamma,
            schedule: Vec::new(),
            strips: Vec::new(),
            dx,
            dt: 0.0,
            x_min,
            x_max,
            boundary: Boundary::Window,
            coupling: Coupling::Full,
            interface_rule: InterfaceRule::Native,
        };
        cfg.dt = cfl * dx / cfg.max_speed();
        cfg
    }

    pub fn c2(&self) -> f64 {
        self.lambda * self.c1
    }

    pub fn max_speed(&self) -> f64 {
        self.c1 * self.lambda.max(1.0)
    }

    pub fn cfl_ratio(&self) -> f64 {
        self.max_speed() * self.dt / self.dx
    }

    /// Number of grid cells; the grid has one more node.
    pub fn cells(&self) -> usize {
        ((self.x_max - self.x_min) / self.dx).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("c1", self.c1)?;
        require_positive("lambda", self.lambda)?;
        if self.lambda > 1.0 {
            return Err(Error::invalid("lambda", format!("must lie in (0, 1], got {}", self.lambda)));
        }
        if !self.gamma.is_finite() {
            return Err(Error::invalid("gamma", "must be finite"));
        }
        require_positive("dx", self.dx)?;
        require_positive("dt", self.dt)?;
        if !(self.x_max > self.x_min) {
            return Err(Error::invalid("x_max", "must exceed x_min"));
        }
        if self.cells() < 2 {
            return Err(Error::invalid("dx", "domain must hold at least two cells"));
        }
        let cells = (self.x_max - self.x_min) / self.dx;
        if (cells - cells.round()).abs() > 1e-6 * cells.max(1.0) {
            return Err(Error::invalid("dx", "must divide the domain length"));
        }
        let ratio = self.cfl_ratio();
        if ratio > 1.0 + 1e-12 {
            return Err(Error::CflViolation {
                dt: self.dt,
                dx: self.dx,
                ratio,
            });
        }
        let mut last_end = f64::NEG_INFINITY;
        for (i, iv) in self.schedule.iter().enumerate() {
            if !(iv.t_end > iv.t_start) || !iv.gamma.is_finite() {
                return Err(Error::invalid("schedule", format!("interval {i} is empty or non-finite")));
            }
            if iv.t_start < last_end {
                return Err(Error::invalid("schedule", format!("interval {i} overlaps or is out of order")));
            }
            last_end = iv.t_end;
        }
        for (i, s) in self.strips.iter().enumerate() {
            if !(s.x_end > s.x_start) || !s.gamma.is_finite() {
                return Err(Error::invalid("strips", format!("strip {i} is empty or non-finite")));
            }
        }
        Ok(())
    }

    /// Schedule interval containing `t`, if any.
    pub fn interval_at(&self, t: f64) -> Option<&GyricityInterval> {
        self.schedule
            .iter()
            .find(|iv| iv.t_start <= t && t < iv.t_end)
    }

    /// Time-dependent part of the gyricity.
    pub fn temporal_gamma(&self, t: f64) -> f64 {
        if self.schedule.is_empty() {
            self.gamma
        } else {
            self.interval_at(t).map_or(0.0, |iv| iv.gamma)
        }
    }

    /// Space-dependent part of the gyricity.
    pub fn strip_gamma(&self, x: f64) -> f64 {
        self.strips
            .iter()
            .filter(|s| s.x_start <= x && x <= s.x_end)
            .map(|s| s.gamma)
            .sum()
    }

    /// Strip gyricity averaged over the grid cell `[x - dx/2, x + dx/2]`, so
    /// that the discrete strip strength `sum gamma_i dx` equals
    /// `gamma (x_end - x_start)` whatever the alignment.
    pub fn strip_gamma_cell(&self, x: f64, dx: f64) -> f64 {
        let (lo, hi) = (x - 0.5 * dx, x + 0.5 * dx);
        self.strips
            .iter()
            .map(|s| s.gamma * (hi.min(s.x_end) - lo.max(s.x_start)).max(0.0) / dx)
            .sum()
    }
}
