use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::stationary::jump_matrix;
use crate::error::{require_positive, Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::wave_terms::{dalembert, Polarization, Profile, SpatialTerm, WaveField};

/// Terms whose coefficient falls below this after an interface are dropped.
pub const CASCADE_PRUNE_TOLERANCE: f64 = 1e-14;

/// Which displacement components start nonzero. Initial velocities vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CascadeCase {
    /// `v(x, 0) = phi`, `u(x, 0) = 0`.
    Transverse,
    /// `u(x, 0) = psi`, `v(x, 0) = 0`.
    Longitudinal,
    /// Both components start displaced.
    Both,
}

impl CascadeCase {
    /// Cases are numbered 1 to 3 in the order transverse, longitudinal, both.
    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            1 => Ok(CascadeCase::Transverse),
            2 => Ok(CascadeCase::Longitudinal),
            3 => Ok(CascadeCase::Both),
            _ => Err(Error::invalid("case", format!("must be 1, 2 or 3, got {i}"))),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            CascadeCase::Transverse => 1,
            CascadeCase::Longitudinal => 2,
            CascadeCase::Both => 3,
        }
    }

    pub fn has_transverse(self) -> bool {
        matches!(self, CascadeCase::Transverse | CascadeCase::Both)
    }

    pub fn has_longitudinal(self) -> bool {
        matches!(self, CascadeCase::Longitudinal | CascadeCase::Both)
    }
}

/// Piecewise D'Alembert solution across thin gyroscopic layers at `t = nT`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CascadeConfig {
    pub case: CascadeCase,
    pub phi: Profile,
    pub psi: Profile,
    pub alpha: f64,
    pub period: f64,
    pub n_intervals: usize,
    pub c1: f64,
    pub c2: f64,
    /// `alpha d` of each gyroscopic layer; `pi` gives the largest jump.
    #[serde(default = "default_phase")]
    pub interface_phase: f64,
}

fn default_phase() -> f64 {
    PI
}

impl CascadeConfig {
    pub fn new(case: CascadeCase, profile: Profile, alpha: f64, period: f64, n_intervals: usize, c1: f64, c2: f64) -> Self {
        CascadeConfig {
            case,
            phi: profile,
            psi: profile,
            alpha,
            period,
            n_intervals,
            c1,
            c2,
            interface_phase: PI,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("period", self.period)?;
        require_positive("c1", self.c1)?;
        require_positive("c2", self.c2)?;
        if self.n_intervals == 0 {
            return Err(Error::invalid("n_intervals", "at least one interval required"));
        }
        if self.alpha == 0.0 || !self.alpha.is_finite() {
            return Err(Error::DivisionByZero);
        }
        if !self.interface_phase.is_finite() {
            return Err(Error::invalid("interface_phase", "must be finite"));
        }
        Ok(())
    }
}

/// Exact field on `[t_start, t_end)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CascadeInterval {
    pub t_start: f64,
    pub t_end: f64,
    pub field: WaveField,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CascadeSolution {
    pub intervals: Vec<CascadeInterval>,
}

impl CascadeSolution {
    /// Interval holding `t`; interface instants belong to the later one,
    /// and the final end time to the last.
    pub fn interval_at(&self, t: f64) -> Option<&CascadeInterval> {
        let last = self.intervals.last()?;
        if t == last.t_end {
            return Some(last);
        }
        self.intervals.iter().find(|iv| iv.t_start <= t && t < iv.t_end)
    }

    /// `(u, v)` at `(x, t)`; zero outside the solved time range.
    pub fn eval(&self, x: f64, t: f64) -> Result<Vec2> {
        let Some(iv) = self.interval_at(t) else {
            return Ok(Vec2::ZERO);
        };
        Ok(Vec2::new(
            iv.field.eval(x, t, Polarization::Longitudinal)?,
            iv.field.eval(x, t, Polarization::Transverse)?,
        ))
    }

    /// `(u_t, v_t)` at `(x, t)`.
    pub fn velocity(&self, x: f64, t: f64) -> Result<Vec2> {
        let Some(iv) = self.interval_at(t) else {
            return Ok(Vec2::ZERO);
        };
        let d = iv.field.time_derivative();
        Ok(Vec2::new(
            d.eval(x, t, Polarization::Longitudinal)?,
            d.eval(x, t, Polarization::Transverse)?,
        ))
    }
}

fn scaled(terms: &[SpatialTerm], factor: f64) -> impl Iterator<Item = SpatialTerm> + '_ {
    terms.iter().filter(move |_| factor != 0.0).map(move |p| SpatialTerm {
        coefficient: p.coefficient * factor,
        ..*p
    })
}

/// Jumped displacement and unchanged velocity re-seeded as free waves at
/// time `t`.
fn reseed(field: &WaveField, jump: &Mat2, t: f64, c1: f64, c2: f64) -> Result<WaveField> {
    let vel = field.time_derivative();
    let (u, v) = (Polarization::Longitudinal, Polarization::Transverse);
    let (u_disp, v_disp) = (field.snapshot(t, u), field.snapshot(t, v));
    let (u_vel, v_vel) = (vel.snapshot(t, u), vel.snapshot(t, v));
    let j = jump.0;

    let mut new_u = u_disp.clone();
    new_u.extend(scaled(&u_vel, j[0][0]));
    new_u.extend(scaled(&v_vel, j[0][1]));
    let mut new_v = v_disp.clone();
    new_v.extend(scaled(&u_vel, j[1][0]));
    new_v.extend(scaled(&v_vel, j[1][1]));

    Ok(dalembert(&new_u, &u_vel, c1, t, u)? + dalembert(&new_v, &v_vel, c2, t, v)?)
}

/// Cauchy problem for the chiral rod whose gyricity acts only on thin layers
/// at `t = nT`, each modelled as the displacement jump
/// `alpha^{-1} R (I - M^T(phase)) U_t(nT)` with continuous velocity.
///
/// Every interval holds an exact finite term sum, so the profiles must
/// admit antiderivatives inside their family.
pub fn cascade_solve(cfg: &CascadeConfig) -> Result<CascadeSolution> {
    cfg.validate()?;
    let jump = jump_matrix(cfg.alpha, cfg.interface_phase)?;
    let seed = |p: Profile| {
        [SpatialTerm {
            coefficient: 1.0,
            shift: 0.0,
            profile: p,
        }]
    };
    let mut field = WaveField::empty();
    if cfg.case.has_longitudinal() {
        field = field + dalembert(&seed(cfg.psi), &[], cfg.c1, 0.0, Polarization::Longitudinal)?;
    }
    if cfg.case.has_transverse() {
        field = field + dalembert(&seed(cfg.phi), &[], cfg.c2, 0.0, Polarization::Transverse)?;
    }

    let mut intervals = Vec::with_capacity(cfg.n_intervals);
    for n in 0..cfg.n_intervals {
        let t_start = n as f64 * cfg.period;
        if n > 0 {
            field = reseed(&field, &jump, t_start, cfg.c1, cfg.c2)?.prune(CASCADE_PRUNE_TOLERANCE);
        }
        intervals.push(CascadeInterval {
            t_start,
            t_end: t_start + cfg.period,
            field: field.clone(),
        });
    }
    Ok(CascadeSolution { intervals })
}
