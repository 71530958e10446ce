use serde::{Deserialize, Serialize};

use super::config::{Boundary, ChiralConfig, Coupling, InterfaceRule};
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::table::Table;
use crate::wave_terms::{Profile, SpatialTerm};

/// One initial-data component: a constant plus profile terms, or samples.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialProfile {
    Terms {
        constant: f64,
        terms: Vec<SpatialTerm>,
    },
    Samples(Vec<f64>),
}

impl InitialProfile {
    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(c: f64) -> Self {
        InitialProfile::Terms {
            constant: c,
            terms: Vec::new(),
        }
    }

    /// `scale * p(x - center)`.
    pub fn profile(p: Profile, scale: f64, center: f64) -> Self {
        InitialProfile::Terms {
            constant: 0.0,
            terms: vec![SpatialTerm {
                coefficient: scale,
                shift: -center,
                profile: p,
            }],
        }
    }

    /// Smoothed unit step `(1 - erf(sqrt(a) (x - center)))/2`: 1 on the left.
    pub fn smoothed_step(a: f64, center: f64) -> Result<Self> {
        let erf_like = Profile::erf_like(a)?;
        // erf_like(y) = sqrt(pi)/(2 sqrt(a)) erf(sqrt(a) y)
        let scale = -(a / std::f64::consts::PI).sqrt();
        Ok(InitialProfile::Terms {
            constant: 0.5,
            terms: vec![SpatialTerm {
                coefficient: scale,
                shift: -center,
                profile: erf_like,
            }],
        })
    }

    fn sample(&self, xs: &[f64]) -> Result<Vec<f64>> {
        match self {
            InitialProfile::Samples(s) => {
                if s.len() != xs.len() {
                    return Err(Error::invalid(
                        "samples",
                        format!("expected {} values, got {}", xs.len(), s.len()),
                    ));
                }
                Ok(s.clone())
            }
            InitialProfile::Terms { constant, terms } => xs
                .iter()
                .map(|&x| {
                    terms
                        .iter()
                        .try_fold(*constant, |acc, t| Ok(acc + t.eval(x)?))
                })
                .collect(),
        }
    }
}

/// Displacements and velocities at `t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralInitial {
    pub u0: InitialProfile,
    pub v0: InitialProfile,
    pub ut0: InitialProfile,
    pub vt0: InitialProfile,
}

impl ChiralInitial {
    pub fn at_rest(u0: InitialProfile, v0: InitialProfile) -> Self {
        ChiralInitial {
            u0,
            v0,
            ut0: InitialProfile::zero(),
            vt0: InitialProfile::zero(),
        }
    }
}

/// Two consecutive time levels on the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralState {
    pub t: f64,
    pub dt: f64,
    pub dx: f64,
    pub x: Vec<f64>,
    pub u_prev: Vec<f64>,
    pub v_prev: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl ChiralState {
    /// State with zero velocity: both levels equal.
    pub fn at_rest(x: Vec<f64>, u: Vec<f64>, v: Vec<f64>, dt: f64) -> Self {
        let dx = if x.len() > 1 { x[1] - x[0] } else { 1.0 };
        ChiralState {
            t: 0.0,
            dt,
            dx,
            x,
            u_prev: u.clone(),
            v_prev: v.clone(),
            u,
            v,
        }
    }
}

/// Kinetic and potential energy of the rod between the two stored levels.
///
/// `K` uses the one-sided velocity `(U - U_prev)/dt` with trapezoid
/// weights; `P` pairs neighbouring differences of both levels, the form the
/// leapfrog scheme conserves exactly on a fixed-end rod.
pub fn rod_energy(state: &ChiralState, c1: f64, c2: f64) -> (f64, f64) {
    let n = state.u.len();
    if n < 2 {
        return (0.0, 0.0);
    }
    let (dt, dx) = (state.dt, state.dx);
    let mut k = 0.0;
    for i in 0..n {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        let du = (state.u[i] - state.u_prev[i]) / dt;
        let dv = (state.v[i] - state.v_prev[i]) / dt;
        k += w * (du * du + dv * dv);
    }
    let mut p = 0.0;
    for i in 0..n - 1 {
        let a = (state.u[i + 1] - state.u[i]) * (state.u_prev[i + 1] - state.u_prev[i]);
        let b = (state.v[i + 1] - state.v[i]) * (state.v_prev[i + 1] - state.v_prev[i]);
        p += c1 * c1 * a + c2 * c2 * b;
    }
    (0.5 * k * dx, 0.5 * p / dx)
}

/// Leapfrog integrator for `U_tt = D U_xx + gamma R U_t`.
///
/// The gyroscopic term uses the centred difference `(U+ - U-)/(2 dt)`, so
/// each node solves `(I - h R) U+ = b` with `h = gamma dt/2`.
pub struct ChiralSolver {
    cfg: ChiralConfig,
    state: ChiralState,
    strip_gamma: Vec<f64>,
    step: usize,
}

impl ChiralSolver {
    pub fn new(cfg: &ChiralConfig, ics: &ChiralInitial) -> Result<Self> {
        cfg.validate()?;
        let cells = cfg.cells();
        let x: Vec<f64> = (0..=cells).map(|i| cfg.x_min + i as f64 * cfg.dx).collect();
        let mut u0 = ics.u0.sample(&x)?;
        let mut v0 = ics.v0.sample(&x)?;
        let ut0 = ics.ut0.sample(&x)?;
        let vt0 = ics.vt0.sample(&x)?;
        let strip_gamma: Vec<f64> = x.iter().map(|&xi| cfg.strip_gamma_cell(xi, cfg.dx)).collect();
        if cfg.boundary == Boundary::FixedZero {
            for w in [&mut u0, &mut v0] {
                w[0] = 0.0;
                w[cells] = 0.0;
            }
        }

        // second-order Taylor start: U1 = U0 + dt G + dt^2/2 (D U0_xx + gamma R G)
        let dt = cfg.dt;
        let (d1, d2) = (cfg.c1 * cfg.c1, cfg.c2() * cfg.c2());
        let lu = laplacian(&u0, cfg.dx);
        let lv = laplacian(&v0, cfg.dx);
        let g_t = cfg.temporal_gamma(0.5 * dt);
        let mut u1 = vec![0.0; x.len()];
        let mut v1 = vec![0.0; x.len()];
        for i in 0..x.len() {
            let gamma = g_t + strip_gamma[i];
            let (gu, gv) = match cfg.coupling {
                Coupling::Full => (gamma * vt0[i], -gamma * ut0[i]),
                Coupling::IncidentDriven => (0.0, -gamma * ut0[i]),
            };
            u1[i] = u0[i] + dt * ut0[i] + 0.5 * dt * dt * (d1 * lu[i] + gu);
            v1[i] = v0[i] + dt * vt0[i] + 0.5 * dt * dt * (d2 * lv[i] + gv);
        }
        let mut solver = ChiralSolver {
            cfg: cfg.clone(),
            state: ChiralState {
                t: 0.0,
                dt,
                dx: cfg.dx,
                x,
                u_prev: u0,
                v_prev: v0,
                u: u1,
                v: v1,
            },
            strip_gamma,
            step: 0,
        };
        solver.enforce_boundary();
        solver.state.t = dt;
        solver.step = 1;
        solver.apply_interface_rule(0);
        Ok(solver)
    }

    /// Initial displacements sampled on the grid.
    pub fn initial_levels(cfg: &ChiralConfig, ics: &ChiralInitial) -> Result<(Vec<f64>, Vec<f64>)> {
        cfg.validate()?;
        let x: Vec<f64> = (0..=cfg.cells()).map(|i| cfg.x_min + i as f64 * cfg.dx).collect();
        Ok((ics.u0.sample(&x)?, ics.v0.sample(&x)?))
    }

    pub fn state(&self) -> &ChiralState {
        &self.state
    }

    pub fn config(&self) -> &ChiralConfig {
        &self.cfg
    }

    pub fn time(&self) -> f64 {
        self.state.t
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    fn enforce_boundary(&mut self) {
        if self.cfg.boundary == Boundary::FixedZero {
            let n = self.state.u.len() - 1;
            for w in [&mut self.state.u, &mut self.state.v] {
                w[0] = 0.0;
                w[n] = 0.0;
            }
        }
    }

    /// After finishing step `n -> n+1`, carry momentum over if a schedule
    /// interval just ended.
    fn apply_interface_rule(&mut self, finished: usize) {
        if self.cfg.interface_rule != InterfaceRule::MomentumContinuous {
            return;
        }
        let dt = self.cfg.dt;
        let before = self.cfg.interval_at((finished as f64 + 0.5) * dt).copied();
        let after = self.cfg.interval_at((finished as f64 + 1.5) * dt).copied();
        let Some(iv) = before else { return };
        if after == Some(iv) {
            return;
        }
        let m = Mat2::rotation(iv.gamma * (iv.t_end - iv.t_start));
        let s = &mut self.state;
        for i in 0..s.u.len() {
            let vel = m.apply(Vec2::new(s.u[i] - s.u_prev[i], s.v[i] - s.v_prev[i]));
            s.u_prev[i] = s.u[i] - vel.x();
            s.v_prev[i] = s.v[i] - vel.y();
        }
    }

    pub fn step(&mut self) {
        let cfg = &self.cfg;
        let dt = cfg.dt;
        let n = self.step;
        let g_t = cfg.temporal_gamma((n as f64 + 0.5) * dt);
        let (d1, d2) = (cfg.c1 * cfg.c1, cfg.c2() * cfg.c2());
        let s = &self.state;
        let lu = laplacian(&s.u, cfg.dx);
        let lv = laplacian(&s.v, cfg.dx);
        let len = s.u.len();
        let mut u_next = vec![0.0; len];
        let mut v_next = vec![0.0; len];
        for i in 0..len {
            let ru = 2.0 * s.u[i] - s.u_prev[i] + dt * dt * d1 * lu[i];
            let rv = 2.0 * s.v[i] - s.v_prev[i] + dt * dt * d2 * lv[i];
            let h = 0.5 * dt * (g_t + self.strip_gamma[i]);
            match cfg.coupling {
                Coupling::Full => {
                    let bu = ru - h * s.v_prev[i];
                    let bv = rv + h * s.u_prev[i];
                    let det = 1.0 + h * h;
                    u_next[i] = (bu + h * bv) / det;
                    v_next[i] = (bv - h * bu) / det;
                }
                Coupling::IncidentDriven => {
                    u_next[i] = ru;
                    v_next[i] = rv - h * (ru - s.u_prev[i]);
                }
            }
        }
        let s = &mut self.state;
        s.u_prev = std::mem::replace(&mut s.u, u_next);
        s.v_prev = std::mem::replace(&mut s.v, v_next);
        self.enforce_boundary();
        self.step += 1;
        self.state.t = self.step as f64 * dt;
        self.apply_interface_rule(n);
    }
}

/// Interior second difference; end nodes get zero (pinned or windowed).
fn laplacian(w: &[f64], dx: f64) -> Vec<f64> {
    let n = w.len();
    let inv = 1.0 / (dx * dx);
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * inv;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergySample {
    pub t: f64,
    pub kinetic: f64,
    pub potential: f64,
}

impl EnergySample {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential
    }
}

/// Snapshots of `(u, v)` on the grid at the recorded times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub x: Vec<f64>,
    pub t: Vec<f64>,
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    pub energy: Vec<EnergySample>,
    /// `max |U|` over the grid at each recorded time.
    pub max_amplitude: Vec<f64>,
}

impl FieldRecord {
    /// Long-format table `x, t, u, v`, optionally thinned in space.
    pub fn to_table(&self, x_stride: usize) -> Table {
        let stride = x_stride.max(1);
        let mut table = Table::new(["x", "t", "u", "v"]);
        for (k, &t) in self.t.iter().enumerate() {
            for i in (0..self.x.len()).step_by(stride) {
                table.push(vec![self.x[i], t, self.u[k][i], self.v[k][i]]);
            }
        }
        table
    }

    pub fn energy_table(&self) -> Table {
        let mut table = Table::new(["t", "kinetic", "potential", "total"]);
        for e in &self.energy {
            table.push(vec![e.t, e.kinetic, e.potential, e.total()]);
        }
        table
    }
}

/// Runs the leapfrog scheme to the first step at or after `t_end`,
/// recording every `record_every` steps plus the initial and final levels.
pub fn fd_simulate(
    cfg: &ChiralConfig,
    ics: &ChiralInitial,
    t_end: f64,
    record_every: usize,
) -> Result<FieldRecord> {
    if !(t_end > 0.0) {
        return Err(Error::invalid("t_end", format!("positive required, got {t_end}")));
    }
    let every = record_every.max(1);
    let mut solver = ChiralSolver::new(cfg, ics)?;
    let n_steps = ((t_end / cfg.dt) - 1e-9).ceil().max(1.0) as usize;
    let (u0, v0) = ChiralSolver::initial_levels(cfg, ics)?;
    let mut record = FieldRecord {
        x: solver.state().x.clone(),
        t: vec![0.0],
        u: vec![u0.clone()],
        v: vec![v0.clone()],
        energy: Vec::new(),
        max_amplitude: vec![max_norm(&u0, &v0)],
    };
    let push_energy = |record: &mut FieldRecord, s: &ChiralState| {
        let (kinetic, potential) = rod_energy(s, cfg.c1, cfg.c2());
        record.energy.push(EnergySample {
            t: s.t - 0.5 * s.dt,
            kinetic,
            potential,
        });
    };
    push_energy(&mut record, solver.state());
    if every == 1 || n_steps == 1 {
        push_snapshot(&mut record, solver.state());
    }
    while solver.steps_taken() < n_steps {
        solver.step();
        let k = solver.steps_taken();
        if k % every == 0 || k == n_steps {
            push_snapshot(&mut record, solver.state());
            push_energy(&mut record, solver.state());
        }
    }
    Ok(record)
}

fn push_snapshot(record: &mut FieldRecord, s: &ChiralState) {
    record.t.push(s.t);
    record.u.push(s.u.clone());
    record.v.push(s.v.clone());
    record.max_amplitude.push(max_norm(&s.u, &s.v));
}

fn max_norm(u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| a.hypot(*b))
        .fold(0.0, f64::max)
}
