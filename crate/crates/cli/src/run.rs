//! Executes a checked scenario, writes its artifacts and the run manifest.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fs;
use std::path::{Component, Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use tlam_core::chiral::{
    cascade_solve, chiral_characteristics, coupled_scatter_amplitude, fd_simulate, first_eigenvalue_nonchiral,
    interface_jump, spatial_scatter, stationary_solution, Boundary, CascadeConfig, ChiralConfig,
    ChiralInitial, ChiralSolver, Coupling, GyricityStrip, InitialProfile,
};
use tlam_core::linalg::Vec2;
use tlam_core::scalar_laminate::{
    characteristics, comb_origin_series, comb_origin_value, comb_origin_value_split, edge_amplitude, edge_terms,
    growth_base, initial_field, propagate, propagate_stages, MediumPhase,
};
use tlam_core::spectral::{
    floquet_from_trace, growth_scan, growth_table, integrate_spectrum, k_range, monodromy, phase_transfer,
    spectral_cauchy, system_matrix, InitialData, SpectralGrid, SpectralState,
};
use tlam_core::table::Table;
use tlam_core::wave_terms::{eval_field, eval_profile, Polarization, Profile, WaveField};

use crate::error::{CliError, CliResult};
use crate::scenario::{
    cascade_case, CascadeParams, CharacteristicsParams, ChiralFdParams, CombParams, FieldSpec, Format, GrowthMethod,
    GrowthScanParams, Params, Scenario, ScalarLaminateParams, ScatterParams, SpectralCauchyParams,
};

pub const TOOL: &str = "tlam";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Every public engine operation a scenario can reach.
pub const ENGINE_OPERATIONS: [&str; 25] = [
    "eval_profile",
    "eval_field",
    "time_derivative",
    "antiderivative",
    "prune",
    "initial_field",
    "split_field",
    "propagate",
    "edge_amplitude",
    "comb_origin_value",
    "characteristics",
    "system_matrix",
    "phase_transfer",
    "monodromy",
    "floquet_growth",
    "integrate_spectrum",
    "spectral_cauchy",
    "fd_simulate",
    "rod_energy",
    "stationary_solution",
    "interface_jump",
    "spatial_scatter",
    "cascade_solve",
    "chiral_characteristics",
    "first_eigenvalue_nonchiral",
];

/// Rendered artifact, not yet written.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub name: &'static str,
    pub format: Format,
    pub content: String,
}

/// Everything a scenario computes, before any file is touched.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub derived: Map<String, Value>,
    /// Engine operations the run went through.
    pub operations: BTreeSet<&'static str>,
    pub artifacts: Vec<Artifact>,
}

impl Outcome {
    fn op(&mut self, name: &'static str) {
        self.operations.insert(name);
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.derived.insert(key.to_string(), value.into());
    }

    fn add(&mut self, name: &'static str, format: Format, content: String) {
        self.artifacts.push(Artifact { name, format, content });
    }

    fn csv(&mut self, name: &'static str, table: &Table) {
        self.add(name, Format::Csv, table.to_csv());
    }

    pub fn artifact(&self, name: &str, format: Format) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.name == name && a.format == format)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArtifactRecord {
    pub artifact: String,
    pub format: Format,
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub scenario: Scenario,
    pub derived: Map<String, Value>,
    pub operations: Vec<&'static str>,
    pub artifacts: Vec<ArtifactRecord>,
    /// Reported on the console only, so that manifests stay byte-stable.
    #[serde(skip)]
    pub wall_time_seconds: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn engine<T>(context: &str, r: tlam_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::engine(context, e))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// Runs the engines of `s` without writing anything.
pub fn execute(s: &Scenario) -> CliResult<Outcome> {
    let mut out = Outcome::default();
    for (k, v) in s.preview() {
        out.derived.insert(k, v);
    }
    match &s.params {
        Params::ScalarLaminate(p) => scalar_laminate(p, &mut out)?,
        Params::CombResonance(p) => comb_resonance(p, &mut out)?,
        Params::SpectralGrowthScan(p) => growth(p, &mut out)?,
        Params::SpectralCauchy(p) => cauchy(p, &mut out)?,
        Params::ChiralFd(p) => chiral_fd(p, &mut out)?,
        Params::ChiralCascade(p) => cascade(p, &mut out)?,
        Params::ChiralScatter(p) => scatter(p, &mut out)?,
        Params::Characteristics(p) => diagram(p, &mut out)?,
    }
    Ok(out)
}

fn safe_relative(path: &str) -> CliResult<PathBuf> {
    let p = Path::new(path);
    let ok = p
        .components()
        .all(|c| matches!(c, Component::Normal(_) | Component::CurDir));
    if !ok || p.as_os_str().is_empty() {
        return Err(CliError::Input(format!(
            "output path `{path}` must stay inside the output directory"
        )));
    }
    Ok(p.to_path_buf())
}

/// Executes `s`, writes the declared outputs and `manifest.json` under
/// `out_dir`. Files written before a failure are removed again.
pub fn run(s: &Scenario, out_dir: &Path) -> CliResult<RunManifest> {
    let start = Instant::now();
    let outcome = execute(s)?;
    let mut written: Vec<PathBuf> = Vec::new();
    let result = write_all(s, &outcome, out_dir, &mut written);
    match result {
        Ok(artifacts) => {
            let manifest = RunManifest {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                scenario: s.clone(),
                derived: outcome.derived,
                operations: outcome.operations.into_iter().collect(),
                artifacts,
                wall_time_seconds: 0.0,
            };
            let path = out_dir.join(MANIFEST_FILE);
            if let Err(e) = fs::write(&path, to_json(&manifest)) {
                cleanup(&written);
                return Err(CliError::io(path, e));
            }
            Ok(RunManifest {
                wall_time_seconds: start.elapsed().as_secs_f64(),
                ..manifest
            })
        }
        Err(e) => {
            cleanup(&written);
            Err(e)
        }
    }
}

fn cleanup(written: &[PathBuf]) {
    for p in written {
        let _ = fs::remove_file(p);
    }
}

fn write_all(
    s: &Scenario,
    outcome: &Outcome,
    out_dir: &Path,
    written: &mut Vec<PathBuf>,
) -> CliResult<Vec<ArtifactRecord>> {
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut records = Vec::new();
    for spec in &s.outputs {
        let rel = safe_relative(&spec.path)?;
        let artifact = outcome.artifact(&spec.artifact, spec.format).ok_or_else(|| {
            CliError::Input(format!(
                "{} produced no {} artifact `{}`",
                s.kind.name(),
                spec.format.extension(),
                spec.artifact
            ))
        })?;
        let path = out_dir.join(&rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        fs::write(&path, &artifact.content).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
        records.push(ArtifactRecord {
            artifact: spec.artifact.clone(),
            format: spec.format,
            path: spec.path.clone(),
            bytes: artifact.content.len(),
            sha256: sha256_hex(artifact.content.as_bytes()),
        });
    }
    Ok(records)
}

// ---------------------------------------------------------------------------
// scalar laminate

fn scalar_laminate(p: &ScalarLaminateParams, out: &mut Outcome) -> CliResult<()> {
    let lam = p.laminate.laminate();
    let (p1, _) = p.laminate.phases();
    let init = engine("initial data", initial_field(Some(p.displacement), p.velocity, p1))?;
    out.op("initial_field");
    out.op("eval_profile");
    out.set("initial_value_at_origin", engine("initial data", eval_profile(&p.displacement, 0.0))?);
    if p.velocity.is_some() {
        out.op("antiderivative");
    }

    let times = p.times.values();
    let t_max = times.iter().copied().fold(0.0, f64::max);
    let stages = engine("propagation", propagate_stages(&lam, init.clone(), t_max, p.prune_tolerance))?;
    out.op("split_field");
    out.op("prune");
    let velocity: Vec<WaveField> = stages.iter().map(|s| s.field.time_derivative()).collect();
    out.op("time_derivative");
    let with_velocity = velocity
        .iter()
        .all(|f| f.iter().all(|t| t.profile.is_evaluable()));

    let header: &[&str] = if with_velocity {
        &["x", "t", "value", "velocity"]
    } else {
        &["x", "t", "value"]
    };
    let mut surface = Table::new(header.iter().copied());
    let xs = p.grid.xs();
    for &t in &times {
        let k = stages.iter().rposition(|s| s.t_start <= t).unwrap_or(0);
        for &x in &xs {
            let mut row = vec![x, t, engine("surface", eval_field(&stages[k].field, x, t, Polarization::Scalar))?];
            if with_velocity {
                row.push(engine("surface", velocity[k].eval(x, t, Polarization::Scalar))?);
            }
            surface.push(row);
        }
    }
    out.op("eval_field");
    out.csv("surface", &surface);

    let final_field = engine("propagation", propagate(&lam, init.clone(), t_max, p.prune_tolerance))?;
    out.op("propagate");
    out.set("term_count", final_field.len());
    out.add(
        "terms",
        Format::Json,
        to_json(&json!({"t": t_max, "phase": lam.phase_at(t_max), "field": final_field})),
    );

    // edge waves: C1 mid phase 1 of cell n, C2 mid the following phase 2
    let l = &p.laminate;
    let period = l.t1 + l.t2;
    let mut edge = Table::new(["n", "c1_terms", "c1_closed", "c2_terms", "c2_closed"]);
    for n in 0..=p.edge_cells {
        let t_c1 = n as f64 * period + 0.5 * l.t1;
        let t_c2 = n as f64 * period + l.t1 + 0.5 * l.t2;
        let edge_at = |t: f64| -> CliResult<f64> {
            let f = engine("edge waves", propagate(&lam, init.clone(), t, p.prune_tolerance))?;
            Ok(edge_terms(&f).map_or(0.0, |(right, _)| right.coefficient))
        };
        let (c1, c2) = edge_amplitude(l.alpha1, l.beta1, l.alpha2, l.beta2, n);
        edge.push(vec![n as f64, edge_at(t_c1)?, c1, edge_at(t_c2)?, c2]);
        if n == p.edge_cells {
            out.set("edge_c1", c1);
            out.set("edge_c2", c2);
        }
    }
    out.op("edge_amplitude");
    out.set("growth_base", growth_base(l.kappa()));
    out.csv("edge", &edge);
    Ok(())
}

fn comb_resonance(p: &CombParams, out: &mut Outcome) -> CliResult<()> {
    let p1 = engine("phase 1", MediumPhase::new(p.alpha1, p.beta1))?;
    let p2 = engine("phase 2", MediumPhase::new(p.alpha2, p.beta2))?;
    let series = engine("comb propagation", comb_origin_series(p1, p2, p.half_period, p.n_max))?;
    out.op("initial_field");
    out.op("split_field");
    out.op("propagate");
    out.op("eval_field");
    out.op("comb_origin_value");
    let mut table = Table::new(["n", "t", "terms", "literal_law", "halved_law"]);
    for &(n, t, v) in &series {
        table.push(vec![
            n as f64,
            t,
            v,
            comb_origin_value(p.alpha1, p.beta1, p.alpha2, p.beta2, n),
            comb_origin_value_split(p.alpha1, p.beta1, p.alpha2, p.beta2, n),
        ]);
    }
    let last = series.last().expect("n_max + 1 rows");
    out.set("n", p.n_max);
    out.set("origin_value", comb_origin_value(p.alpha1, p.beta1, p.alpha2, p.beta2, p.n_max));
    out.set("origin_value_terms", last.2);
    out.csv("series", &table);
    Ok(())
}

// ---------------------------------------------------------------------------
// spectral

fn growth(p: &GrowthScanParams, out: &mut Outcome) -> CliResult<()> {
    let lam = p.laminate.laminate();
    let ks = engine("wavenumbers", k_range(p.k_min, p.k_max, p.count))?;
    let (ph1, ph2) = p.laminate.phases();
    // one-cell transfer matrices at the top of the range, as a sanity figure
    let m1 = engine("transfer", phase_transfer(p.k_max, &ph1, p.laminate.t1))?;
    let m2 = engine("transfer", phase_transfer(p.k_max, &ph2, p.laminate.t2))?;
    out.op("system_matrix");
    out.op("phase_transfer");
    out.set("system_matrix_phase1_k_max", json!(system_matrix(p.k_max, &ph1).0));
    out.set("cell_det_k_max", m1.then(&m2).det());

    let table = match p.method {
        GrowthMethod::Transfer => {
            let rows = growth_scan(&lam, &ks);
            out.op("monodromy");
            out.op("floquet_growth");
            out.set("max_growth_rate", rows.iter().map(|r| r.growth_rate).fold(0.0, f64::max));
            growth_table(&rows)
        }
        GrowthMethod::Rk4 => {
            let period = lam.period();
            let dt = period / p.rk4_steps as f64;
            let mut table = Table::new(["k", "lambda_max_modulus", "growth_rate", "closed_form_trace", "rk4_trace"]);
            let mut worst: f64 = 0.0;
            let mut max_rate: f64 = 0.0;
            for &k in &ks {
                // layer by layer, so no step straddles a coefficient jump
                let through_cell = |w: f64, v: f64| -> CliResult<SpectralState> {
                    let mut y = SpectralState {
                        k,
                        w_hat: w.into(),
                        v_hat: v.into(),
                    };
                    for layer in lam.layers() {
                        let (a, b) = (layer.phase.alpha, layer.phase.beta);
                        y = engine("rk4", integrate_spectrum(k, |_| a, |_| b, y, layer.duration, dt))?;
                    }
                    Ok(y)
                };
                let a = through_cell(1.0, 0.0)?;
                let b = through_cell(0.0, 1.0)?;
                let trace = a.w_hat.re + b.v_hat.re;
                let closed = monodromy(k, &lam).trace();
                worst = worst.max((trace - closed).abs());
                let g = floquet_from_trace(trace, period);
                max_rate = max_rate.max(g.growth_rate);
                table.push(vec![k, g.lambda_max_modulus, g.growth_rate, closed, trace]);
            }
            out.op("integrate_spectrum");
            out.op("monodromy");
            out.set("max_growth_rate", max_rate);
            out.set("rk4_trace_error", worst);
            table
        }
    };
    out.csv("growth", &table);
    Ok(())
}

fn cauchy(p: &SpectralCauchyParams, out: &mut Outcome) -> CliResult<()> {
    let lam = p.laminate.laminate();
    let grid = engine("grid", SpectralGrid::centered(p.grid.n, p.grid.half_width))?;
    let data = InitialData::Gaussian { a: p.a };
    let gaussian = engine("profile", Profile::gaussian(p.a))?;
    let (p1, _) = p.laminate.phases();
    let init = engine("initial data", initial_field(Some(gaussian), None, p1))?;
    let header: &[&str] = if p.compare_with_terms {
        &["x", "t", "value", "terms"]
    } else {
        &["x", "t", "value"]
    };
    let mut table = Table::new(header.iter().copied());
    let mut worst: f64 = 0.0;
    let mut imag: f64 = 0.0;
    for t in p.times.values() {
        let field = engine("spectral solution", spectral_cauchy(&lam, &data, &grid, t))?;
        imag = imag.max(field.max_imaginary);
        let terms = if p.compare_with_terms {
            Some(engine("propagation", propagate(&lam, init.clone(), t, 0.0))?)
        } else {
            None
        };
        for (x, v) in field.x.iter().zip(&field.value) {
            let mut row = vec![*x, t, *v];
            if let Some(f) = &terms {
                let w = engine("propagation", f.eval(*x, t, Polarization::Scalar))?;
                worst = worst.max((w - v).abs());
                row.push(w);
            }
            table.push(row);
        }
    }
    out.op("spectral_cauchy");
    if p.compare_with_terms {
        out.op("initial_field");
        out.op("propagate");
        out.set("linf_vs_terms", worst);
    }
    out.set("max_imaginary", imag);
    out.csv("surface", &table);
    Ok(())
}

// ---------------------------------------------------------------------------
// chiral

fn grid_points(cfg: &ChiralConfig) -> Vec<f64> {
    (0..=cfg.cells()).map(|i| cfg.x_min + i as f64 * cfg.dx).collect()
}

fn initial_profile(spec: &FieldSpec, cfg: &ChiralConfig) -> CliResult<InitialProfile> {
    Ok(match *spec {
        FieldSpec::Zero => InitialProfile::zero(),
        FieldSpec::Constant { value } => InitialProfile::constant(value),
        FieldSpec::Gaussian { a, scale, center } => {
            InitialProfile::profile(engine("initial data", Profile::gaussian(a))?, scale, center)
        }
        FieldSpec::SmoothedStep { a, center } => engine("initial data", InitialProfile::smoothed_step(a, center))?,
        FieldSpec::Sine { mode, scale } => {
            let len = cfg.x_max - cfg.x_min;
            InitialProfile::Samples(
                grid_points(cfg)
                    .iter()
                    .map(|x| scale * (mode as f64 * PI * (x - cfg.x_min) / len).sin())
                    .collect(),
            )
        }
    })
}

fn chiral_fd(p: &ChiralFdParams, out: &mut Outcome) -> CliResult<()> {
    let cfg = &p.config;
    let ics = ChiralInitial {
        u0: initial_profile(&p.initial.u0, cfg)?,
        v0: initial_profile(&p.initial.v0, cfg)?,
        ut0: initial_profile(&p.initial.ut0, cfg)?,
        vt0: initial_profile(&p.initial.vt0, cfg)?,
    };
    out.op("eval_profile");
    let rec = engine("finite differences", fd_simulate(cfg, &ics, p.t_end, p.record_every))?;
    out.op("fd_simulate");
    out.op("rod_energy");
    let e0 = rec.energy.first().map_or(0.0, |e| e.total());
    let drift = rec
        .energy
        .iter()
        .map(|e| (e.total() - e0).abs())
        .fold(0.0, f64::max);
    out.set("steps", (rec.t.last().copied().unwrap_or(0.0) / cfg.dt).round());
    out.set("energy_initial", e0);
    out.set("energy_drift_relative", if e0 > 0.0 { drift / e0 } else { drift });
    out.set("max_amplitude_final", rec.max_amplitude.last().copied().unwrap_or(0.0));
    out.csv("field", &rec.to_table(p.x_stride));
    out.csv("energy", &rec.energy_table());
    out.add(
        "record",
        Format::Json,
        to_json(&json!({
            "config": cfg,
            "t": rec.t,
            "energy": rec.energy,
            "max_amplitude": rec.max_amplitude,
        })),
    );

    if cfg.boundary == Boundary::FixedZero {
        out.set(
            "first_eigenvalue_nonchiral",
            engine("eigenvalue", first_eigenvalue_nonchiral(cfg.c1, cfg.c2()))?,
        );
        out.op("first_eigenvalue_nonchiral");
    }

    if cfg.gamma != 0.0 {
        // high-gyricity limit from the same initial data
        let x = grid_points(cfg);
        let sample = |spec: &FieldSpec| -> CliResult<Vec<f64>> {
            let solver_like = ChiralInitial::at_rest(initial_profile(spec, cfg)?, InitialProfile::zero());
            Ok(engine("initial data", ChiralSolver::initial_levels(cfg, &solver_like))?.0)
        };
        let (u0, v0, ut0, vt0) = (
            sample(&p.initial.u0)?,
            sample(&p.initial.v0)?,
            sample(&p.initial.ut0)?,
            sample(&p.initial.vt0)?,
        );
        let stride = p.x_stride.max(1);
        let mut table = Table::new(["x", "t", "u", "v"]);
        let mut worst: f64 = 0.0;
        for (k, &t) in rec.t.iter().enumerate() {
            for i in 0..x.len() {
                let y = engine(
                    "stationary limit",
                    stationary_solution(Vec2::new(u0[i], v0[i]), Vec2::new(ut0[i], vt0[i]), cfg.gamma, t),
                )?;
                worst = worst.max((rec.u[k][i] - y.x()).abs()).max((rec.v[k][i] - y.y()).abs());
                if i % stride == 0 {
                    table.push(vec![x[i], t, y.x(), y.y()]);
                }
            }
        }
        out.op("stationary_solution");
        out.set("stationary_linf", worst);
        out.csv("stationary", &table);
    }
    Ok(())
}

fn cascade(p: &CascadeParams, out: &mut Outcome) -> CliResult<()> {
    let cfg = CascadeConfig {
        case: cascade_case(p.case),
        phi: p.phi,
        psi: p.psi,
        alpha: p.alpha,
        period: p.period,
        n_intervals: p.n_intervals,
        c1: p.c1,
        c2: p.c2,
        interface_phase: p.interface_phase,
    };
    let sol = engine("cascade", cascade_solve(&cfg))?;
    out.op("cascade_solve");
    out.op("interface_jump");
    let d = p.interface_phase / p.alpha;
    if d > 0.0 {
        let ju = engine("jump", interface_jump(Vec2::new(1.0, 0.0), p.alpha, d))?;
        let jv = engine("jump", interface_jump(Vec2::new(0.0, 1.0), p.alpha, d))?;
        out.set("jump_matrix", json!([[ju.x(), jv.x()], [ju.y(), jv.y()]]));
    }
    out.set("correction_magnitude", p.c1 * p.c2 / (2.0 * p.alpha * p.alpha));
    out.set(
        "terms_per_interval",
        sol.intervals.iter().map(|iv| iv.field.len()).collect::<Vec<_>>(),
    );

    let t_end = p.n_intervals as f64 * p.period;
    let ts: Vec<f64> = (0..p.t_count)
        .map(|j| t_end * j as f64 / (p.t_count - 1) as f64)
        .collect();
    let mut surface = Table::new(["x", "t", "u", "v"]);
    let mut u = Table::new(["x", "t", "u"]);
    let mut v = Table::new(["x", "t", "v"]);
    for &t in &ts {
        for x in p.x.values() {
            let y = engine("cascade", sol.eval(x, t))?;
            surface.push(vec![x, t, y.x(), y.y()]);
            u.push(vec![x, t, y.x()]);
            v.push(vec![x, t, y.y()]);
        }
    }
    out.csv("surface", &surface);
    out.csv("u", &u);
    out.csv("v", &v);
    out.add("terms", Format::Json, to_json(&sol));
    Ok(())
}

fn scatter(p: &ScatterParams, out: &mut Outcome) -> CliResult<()> {
    let s = engine("scattering", spatial_scatter(p.beta, p.c2, p.x0, p.t0))?;
    out.op("spatial_scatter");
    out.set("amplitude", s.amplitude());
    out.set("coupled_amplitude", coupled_scatter_amplitude(p.beta, p.c1, p.c2));
    let mut table = Table::new(["x", "t", "u", "v"]);
    for t in p.times.values() {
        for x in p.x.values() {
            let tr = engine("scattering", s.transmitted(p.c1, x, t))?;
            let v = if x < p.x0 {
                engine("scattering", s.reflected(x, t))?.y()
            } else {
                tr.y()
            };
            let y = Vec2::new(tr.x(), v);
            table.push(vec![x, t, y.x(), y.y()]);
        }
    }
    out.csv("surface", &table);

    if let Some(check) = &p.fd_check {
        let half = 8.0;
        let start = p.x0 - 2.0;
        let mut cfg = ChiralConfig::uniform(p.c2 / p.c1, 0.0, check.dx, 0.9, p.x0 - half, p.x0 + half);
        cfg.c1 = p.c1;
        cfg.dt = 0.9 * cfg.dx / cfg.max_speed();
        cfg.coupling = Coupling::IncidentDriven;
        cfg.strips = vec![GyricityStrip {
            x_start: p.x0 - 0.5 * check.width,
            x_end: p.x0 + 0.5 * check.width,
            gamma: p.beta / check.width,
        }];
        let a = check.a;
        let ics = ChiralInitial {
            u0: engine("fd check", InitialProfile::smoothed_step(a, start))?,
            v0: InitialProfile::zero(),
            ut0: InitialProfile::profile(
                engine("fd check", Profile::gaussian(a))?,
                p.c1 * (a / PI).sqrt(),
                start,
            ),
            vt0: InitialProfile::zero(),
        };
        let rec = engine("fd check", fd_simulate(&cfg, &ics, 2.0 / p.c1 + 3.0, usize::MAX))?;
        out.op("fd_simulate");
        let v = rec.v.last().expect("final level");
        let at = |x: f64| v[((x - cfg.x_min) / cfg.dx).round() as usize];
        out.set("fd_plateau_left", -at(p.x0 - 1.0));
        out.set("fd_plateau_right", -at(p.x0 + 1.0));
    }
    Ok(())
}

fn diagram(p: &CharacteristicsParams, out: &mut Outcome) -> CliResult<()> {
    let d = match p {
        CharacteristicsParams::Scalar {
            laminate,
            seeds,
            n_interfaces,
        } => {
            out.op("characteristics");
            characteristics(&laminate.laminate(), seeds, *n_interfaces)
        }
        CharacteristicsParams::Chiral { c1, c2, period, n, case } => {
            let d = engine(
                "characteristics",
                chiral_characteristics(*c1, *c2, *period, *n, cascade_case(*case)),
            )?;
            out.op("chiral_characteristics");
            if let Some(last) = d.transition_layer.last() {
                out.set("transition_width", last.width());
                out.set("transition_width_over_slow_spacing", last.width() / (c2 * period));
            }
            d
        }
    };
    out.set("segments", d.segments.len());
    out.add("diagram", Format::Svg, d.to_svg());
    out.add("diagram", Format::Json, d.to_json());
    Ok(())
}
