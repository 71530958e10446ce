//! Scenario documents: schema checking with JSON-pointer paths and the typed
//! parameter records each engine runs from.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use tlam_core::chiral::{
    Boundary, CascadeCase, ChiralConfig, Coupling, GyricityInterval, GyricityStrip, InterfaceRule,
};
use tlam_core::scalar_laminate::{MediumPhase, TemporalLaminate};
use tlam_core::wave_terms::Profile;

use crate::error::{CliError, CliResult, SchemaError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    ScalarLaminate,
    CombResonance,
    SpectralGrowthScan,
    SpectralCauchy,
    ChiralFd,
    ChiralCascade,
    ChiralScatter,
    Characteristics,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::ScalarLaminate,
        Kind::CombResonance,
        Kind::SpectralGrowthScan,
        Kind::SpectralCauchy,
        Kind::ChiralFd,
        Kind::ChiralCascade,
        Kind::ChiralScatter,
        Kind::Characteristics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::ScalarLaminate => "scalar_laminate",
            Kind::CombResonance => "comb_resonance",
            Kind::SpectralGrowthScan => "spectral_growth_scan",
            Kind::SpectralCauchy => "spectral_cauchy",
            Kind::ChiralFd => "chiral_fd",
            Kind::ChiralCascade => "chiral_cascade",
            Kind::ChiralScatter => "chiral_scatter",
            Kind::Characteristics => "characteristics",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn summary(self) -> &'static str {
        match self {
            Kind::ScalarLaminate => "term-algebra solution in a two-phase temporal laminate, with edge-wave series",
            Kind::CombResonance => "origin value of the alternating comb initial condition, cell by cell",
            Kind::SpectralGrowthScan => "Floquet multipliers and growth rates over a wavenumber range",
            Kind::SpectralCauchy => "FFT solution of the laminate Cauchy problem for a Gaussian",
            Kind::ChiralFd => "leapfrog finite differences for the gyroscopic rod",
            Kind::ChiralCascade => "closed-form solution across thin gyroscopic layers",
            Kind::ChiralScatter => "transverse wave scattered by a point chiral interface",
            Kind::Characteristics => "characteristic diagram of a scalar or chiral laminate",
        }
    }

    /// Artifacts the kind can write, as `(name, format)`.
    pub fn artifacts(self) -> &'static [(&'static str, Format)] {
        match self {
            Kind::ScalarLaminate => &[("surface", Format::Csv), ("edge", Format::Csv), ("terms", Format::Json)],
            Kind::CombResonance => &[("series", Format::Csv)],
            Kind::SpectralGrowthScan => &[("growth", Format::Csv)],
            Kind::SpectralCauchy => &[("surface", Format::Csv)],
            Kind::ChiralFd => &[
                ("field", Format::Csv),
                ("energy", Format::Csv),
                ("stationary", Format::Csv),
                ("record", Format::Json),
            ],
            Kind::ChiralCascade => &[
                ("surface", Format::Csv),
                ("u", Format::Csv),
                ("v", Format::Csv),
                ("terms", Format::Json),
            ],
            Kind::ChiralScatter => &[("surface", Format::Csv)],
            Kind::Characteristics => &[("diagram", Format::Svg), ("diagram", Format::Json)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }

    fn from_name(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            "svg" => Some(Format::Svg),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputSpec {
    pub format: Format,
    pub path: String,
    pub artifact: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LaminateParams {
    pub alpha1: f64,
    pub beta1: f64,
    pub t1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub t2: f64,
}

impl LaminateParams {
    pub fn phases(&self) -> (MediumPhase, MediumPhase) {
        (
            MediumPhase::new(self.alpha1, self.beta1).expect("validated"),
            MediumPhase::new(self.alpha2, self.beta2).expect("validated"),
        )
    }

    pub fn laminate(&self) -> TemporalLaminate {
        let (p1, p2) = self.phases();
        TemporalLaminate::two_phase(p1, self.t1, p2, self.t2).expect("validated")
    }

    pub fn kappa(&self) -> f64 {
        self.alpha1 * self.beta1 / (self.alpha2 * self.beta2)
    }

    /// `T_i sqrt(alpha_i/beta_i)` for both phases.
    pub fn distances(&self) -> [f64; 2] {
        [
            self.t1 * (self.alpha1 / self.beta1).sqrt(),
            self.t2 * (self.alpha2 / self.beta2).sqrt(),
        ]
    }
}

/// `n` points from `-half_width` in steps of `2 half_width / n`, the layout
/// of the FFT grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridParams {
    pub n: usize,
    pub half_width: f64,
}

impl GridParams {
    pub fn xs(&self) -> Vec<f64> {
        let dx = 2.0 * self.half_width / self.n as f64;
        (0..self.n).map(|j| -self.half_width + j as f64 * dx).collect()
    }
}

/// Evenly spaced samples on `[start, end]`; a single sample sits at `end`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Span {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Span {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.end];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + i as f64 * step).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarLaminateParams {
    pub laminate: LaminateParams,
    pub displacement: Profile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub velocity: Option<Profile>,
    pub grid: GridParams,
    pub times: Span,
    pub edge_cells: u32,
    pub prune_tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CombParams {
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub half_period: f64,
    pub n_max: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMethod {
    Transfer,
    Rk4,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthScanParams {
    pub laminate: LaminateParams,
    pub k_min: f64,
    pub k_max: f64,
    pub count: usize,
    pub method: GrowthMethod,
    pub rk4_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralCauchyParams {
    pub laminate: LaminateParams,
    pub a: f64,
    pub grid: GridParams,
    pub times: Span,
    /// Also evaluate the term-algebra solution and report the difference.
    pub compare_with_terms: bool,
}

/// One component of chiral initial data.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FieldSpec {
    Zero,
    Constant { value: f64 },
    Gaussian { a: f64, scale: f64, center: f64 },
    SmoothedStep { a: f64, center: f64 },
    /// `scale sin(mode pi (x - x_min)/(x_max - x_min))`.
    Sine { mode: u32, scale: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiralInitialSpec {
    pub u0: FieldSpec,
    pub v0: FieldSpec,
    pub ut0: FieldSpec,
    pub vt0: FieldSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiralFdParams {
    #[serde(flatten)]
    pub config: ChiralConfig,
    pub initial: ChiralInitialSpec,
    pub t_end: f64,
    pub record_every: usize,
    pub x_stride: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CascadeParams {
    pub case: u32,
    pub phi: Profile,
    pub psi: Profile,
    pub alpha: f64,
    pub period: f64,
    pub n_intervals: usize,
    pub c1: f64,
    pub c2: f64,
    pub interface_phase: f64,
    pub x: Span,
    pub t_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterFdCheck {
    pub dx: f64,
    pub width: f64,
    pub a: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterParams {
    pub beta: f64,
    pub c1: f64,
    pub c2: f64,
    pub x0: f64,
    pub t0: f64,
    pub x: Span,
    pub times: Span,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_check: Option<ScatterFdCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum CharacteristicsParams {
    Scalar {
        laminate: LaminateParams,
        seeds: Vec<f64>,
        n_interfaces: usize,
    },
    Chiral {
        c1: f64,
        c2: f64,
        period: f64,
        n: usize,
        case: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    ScalarLaminate(ScalarLaminateParams),
    CombResonance(CombParams),
    SpectralGrowthScan(GrowthScanParams),
    SpectralCauchy(SpectralCauchyParams),
    ChiralFd(ChiralFdParams),
    ChiralCascade(CascadeParams),
    ChiralScatter(ScatterParams),
    Characteristics(CharacteristicsParams),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub kind: Kind,
    pub params: Params,
    pub outputs: Vec<OutputSpec>,
}

impl Scenario {
    /// Parses and checks a JSON document. Syntax errors are reported alone;
    /// schema errors are collected exhaustively.
    pub fn from_json(text: &str) -> CliResult<Scenario> {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("not a JSON document: {e}")))?;
        validate(&doc).map_err(CliError::Validation)
    }

    /// Quantities that follow from the parameters alone.
    pub fn preview(&self) -> Map<String, Value> {
        let mut out = Map::new();
        let lam = match &self.params {
            Params::ScalarLaminate(p) => Some(p.laminate),
            Params::SpectralGrowthScan(p) => Some(p.laminate),
            Params::SpectralCauchy(p) => Some(p.laminate),
            Params::Characteristics(CharacteristicsParams::Scalar { laminate, .. }) => Some(*laminate),
            Params::CombResonance(p) => Some(LaminateParams {
                alpha1: p.alpha1,
                beta1: p.beta1,
                t1: p.half_period / (p.alpha1 / p.beta1).sqrt(),
                alpha2: p.alpha2,
                beta2: p.beta2,
                t2: p.half_period / (p.alpha2 / p.beta2).sqrt(),
            }),
            _ => None,
        };
        if let Some(l) = lam {
            let [d1, d2] = l.distances();
            out.insert("kappa".into(), l.kappa().into());
            out.insert("distance_phase1".into(), d1.into());
            out.insert("distance_phase2".into(), d2.into());
            out.insert("distance_mismatch".into(), (d1 - d2).abs().into());
        }
        if let Params::ChiralFd(p) = &self.params {
            out.insert("cfl_ratio".into(), p.config.cfl_ratio().into());
            out.insert("c2".into(), p.config.c2().into());
        }
        out
    }
}

// ---------------------------------------------------------------------------
// checking

fn pointer_escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

#[derive(Clone, Copy)]
struct Obj<'a> {
    map: Option<&'a Map<String, Value>>,
}

struct Checker {
    errors: Vec<SchemaError>,
}

impl Checker {
    fn err(&mut self, path: &str, message: impl Into<String>) {
        self.errors.push(SchemaError {
            path: path.to_string(),
            message: message.into(),
        });
    }

    /// Object at `path`; missing values are reported when `required`.
    fn object<'a>(&mut self, v: Option<&'a Value>, path: &str, required: bool) -> Obj<'a> {
        match v {
            Some(Value::Object(m)) => Obj { map: Some(m) },
            Some(_) => {
                self.err(path, "expected an object");
                Obj { map: None }
            }
            None => {
                if required {
                    self.err(path, "required object is missing");
                }
                Obj { map: None }
            }
        }
    }

    fn keys(&mut self, o: Obj, path: &str, allowed: &[&str]) {
        if let Some(m) = o.map {
            for k in m.keys() {
                if !allowed.contains(&k.as_str()) {
                    self.err(&format!("{path}/{}", pointer_escape(k)), "unknown field");
                }
            }
        }
    }

    fn raw<'a>(&self, o: Obj<'a>, key: &str) -> Option<&'a Value> {
        o.map.and_then(|m| m.get(key))
    }

    fn number(&mut self, o: Obj, path: &str, key: &str, default: Option<f64>) -> f64 {
        let p = format!("{path}/{key}");
        match self.raw(o, key) {
            None if o.map.is_none() => f64::NAN,
            None => match default {
                Some(d) => d,
                None => {
                    self.err(&p, "required number is missing");
                    f64::NAN
                }
            },
            Some(v) => match v.as_f64() {
                Some(x) if x.is_finite() => x,
                Some(_) => {
                    self.err(&p, "must be finite");
                    f64::NAN
                }
                None => {
                    self.err(&p, "expected a number");
                    f64::NAN
                }
            },
        }
    }

    fn positive(&mut self, o: Obj, path: &str, key: &str, default: Option<f64>) -> f64 {
        let v = self.number(o, path, key, default);
        if v.is_finite() && v <= 0.0 {
            self.err(&format!("{path}/{key}"), format!("positive required, got {v}"));
        }
        v
    }

    fn non_negative(&mut self, o: Obj, path: &str, key: &str, default: Option<f64>) -> f64 {
        let v = self.number(o, path, key, default);
        if v.is_finite() && v < 0.0 {
            self.err(&format!("{path}/{key}"), format!("non-negative required, got {v}"));
        }
        v
    }

    fn integer(&mut self, o: Obj, path: &str, key: &str, default: Option<u64>, min: u64) -> u64 {
        let p = format!("{path}/{key}");
        let v = match self.raw(o, key) {
            None if o.map.is_none() => return min,
            None => match default {
                Some(d) => d,
                None => {
                    self.err(&p, "required integer is missing");
                    return min;
                }
            },
            Some(v) => match v.as_u64() {
                Some(n) => n,
                None => {
                    self.err(&p, "expected a non-negative integer");
                    return min;
                }
            },
        };
        if v < min {
            self.err(&p, format!("must be at least {min}, got {v}"));
        }
        v
    }

    fn boolean(&mut self, o: Obj, path: &str, key: &str, default: bool) -> bool {
        match self.raw(o, key) {
            None => default,
            Some(Value::Bool(b)) => *b,
            Some(_) => {
                self.err(&format!("{path}/{key}"), "expected true or false");
                default
            }
        }
    }

    fn choice(&mut self, o: Obj, path: &str, key: &str, options: &[&'static str], default: &'static str) -> &'static str {
        match self.raw(o, key) {
            None => default,
            Some(Value::String(s)) => match options.iter().find(|opt| **opt == s.as_str()) {
                Some(opt) => opt,
                None => {
                    self.err(&format!("{path}/{key}"), format!("expected one of {}", options.join(", ")));
                    default
                }
            },
            Some(_) => {
                self.err(&format!("{path}/{key}"), "expected a string");
                default
            }
        }
    }

    fn profile(&mut self, o: Obj, path: &str, key: &str, default: Option<Profile>) -> Option<Profile> {
        let p = format!("{path}/{key}");
        match self.raw(o, key) {
            None => default,
            Some(v) => match serde_json::from_value::<Profile>(v.clone()) {
                Ok(profile) => Some(profile),
                Err(e) => {
                    self.err(&p, format!("bad profile: {e}"));
                    None
                }
            },
        }
    }

    fn numbers(&mut self, o: Obj, path: &str, key: &str, default: Vec<f64>) -> Vec<f64> {
        let p = format!("{path}/{key}");
        match self.raw(o, key) {
            None => default,
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .filter_map(|(i, v)| match v.as_f64() {
                    Some(x) if x.is_finite() => Some(x),
                    _ => {
                        self.err(&format!("{p}/{i}"), "expected a finite number");
                        None
                    }
                })
                .collect(),
            Some(_) => {
                self.err(&p, "expected an array of numbers");
                default
            }
        }
    }

    fn laminate(&mut self, v: Option<&Value>, path: &str) -> LaminateParams {
        let o = self.object(v, path, true);
        self.keys(o, path, &["alpha1", "beta1", "t1", "alpha2", "beta2", "t2"]);
        LaminateParams {
            alpha1: self.positive(o, path, "alpha1", None),
            beta1: self.positive(o, path, "beta1", None),
            t1: self.positive(o, path, "t1", None),
            alpha2: self.positive(o, path, "alpha2", None),
            beta2: self.positive(o, path, "beta2", None),
            t2: self.positive(o, path, "t2", None),
        }
    }

    fn grid(&mut self, v: Option<&Value>, path: &str, n: u64, half_width: f64) -> GridParams {
        let o = self.object(v, path, false);
        self.keys(o, path, &["n", "half_width"]);
        let g = GridParams {
            n: self.integer(o, path, "n", Some(n), 2).max(2) as usize,
            half_width: self.positive(o, path, "half_width", Some(half_width)),
        };
        if o.map.is_none() {
            return GridParams { n: n as usize, half_width };
        }
        g
    }

    /// `{start, end, count}` span; `start` defaults to 0.
    fn span(&mut self, v: Option<&Value>, path: &str, default: Span) -> Span {
        let o = self.object(v, path, false);
        if o.map.is_none() {
            return default;
        }
        self.keys(o, path, &["start", "end", "count"]);
        let s = Span {
            start: self.number(o, path, "start", Some(default.start)),
            end: self.number(o, path, "end", Some(default.end)),
            count: self.integer(o, path, "count", Some(default.count as u64), 1).max(1) as usize,
        };
        if s.end < s.start {
            self.err(&format!("{path}/end"), "must not precede start");
        }
        s
    }

    fn field_spec(&mut self, v: Option<&Value>, path: &str) -> FieldSpec {
        let o = self.object(v, path, false);
        if o.map.is_none() {
            return FieldSpec::Zero;
        }
        let kind = self.choice(
            o,
            path,
            "type",
            &["zero", "constant", "gaussian", "smoothed_step", "sine"],
            "zero",
        );
        match kind {
            "constant" => {
                self.keys(o, path, &["type", "value"]);
                FieldSpec::Constant {
                    value: self.number(o, path, "value", None),
                }
            }
            "gaussian" => {
                self.keys(o, path, &["type", "a", "scale", "center"]);
                FieldSpec::Gaussian {
                    a: self.positive(o, path, "a", None),
                    scale: self.number(o, path, "scale", Some(1.0)),
                    center: self.number(o, path, "center", Some(0.0)),
                }
            }
            "smoothed_step" => {
                self.keys(o, path, &["type", "a", "center"]);
                FieldSpec::SmoothedStep {
                    a: self.positive(o, path, "a", None),
                    center: self.number(o, path, "center", Some(0.0)),
                }
            }
            "sine" => {
                self.keys(o, path, &["type", "mode", "scale"]);
                FieldSpec::Sine {
                    mode: self.integer(o, path, "mode", Some(1), 1) as u32,
                    scale: self.number(o, path, "scale", Some(1.0)),
                }
            }
            _ => {
                self.keys(o, path, &["type"]);
                FieldSpec::Zero
            }
        }
    }
}

fn validate(doc: &Value) -> Result<Scenario, Vec<SchemaError>> {
    let mut c = Checker { errors: Vec::new() };
    let root = c.object(Some(doc), "", true);
    c.keys(root, "", &["kind", "params", "outputs"]);
    let kind = match c.raw(root, "kind") {
        Some(Value::String(s)) => match Kind::from_name(s) {
            Some(k) => Some(k),
            None => {
                let names: Vec<_> = Kind::ALL.iter().map(|k| k.name()).collect();
                c.err("/kind", format!("unknown kind `{s}`; expected one of {}", names.join(", ")));
                None
            }
        },
        Some(_) => {
            c.err("/kind", "expected a string");
            None
        }
        None => {
            if root.map.is_some() {
                c.err("/kind", "required string is missing");
            }
            None
        }
    };
    let Some(kind) = kind else {
        return Err(c.errors);
    };
    let params_v = c.raw(root, "params");
    let params = match kind {
        Kind::ScalarLaminate => Params::ScalarLaminate(scalar_params(&mut c, params_v)),
        Kind::CombResonance => Params::CombResonance(comb_params(&mut c, params_v)),
        Kind::SpectralGrowthScan => Params::SpectralGrowthScan(growth_params(&mut c, params_v)),
        Kind::SpectralCauchy => Params::SpectralCauchy(cauchy_params(&mut c, params_v)),
        Kind::ChiralFd => Params::ChiralFd(fd_params(&mut c, params_v)),
        Kind::ChiralCascade => Params::ChiralCascade(cascade_params(&mut c, params_v)),
        Kind::ChiralScatter => Params::ChiralScatter(scatter_params(&mut c, params_v)),
        Kind::Characteristics => Params::Characteristics(characteristics_params(&mut c, params_v)),
    };
    // the stationary limit needs a non-zero uniform gyricity
    let skip: &[&str] = match &params {
        Params::ChiralFd(p) if p.config.gamma == 0.0 => &["stationary"],
        _ => &[],
    };
    let declared = c.raw(root, "outputs");
    let outputs = outputs(&mut c, kind, skip, declared);
    if c.errors.is_empty() {
        Ok(Scenario { kind, params, outputs })
    } else {
        Err(c.errors)
    }
}

fn outputs(c: &mut Checker, kind: Kind, skip: &[&str], v: Option<&Value>) -> Vec<OutputSpec> {
    let all = || {
        kind.artifacts()
            .iter()
            .filter(|a| !skip.contains(&a.0))
            .map(|&(name, format)| OutputSpec {
                format,
                path: format!("{name}.{}", format.extension()),
                artifact: name.to_string(),
            })
            .collect()
    };
    let items = match v {
        None => return all(),
        Some(Value::Array(items)) if items.is_empty() => return all(),
        Some(Value::Array(items)) => items,
        Some(_) => {
            c.err("/outputs", "expected an array");
            return Vec::new();
        }
    };
    let mut out = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let path = format!("/outputs/{i}");
        let o = c.object(Some(item), &path, true);
        if o.map.is_none() {
            continue;
        }
        c.keys(o, &path, &["format", "path", "artifact"]);
        let format = match c.raw(o, "format").and_then(Value::as_str) {
            Some(s) => match Format::from_name(s) {
                Some(f) => Some(f),
                None => {
                    c.err(&format!("{path}/format"), "expected csv, json or svg");
                    None
                }
            },
            None => {
                c.err(&format!("{path}/format"), "required string is missing");
                None
            }
        };
        let file = match c.raw(o, "path").and_then(Value::as_str) {
            Some(s) if !is_contained(s) => {
                c.err(&format!("{path}/path"), "must be a relative path inside the output directory");
                None
            }
            Some(s) if out.iter().any(|o: &OutputSpec| o.path == s) => {
                c.err(&format!("{path}/path"), format!("`{s}` is already used by an earlier output"));
                None
            }
            Some(s) => Some(s.to_string()),
            _ => {
                c.err(&format!("{path}/path"), "required non-empty string is missing");
                None
            }
        };
        let Some(format) = format else { continue };
        let candidates: Vec<&str> = kind
            .artifacts()
            .iter()
            .filter(|a| a.1 == format)
            .map(|a| a.0)
            .collect();
        let artifact = match c.raw(o, "artifact") {
            Some(Value::String(s)) if skip.contains(&s.as_str()) => {
                c.err(&format!("{path}/artifact"), format!("`{s}` is not produced for these parameters"));
                None
            }
            Some(Value::String(s)) => {
                if candidates.contains(&s.as_str()) {
                    Some(s.clone())
                } else {
                    c.err(
                        &format!("{path}/artifact"),
                        format!(
                            "{} has no {} artifact `{s}`; available: {}",
                            kind.name(),
                            format.extension(),
                            candidates.join(", ")
                        ),
                    );
                    None
                }
            }
            Some(_) => {
                c.err(&format!("{path}/artifact"), "expected a string");
                None
            }
            None => match candidates.iter().find(|n| !skip.contains(n)) {
                Some(first) => Some(first.to_string()),
                None => {
                    c.err(
                        &format!("{path}/format"),
                        format!("{} writes no {} output", kind.name(), format.extension()),
                    );
                    None
                }
            },
        };
        if let (Some(path), Some(artifact)) = (file, artifact) {
            out.push(OutputSpec { format, path, artifact });
        }
    }
    out
}

fn is_contained(path: &str) -> bool {
    let p = std::path::Path::new(path);
    !path.is_empty()
        && p.components()
            .all(|c| matches!(c, std::path::Component::Normal(_) | std::path::Component::CurDir))
}

fn scalar_params(c: &mut Checker, v: Option<&Value>) -> ScalarLaminateParams {
    let path = "/params";
    let o = c.object(v, path, true);
    c.keys(
        o,
        path,
        &["laminate", "displacement", "velocity", "grid", "times", "edge_cells", "prune_tolerance"],
    );
    let laminate = c.laminate(c.raw(o, "laminate"), "/params/laminate");
    let default_profile = Profile::gaussian(0.1).expect("positive width");
    let displacement = c
        .profile(o, path, "displacement", Some(default_profile))
        .unwrap_or(default_profile);
    let velocity = c.profile(o, path, "velocity", None);
    let period = laminate.t1 + laminate.t2;
    ScalarLaminateParams {
        laminate,
        displacement,
        velocity,
        grid: c.grid(c.raw(o, "grid"), "/params/grid", 1024, 80.0),
        times: c.span(
            c.raw(o, "times"),
            "/params/times",
            Span {
                start: 0.0,
                end: if period.is_finite() { period } else { 1.0 },
                count: 1,
            },
        ),
        edge_cells: c.integer(o, path, "edge_cells", Some(0), 0) as u32,
        prune_tolerance: c.non_negative(o, path, "prune_tolerance", Some(1e-12)),
    }
}

fn comb_params(c: &mut Checker, v: Option<&Value>) -> CombParams {
    let path = "/params";
    let o = c.object(v, path, true);
    c.keys(o, path, &["alpha1", "beta1", "alpha2", "beta2", "half_period", "n_max"]);
    CombParams {
        alpha1: c.positive(o, path, "alpha1", None),
        beta1: c.positive(o, path, "beta1", None),
        alpha2: c.positive(o, path, "alpha2", None),
        beta2: c.positive(o, path, "beta2", None),
        half_period: c.positive(o, path, "half_period", Some(1.0)),
        n_max: c.integer(o, path, "n_max", Some(5), 0) as u32,
    }
}

fn growth_params(c: &mut Checker, v: Option<&Value>) -> GrowthScanParams {
    let path = "/params";
    let o = c.object(v, path, true);
    c.keys(o, path, &["laminate", "k_min", "k_max", "count", "method", "rk4_steps"]);
    let laminate = c.laminate(c.raw(o, "laminate"), "/params/laminate");
    let k_min = c.non_negative(o, path, "k_min", Some(0.0));
    let k_max = c.positive(o, path, "k_max", None);
    if k_max <= k_min {
        c.err("/params/k_max", "must exceed k_min");
    }
    GrowthScanParams {
        laminate,
        k_min,
        k_max,
        count: c.integer(o, path, "count", Some(201), 2) as usize,
        method: match c.choice(o, path, "method", &["transfer", "rk4"], "transfer") {
            "rk4" => GrowthMethod::Rk4,
            _ => GrowthMethod::Transfer,
        },
        rk4_steps: c.integer(o, path, "rk4_steps", Some(10_000), 1) as usize,
    }
}

fn cauchy_params(c: &mut Checker, v: Option<&Value>) -> SpectralCauchyParams {
    let path = "/params";
    let o = c.object(v, path, true);
    c.keys(o, path, &["laminate", "a", "grid", "times", "compare_with_terms"]);
    let laminate = c.laminate(c.raw(o, "laminate"), "/params/laminate");
    let period = laminate.t1 + laminate.t2;
    let grid = c.grid(c.raw(o, "grid"), "/params/grid", 4096, 80.0);
    if !grid.n.is_power_of_two() {
        c.err("/params/grid/n", format!("must be a power of two, got {}", grid.n));
    }
    SpectralCauchyParams {
        laminate,
        a: c.positive(o, path, "a", Some(0.1)),
        grid,
        times: c.span(
            c.raw(o, "times"),
            "/params/times",
            Span {
                start: 0.0,
                end: if period.is_finite() { period } else { 1.0 },
                count: 1,
            },
        ),
        compare_with_terms: c.boolean(o, path, "compare_with_terms", false),
    }
}

fn fd_params(c: &mut Checker, v: Option<&Value>) -> ChiralFdParams {
    let path = "/params";
    let o = c.object(v, path, true);
    c.keys(
        o,
        path,
        &[
            "c1",
            "lambda",
            "gamma",
            "schedule",
            "strips",
            "dx",
            "dt",
            "cfl",
            "x_min",
            "x_max",
            "boundary",
            "coupling",
            "interface_rule",
            "initial",
            "t_end",
            "record_every",
            "x_stride",
        ],
    );
    let c1 = c.positive(o, path, "c1", Some(1.0));
    let lambda = c.positive(o, path, "lambda", None);
    if lambda > 1.0 {
        c.err("/params/lambda", format!("must lie in (0, 1], got {lambda}"));
    }
    let gamma = c.number(o, path, "gamma", Some(0.0));
    let dx = c.positive(o, path, "dx", None);
    let x_min = c.number(o, path, "x_min", None);
    let x_max = c.number(o, path, "x_max", None);
    if x_max <= x_min {
        c.err("/params/x_max", "must exceed x_min");
    }
    let max_speed = c1 * lambda.max(1.0);
    let explicit_dt = c.raw(o, "dt").is_some();
    if explicit_dt && c.raw(o, "cfl").is_some() {
        c.err("/params/cfl", "give either dt or cfl, not both");
    }
    let dt = if explicit_dt {
        c.positive(o, path, "dt", None)
    } else {
        c.positive(o, path, "cfl", Some(0.9)) * dx / max_speed
    };
    let ratio = max_speed * dt / dx;
    if ratio > 1.0 + 1e-12 {
        c.err(
            if explicit_dt { "/params/dt" } else { "/params/cfl" },
            format!(
                "CFL bound violated: max(1, lambda) c1 dt/dx = {ratio} exceeds 1 (dt = {dt}, dx = {dx}, largest stable dt = {})",
                dx / max_speed
            ),
        );
    }

    let mut schedule = Vec::new();
    match c.raw(o, "schedule") {
        None => {}
        Some(Value::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                let p = format!("/params/schedule/{i}");
                let io = c.object(Some(item), &p, true);
                c.keys(io, &p, &["t_start", "t_end", "gamma"]);
                let iv = GyricityInterval {
                    t_start: c.number(io, &p, "t_start", None),
                    t_end: c.number(io, &p, "t_end", None),
                    gamma: c.number(io, &p, "gamma", None),
                };
                if iv.t_end <= iv.t_start {
                    c.err(&format!("{p}/t_end"), "must exceed t_start");
                }
                if let Some(prev) = schedule.last().map(|p: &GyricityInterval| p.t_end) {
                    if iv.t_start < prev {
                        c.err(&format!("{p}/t_start"), "intervals must be ordered and disjoint");
                    }
                }
                schedule.push(iv);
            }
        }
        Some(_) => c.err("/params/schedule", "expected an array of intervals"),
    }
    let mut strips = Vec::new();
    match c.raw(o, "strips") {
        None => {}
        Some(Value::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                let p = format!("/params/strips/{i}");
                let so = c.object(Some(item), &p, true);
                c.keys(so, &p, &["x_start", "x_end", "gamma"]);
                let s = GyricityStrip {
                    x_start: c.number(so, &p, "x_start", None),
                    x_end: c.number(so, &p, "x_end", None),
                    gamma: c.number(so, &p, "gamma", None),
                };
                if s.x_end <= s.x_start {
                    c.err(&format!("{p}/x_end"), "must exceed x_start");
                }
                strips.push(s);
            }
        }
        Some(_) => c.err("/params/strips", "expected an array of strips"),
    }
    let boundary = match c.choice(o, path, "boundary", &["window", "fixed_zero"], "window") {
        "fixed_zero" => Boundary::FixedZero,
        _ => Boundary::Window,
    };
    let coupling = match c.choice(o, path, "coupling", &["full", "incident_driven"], "full") {
        "incident_driven" => Coupling::IncidentDriven,
        _ => Coupling::Full,
    };
    let interface_rule = match c.choice(
        o,
        path,
        "interface_rule",
        &["native", "momentum_continuous"],
        "native",
    ) {
        "momentum_continuous" => InterfaceRule::MomentumContinuous,
        _ => InterfaceRule::Native,
    };
    let config = ChiralConfig {
        c1,
        lambda,
        gamma,
        schedule,
        strips,
        dx,
        dt,
        x_min,
        x_max,
        boundary,
        coupling,
        interface_rule,
    };
    if dx > 0.0 && x_max > x_min {
        let cells = (x_max - x_min) / dx;
        if (cells - cells.round()).abs() > 1e-6 * cells.max(1.0) {
            c.err("/params/dx", "must divide x_max - x_min");
        } else if cells.round() < 2.0 {
            c.err("/params/dx", "domain must hold at least two cells");
        }
    }

    let ip = "/params/initial";
    let io = c.object(c.raw(o, "initial"), ip, true);
    c.keys(io, ip, &["u0", "v0", "ut0", "vt0"]);
    let initial = ChiralInitialSpec {
        u0: c.field_spec(c.raw(io, "u0"), "/params/initial/u0"),
        v0: c.field_spec(c.raw(io, "v0"), "/params/initial/v0"),
        ut0: c.field_spec(c.raw(io, "ut0"), "/params/initial/ut0"),
        vt0: c.field_spec(c.raw(io, "vt0"), "/params/initial/vt0"),
    };
    ChiralFdParams {
        config,
        initial,
        t_end: c.positive(o, path, "t_end", None),
        record_every: c.integer(o, path, "record_every", Some(10), 1) as usize,
        x_stride: c.integer(o, path, "x_stride", Some(1), 1) as usize,
    }
}

fn cascade_params(c: &mut Checker, v: Option<&Value>) -> CascadeParams {
    let path = "/params";
    let o = c.object(v, path, true);
    c.keys(
        o,
        path,
        &[
            "case",
            "phi",
            "psi",
            "alpha",
            "period",
            "n_intervals",
            "c1",
            "c2",
            "interface_phase",
            "x",
            "t_count",
        ],
    );
    let case = c.integer(o, path, "case", None, 1);
    if case > 3 {
        c.err("/params/case", format!("must be 1, 2 or 3, got {case}"));
    }
    let default_profile = Profile::gaussian(10.0).expect("positive width");
    let phi = c.profile(o, path, "phi", Some(default_profile)).unwrap_or(default_profile);
    let psi = c.profile(o, path, "psi", Some(phi)).unwrap_or(phi);
    let alpha = c.number(o, path, "alpha", None);
    if alpha == 0.0 {
        c.err("/params/alpha", "must be non-zero");
    }
    let c1 = c.positive(o, path, "c1", Some(1.0));
    let c2 = c.positive(o, path, "c2", None);
    if c2 >= c1 {
        c.err("/params/c2", "must be smaller than c1");
    }
    CascadeParams {
        case: case as u32,
        phi,
        psi,
        alpha,
        period: c.positive(o, path, "period", Some(1.0)),
        n_intervals: c.integer(o, path, "n_intervals", Some(3), 1) as usize,
        c1,
        c2,
        interface_phase: c.number(o, path, "interface_phase", Some(PI)),
        x: c.span(
            c.raw(o, "x"),
            "/params/x",
            Span {
                start: -6.0,
                end: 6.0,
                count: 241,
            },
        ),
        t_count: c.integer(o, path, "t_count", Some(61), 2) as usize,
    }
}

fn scatter_params(c: &mut Checker, v: Option<&Value>) -> ScatterParams {
    let path = "/params";
    let o = c.object(v, path, true);
    c.keys(o, path, &["beta", "c1", "c2", "x0", "t0", "x", "times", "fd_check"]);
    let fd_check = match c.raw(o, "fd_check") {
        None => None,
        v => {
            let p = "/params/fd_check";
            let fo = c.object(v, p, true);
            c.keys(fo, p, &["dx", "width", "a"]);
            Some(ScatterFdCheck {
                dx: c.positive(fo, p, "dx", Some(0.005)),
                width: c.positive(fo, p, "width", Some(0.02)),
                a: c.positive(fo, p, "a", Some(20.0)),
            })
        }
    };
    ScatterParams {
        beta: c.number(o, path, "beta", None),
        c1: c.positive(o, path, "c1", Some(1.0)),
        c2: c.positive(o, path, "c2", None),
        x0: c.number(o, path, "x0", Some(0.0)),
        t0: c.number(o, path, "t0", Some(0.0)),
        x: c.span(
            c.raw(o, "x"),
            "/params/x",
            Span {
                start: -4.0,
                end: 4.0,
                count: 161,
            },
        ),
        times: c.span(
            c.raw(o, "times"),
            "/params/times",
            Span {
                start: 0.0,
                end: 3.0,
                count: 4,
            },
        ),
        fd_check,
    }
}

fn characteristics_params(c: &mut Checker, v: Option<&Value>) -> CharacteristicsParams {
    let path = "/params";
    let o = c.object(v, path, true);
    match c.choice(o, path, "variant", &["scalar", "chiral"], "scalar") {
        "chiral" => {
            c.keys(o, path, &["variant", "c1", "c2", "period", "n", "case"]);
            let c1 = c.positive(o, path, "c1", Some(1.0));
            let c2 = c.positive(o, path, "c2", None);
            if c2 >= c1 {
                c.err("/params/c2", "must be smaller than c1");
            }
            let case = c.integer(o, path, "case", Some(1), 1);
            if case > 3 {
                c.err("/params/case", format!("must be 1, 2 or 3, got {case}"));
            }
            CharacteristicsParams::Chiral {
                c1,
                c2,
                period: c.positive(o, path, "period", Some(1.0)),
                n: c.integer(o, path, "n", Some(4), 1) as usize,
                case: case as u32,
            }
        }
        _ => {
            c.keys(o, path, &["variant", "laminate", "seeds", "n_interfaces"]);
            CharacteristicsParams::Scalar {
                laminate: c.laminate(c.raw(o, "laminate"), "/params/laminate"),
                seeds: c.numbers(o, path, "seeds", vec![0.0]),
                n_interfaces: c.integer(o, path, "n_interfaces", Some(8), 0) as usize,
            }
        }
    }
}

/// Cascade case from its validated number.
pub fn cascade_case(i: u32) -> CascadeCase {
    CascadeCase::from_index(i).expect("validated")
}
