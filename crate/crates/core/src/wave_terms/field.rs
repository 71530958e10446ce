use std::cmp::Ordering;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::profile::{Profile, Shape};
use crate::error::{require_positive, Error, Result};

/// Relative tolerance under which two speeds or shifts name the same
/// traveling argument.
pub const ARGUMENT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Argument `x - c t + shift`.
    #[serde(rename = "+")]
    Forward,
    /// Argument `x + c t + shift`.
    #[serde(rename = "-")]
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarization {
    Scalar,
    Longitudinal,
    Transverse,
}

/// `coefficient * profile(x - direction * speed * t + shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveTerm {
    pub coefficient: f64,
    pub direction: Direction,
    pub speed: f64,
    pub shift: f64,
    pub polarization: Polarization,
    pub profile: Profile,
}

impl WaveTerm {
    pub fn new(
        coefficient: f64,
        direction: Direction,
        speed: f64,
        shift: f64,
        polarization: Polarization,
        profile: Profile,
    ) -> Result<Self> {
        require_positive("speed", speed)?;
        if !coefficient.is_finite() || !shift.is_finite() {
            return Err(Error::invalid("term", "coefficient and shift must be finite"));
        }
        Ok(WaveTerm {
            coefficient,
            direction,
            speed,
            shift,
            polarization,
            profile,
        })
    }

    /// Scalar-polarized term.
    pub fn scalar(
        coefficient: f64,
        direction: Direction,
        speed: f64,
        shift: f64,
        profile: Profile,
    ) -> Result<Self> {
        Self::new(coefficient, direction, speed, shift, Polarization::Scalar, profile)
    }

    pub fn argument(&self, x: f64, t: f64) -> f64 {
        x - self.direction.sign() * self.speed * t + self.shift
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        Ok(self.coefficient * self.profile.eval(self.argument(x, t))?)
    }

    /// Shift of the same function written in terms of `x` alone at time `t`.
    pub fn frozen_shift(&self, t: f64) -> f64 {
        self.shift - self.direction.sign() * self.speed * t
    }

    pub fn time_derivative(&self) -> WaveTerm {
        WaveTerm {
            coefficient: -self.direction.sign() * self.speed * self.coefficient,
            profile: self.profile.derivative(),
            ..*self
        }
    }

    fn same_argument(&self, other: &WaveTerm) -> bool {
        self.polarization == other.polarization
            && self.direction == other.direction
            && close(self.speed, other.speed)
            && close(self.shift, other.shift)
    }

    fn canonical_cmp(&self, other: &WaveTerm) -> Ordering {
        self.polarization
            .cmp(&other.polarization)
            .then(self.direction.cmp(&other.direction))
            .then(self.speed.total_cmp(&other.speed))
            .then(self.shift.total_cmp(&other.shift))
            .then(self.profile.canonical_cmp(&other.profile))
    }
}

pub(crate) fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= ARGUMENT_TOLERANCE * 1f64.max(a.abs()).max(b.abs())
}

/// One summand of a field frozen at a fixed time: `coefficient * profile(x + shift)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpatialTerm {
    pub coefficient: f64,
    pub shift: f64,
    pub profile: Profile,
}

impl SpatialTerm {
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.coefficient * self.profile.eval(x + self.shift)?)
    }
}

/// A finite sum of traveling-wave terms, kept in canonical order with
/// duplicate arguments merged.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<WaveTerm>", into = "Vec<WaveTerm>")]
pub struct WaveField {
    terms: Vec<WaveTerm>,
}

impl From<Vec<WaveTerm>> for WaveField {
    fn from(terms: Vec<WaveTerm>) -> Self {
        WaveField::new(terms)
    }
}

impl From<WaveField> for Vec<WaveTerm> {
    fn from(f: WaveField) -> Self {
        f.terms
    }
}

impl FromIterator<WaveTerm> for WaveField {
    fn from_iter<I: IntoIterator<Item = WaveTerm>>(iter: I) -> Self {
        WaveField::new(iter.into_iter().collect())
    }
}

impl WaveField {
    pub fn new(mut terms: Vec<WaveTerm>) -> Self {
        terms.sort_by(WaveTerm::canonical_cmp);
        let mut merged: Vec<WaveTerm> = Vec::with_capacity(terms.len());
        for term in terms {
            // Near-equal shifts may be separated by a different profile, so
            // scan back over the whole run sharing this argument.
            let mut target = None;
            for (j, prev) in merged.iter().enumerate().rev() {
                if !prev.same_argument(&term) {
                    break;
                }
                if prev.profile == term.profile {
                    target = Some(j);
                    break;
                }
            }
            match target {
                Some(j) => merged[j].coefficient += term.coefficient,
                None => merged.push(term),
            }
        }
        WaveField { terms: merged }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[WaveTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WaveTerm> {
        self.terms.iter()
    }

    /// Sum over the terms of the requested polarization.
    pub fn eval(&self, x: f64, t: f64, polarization: Polarization) -> Result<f64> {
        self.terms
            .iter()
            .filter(|term| term.polarization == polarization)
            .map(|term| term.eval(x, t))
            .sum()
    }

    pub fn polarization(&self, polarization: Polarization) -> WaveField {
        WaveField {
            terms: self
                .terms
                .iter()
                .filter(|t| t.polarization == polarization)
                .copied()
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> WaveField {
        self.map_terms(|t| WaveTerm {
            coefficient: t.coefficient * factor,
            ..*t
        })
    }

    fn map_terms(&self, f: impl FnMut(&WaveTerm) -> WaveTerm) -> WaveField {
        WaveField::new(self.terms.iter().map(f).collect())
    }

    fn try_map_terms(&self, f: impl FnMut(&WaveTerm) -> Result<WaveTerm>) -> Result<WaveField> {
        Ok(WaveField::new(
            self.terms.iter().map(f).collect::<Result<Vec<_>>>()?,
        ))
    }

    /// Chain rule: each term picks up `-direction * speed` and one derivative.
    pub fn time_derivative(&self) -> WaveField {
        self.map_terms(WaveTerm::time_derivative)
    }

    /// Inverse of [`WaveField::time_derivative`] up to an additive constant
    /// per traveling argument.
    pub fn time_antiderivative(&self) -> Result<WaveField> {
        self.try_map_terms(|t| {
            Ok(WaveTerm {
                coefficient: -t.coefficient / (t.direction.sign() * t.speed),
                profile: t.profile.antiderivative()?,
                ..*t
            })
        })
    }

    /// Term-wise antiderivative in the profile argument.
    pub fn antiderivative(&self) -> Result<WaveField> {
        self.try_map_terms(|t| {
            Ok(WaveTerm {
                profile: t.profile.antiderivative()?,
                ..*t
            })
        })
    }

    /// Term-wise derivative in `x`.
    pub fn space_derivative(&self) -> WaveField {
        self.map_terms(|t| WaveTerm {
            profile: t.profile.derivative(),
            ..*t
        })
    }

    /// Drops terms with `|coefficient| < tol`.
    pub fn prune(&self, tol: f64) -> WaveField {
        assert!(tol >= 0.0, "prune tolerance must be non-negative");
        WaveField {
            terms: self
                .terms
                .iter()
                .filter(|t| t.coefficient.abs() >= tol)
                .copied()
                .collect(),
        }
    }

    /// The field of one polarization frozen at time `t`, as functions of `x`.
    pub fn snapshot(&self, t: f64, polarization: Polarization) -> Vec<SpatialTerm> {
        self.terms
            .iter()
            .filter(|term| term.polarization == polarization)
            .map(|term| SpatialTerm {
                coefficient: term.coefficient,
                shift: term.frozen_shift(t),
                profile: term.profile,
            })
            .collect()
    }

    /// Replaces every comb term by its individual shifted steps (or deltas)
    /// with `|k| <= periods`.
    pub fn expand_combs(&self) -> WaveField {
        let mut out = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            match term.profile.shape() {
                Shape::AlternatingComb {
                    half_period,
                    periods,
                } => {
                    let base = Profile::heaviside().with_order(term.profile.order());
                    let k_max = periods as i64;
                    for k in -k_max..=k_max {
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        out.push(WaveTerm {
                            coefficient: sign * term.coefficient,
                            shift: term.shift - k as f64 * half_period,
                            profile: base,
                            ..*term
                        });
                    }
                }
                _ => out.push(*term),
            }
        }
        WaveField::new(out)
    }

    /// Equal term lists up to `tol` in every real attribute.
    pub fn approx_eq(&self, other: &WaveField, tol: f64) -> bool {
        self.len() == other.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| {
                a.polarization == b.polarization
                    && a.direction == b.direction
                    && a.profile == b.profile
                    && (a.coefficient - b.coefficient).abs() <= tol
                    && (a.speed - b.speed).abs() <= tol
                    && (a.shift - b.shift).abs() <= tol
            })
    }
}

impl Add for WaveField {
    type Output = WaveField;

    fn add(mut self, rhs: WaveField) -> WaveField {
        self.terms.extend(rhs.terms);
        WaveField::new(self.terms)
    }
}

impl<'a> Add<&'a WaveField> for &'a WaveField {
    type Output = WaveField;

    fn add(self, rhs: &'a WaveField) -> WaveField {
        self.clone() + rhs.clone()
    }
}
