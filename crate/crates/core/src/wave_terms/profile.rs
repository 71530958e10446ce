use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Number of half-periods kept on each side of the origin when a comb is
/// evaluated pointwise. Exact inside the causal window `|x| + c t < K D`.
pub const DEFAULT_COMB_PERIODS: u32 = 64;

/// Lowest derivative order (deepest antiderivative) with a closed form.
pub const MIN_ORDER: i32 = -2;

/// Base analytic shape of a profile, before differentiation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    /// `exp(-a x^2)`.
    Gaussian { a: f64 },
    /// Heaviside step `H(x)`, with `H(0) = 1/2`.
    Step,
    /// `sum_k (-1)^k H(x - k D)` for `|k| <= periods`.
    AlternatingComb { half_period: f64, periods: u32 },
}

/// Human-facing family label, as used in serialized fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gaussian,
    ErfLike,
    Heaviside,
    Ramp,
    Dirac,
    AlternatingHeavisideComb,
    AlternatingDiracComb,
}

/// A base shape together with a derivative order `m`; `m < 0` denotes the
/// `|m|`-fold antiderivative.
///
/// The Erf-like, ramp and Dirac families are not separate shapes: they are
/// the Gaussian at `m = -1`, the step at `m = -1` and the step at `m = 1`.
/// Keeping one representation per function makes term merging exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileRecord", into = "ProfileRecord")]
pub struct Profile {
    shape: Shape,
    order: i32,
}

impl Profile {
    pub fn gaussian(a: f64) -> Result<Self> {
        require_positive("gaussian width parameter A", a)?;
        Ok(Profile {
            shape: Shape::Gaussian { a },
            order: 0,
        })
    }

    /// Antiderivative of `exp(-a x^2)` vanishing at the origin.
    pub fn erf_like(a: f64) -> Result<Self> {
        Ok(Self::gaussian(a)?.with_order(-1))
    }

    pub fn heaviside() -> Self {
        Profile {
            shape: Shape::Step,
            order: 0,
        }
    }

    /// `x H(x)`.
    pub fn ramp() -> Self {
        Self::heaviside().with_order(-1)
    }

    pub fn dirac() -> Self {
        Self::heaviside().with_order(1)
    }

    /// `sum_k (-1)^k H(x - k D)`, truncated to `|k| <= DEFAULT_COMB_PERIODS`.
    pub fn heaviside_comb(half_period: f64) -> Result<Self> {
        Self::heaviside_comb_with_periods(half_period, DEFAULT_COMB_PERIODS)
    }

    pub fn heaviside_comb_with_periods(half_period: f64, periods: u32) -> Result<Self> {
        require_positive("comb half-period D", half_period)?;
        Ok(Profile {
            shape: Shape::AlternatingComb {
                half_period,
                periods,
            },
            order: 0,
        })
    }

    /// `sum_k (-1)^k delta(x - k D)`: storable, not evaluable.
    pub fn dirac_comb(half_period: f64) -> Result<Self> {
        Ok(Self::heaviside_comb(half_period)?.with_order(1))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn with_order(self, order: i32) -> Self {
        Profile { order, ..self }
    }

    pub fn family(&self) -> Family {
        self.family_and_relative_order().0
    }

    fn family_and_relative_order(&self) -> (Family, i32) {
        match self.shape {
            Shape::Gaussian { .. } if self.order < 0 => (Family::ErfLike, self.order + 1),
            Shape::Gaussian { .. } => (Family::Gaussian, self.order),
            Shape::Step if self.order >= 1 => (Family::Dirac, self.order - 1),
            Shape::Step if self.order == 0 => (Family::Heaviside, 0),
            Shape::Step => (Family::Ramp, self.order + 1),
            Shape::AlternatingComb { .. } if self.order >= 1 => {
                (Family::AlternatingDiracComb, self.order - 1)
            }
            Shape::AlternatingComb { .. } => (Family::AlternatingHeavisideComb, self.order),
        }
    }

    /// Whether pointwise evaluation is defined (no delta functions).
    pub fn is_evaluable(&self) -> bool {
        match self.shape {
            Shape::Gaussian { .. } => self.order >= MIN_ORDER,
            Shape::Step | Shape::AlternatingComb { .. } => {
                (MIN_ORDER..=0).contains(&self.order)
            }
        }
    }

    pub fn derivative(self) -> Self {
        self.with_order(self.order + 1)
    }

    pub fn antiderivative(self) -> Result<Self> {
        if self.order <= MIN_ORDER {
            return Err(Error::UnsupportedAntiderivative(self.to_string()));
        }
        Ok(self.with_order(self.order - 1))
    }

    /// Value of the `m`-th derivative (or `|m|`-fold antiderivative) at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.is_evaluable() {
            return Err(Error::NonEvaluable(self.to_string()));
        }
        Ok(match self.shape {
            Shape::Gaussian { a } => gaussian_derivative(a, self.order, x),
            Shape::Step => step_antiderivative(self.order, x),
            Shape::AlternatingComb {
                half_period,
                periods,
            } => {
                let k_max = periods as i64;
                (-k_max..=k_max)
                    .map(|k| {
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        sign * step_antiderivative(self.order, x - k as f64 * half_period)
                    })
                    .sum()
            }
        })
    }

    /// Total order used for canonical sorting of terms.
    pub(crate) fn canonical_cmp(&self, other: &Self) -> Ordering {
        fn rank(s: &Shape) -> (u8, f64, u32) {
            match *s {
                Shape::Gaussian { a } => (0, a, 0),
                Shape::Step => (1, 0.0, 0),
                Shape::AlternatingComb {
                    half_period,
                    periods,
                } => (2, half_period, periods),
            }
        }
        let (ra, pa, ka) = rank(&self.shape);
        let (rb, pb, kb) = rank(&other.shape);
        ra.cmp(&rb)
            .then(pa.total_cmp(&pb))
            .then(ka.cmp(&kb))
            .then(self.order.cmp(&other.order))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (family, rel) = self.family_and_relative_order();
        let name = serde_json::to_value(family)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        match self.shape {
            Shape::Gaussian { a } => write!(f, "{name}(A={a})")?,
            Shape::Step => write!(f, "{name}")?,
            Shape::AlternatingComb { half_period, .. } => write!(f, "{name}(D={half_period})")?,
        }
        if rel != 0 {
            write!(f, "^({rel})")?;
        }
        Ok(())
    }
}

/// `d^m/dx^m exp(-a x^2)` for `m >= 0`, and the first two antiderivatives.
fn gaussian_derivative(a: f64, order: i32, x: f64) -> f64 {
    let s = a.sqrt();
    match order {
        -2 => {
            let erf_part = 0.5 * (std::f64::consts::PI / a).sqrt() * libm::erf(s * x);
            x * erf_part + (-a * x * x).exp() / (2.0 * a)
        }
        -1 => 0.5 * (std::f64::consts::PI / a).sqrt() * libm::erf(s * x),
        m => {
            // d^m/dx^m e^{-a x^2} = (-sqrt a)^m H_m(sqrt(a) x) e^{-a x^2}
            let y = s * x;
            let m = m as u32;
            let hermite = hermite(m, y);
            (-s).powi(m as i32) * hermite * (-y * y).exp()
        }
    }
}

/// Physicists' Hermite polynomial by the three-term recurrence.
fn hermite(n: u32, y: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * y);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        let h2 = 2.0 * y * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

fn step_antiderivative(order: i32, x: f64) -> f64 {
    match order {
        0 => match x.partial_cmp(&0.0) {
            Some(Ordering::Greater) => 1.0,
            Some(Ordering::Equal) => 0.5,
            _ => 0.0,
        },
        -1 => x.max(0.0),
        -2 => 0.5 * x.max(0.0).powi(2),
        _ => unreachable!("guarded by is_evaluable"),
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRecord {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    half_period: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    periods: Option<u32>,
    #[serde(default)]
    order: i32,
}

impl From<Profile> for ProfileRecord {
    fn from(p: Profile) -> Self {
        let (family, order) = p.family_and_relative_order();
        let (a, half_period, periods) = match p.shape {
            Shape::Gaussian { a } => (Some(a), None, None),
            Shape::Step => (None, None, None),
            Shape::AlternatingComb {
                half_period,
                periods,
            } => (None, Some(half_period), Some(periods)),
        };
        ProfileRecord {
            family,
            a,
            half_period,
            periods,
            order,
        }
    }
}

impl TryFrom<ProfileRecord> for Profile {
    type Error = Error;

    fn try_from(r: ProfileRecord) -> Result<Self> {
        let need_a = || r.a.ok_or_else(|| Error::invalid("a", "missing for gaussian family"));
        let comb = || {
            let d = r
                .half_period
                .ok_or_else(|| Error::invalid("half_period", "missing for comb family"))?;
            Profile::heaviside_comb_with_periods(d, r.periods.unwrap_or(DEFAULT_COMB_PERIODS))
        };
        let (base, shift) = match r.family {
            Family::Gaussian => (Profile::gaussian(need_a()?)?, 0),
            Family::ErfLike => (Profile::gaussian(need_a()?)?, -1),
            Family::Heaviside => (Profile::heaviside(), 0),
            Family::Ramp => (Profile::heaviside(), -1),
            Family::Dirac => (Profile::heaviside(), 1),
            Family::AlternatingHeavisideComb => (comb()?, 0),
            Family::AlternatingDiracComb => (comb()?, 1),
        };
        let order = shift + r.order;
        if order < MIN_ORDER {
            return Err(Error::UnsupportedAntiderivative(format!(
                "{:?} with order {}",
                r.family, r.order
            )));
        }
        Ok(base.with_order(order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_values_at_origin() {
        let g10 = Profile::gaussian(10.0).unwrap();
        assert_eq!(g10.eval(0.0).unwrap(), 1.0);
        assert_eq!(g10.derivative().eval(0.0).unwrap(), 0.0);
        let g1 = Profile::gaussian(1.0).unwrap();
        // (4x^2 - 2) e^{-x^2} at 0
        assert_eq!(g1.with_order(2).eval(0.0).unwrap(), -2.0);
    }

    #[test]
    fn gaussian_second_derivative_matches_symbolic_form() {
        let g = Profile::gaussian(1.0).unwrap().with_order(2);
        for &x in &[-2.0, -0.7, 0.3, 1.5] {
            let expected = (4.0 * x * x - 2.0) * f64::exp(-x * x);
            assert!((g.eval(x).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn heaviside_convention() {
        let h = Profile::heaviside();
        assert_eq!(h.eval(-1.0).unwrap(), 0.0);
        assert_eq!(h.eval(1.0).unwrap(), 1.0);
        assert_eq!(h.eval(0.0).unwrap(), 0.5);
        assert_eq!(Profile::ramp().eval(2.5).unwrap(), 2.5);
        assert_eq!(Profile::ramp().eval(-2.5).unwrap(), 0.0);
    }

    #[test]
    fn dirac_is_not_evaluable() {
        assert!(matches!(
            Profile::dirac().eval(0.3),
            Err(Error::NonEvaluable(_))
        ));
        let comb = Profile::dirac_comb(1.0).unwrap();
        assert!(matches!(comb.eval(0.3), Err(Error::NonEvaluable(_))));
        assert_eq!(comb.family(), Family::AlternatingDiracComb);
    }

    #[test]
    fn families_follow_order() {
        let g = Profile::gaussian(2.0).unwrap();
        assert_eq!(g.antiderivative().unwrap().family(), Family::ErfLike);
        assert_eq!(Profile::heaviside().antiderivative().unwrap().family(), Family::Ramp);
        assert_eq!(Profile::dirac().antiderivative().unwrap().family(), Family::Heaviside);
        assert!(matches!(
            Profile::ramp().antiderivative().unwrap().antiderivative(),
            Err(Error::UnsupportedAntiderivative(_))
        ));
    }

    #[test]
    fn rejects_non_positive_parameters() {
        assert!(Profile::gaussian(0.0).is_err());
        assert!(Profile::gaussian(-1.0).is_err());
        assert!(Profile::heaviside_comb(0.0).is_err());
    }

    #[test]
    fn comb_counts_alternating_steps() {
        let comb = Profile::heaviside_comb_with_periods(1.0, 4).unwrap();
        // x = 0.5: k = -4..=0 contribute, 1 - 1 + 1 - 1 + 1.
        assert_eq!(comb.eval(0.5).unwrap(), 1.0);
        // At x = 1.5: adds k = 1 -> 0.
        assert_eq!(comb.eval(1.5).unwrap(), 0.0);
        // Differences of shifted combs reproduce a single box.
        let box_at = |x: f64| comb.eval(x + 0.25).unwrap() - comb.eval(x - 0.25).unwrap();
        assert_eq!(box_at(0.0), 1.0);
        assert_eq!(box_at(1.0), -1.0);
        assert_eq!(box_at(0.5), 0.0);
    }

    #[test]
    fn erf_like_antiderivatives_are_consistent() {
        let a = 3.0;
        let e1 = Profile::erf_like(a).unwrap();
        let e2 = e1.antiderivative().unwrap();
        let h = 1e-5;
        for &x in &[-1.0, -0.2, 0.0, 0.4, 1.3] {
            let fd1 = (e1.eval(x + h).unwrap() - e1.eval(x - h).unwrap()) / (2.0 * h);
            let g = Profile::gaussian(a).unwrap().eval(x).unwrap();
            assert!((fd1 - g).abs() < 1e-8, "x={x}");
            let fd2 = (e2.eval(x + h).unwrap() - e2.eval(x - h).unwrap()) / (2.0 * h);
            assert!((fd2 - e1.eval(x).unwrap()).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn json_uses_explicit_family_tags() {
        let p = Profile::gaussian(10.0).unwrap().with_order(-1);
        let v = serde_json::to_value(p).unwrap();
        assert_eq!(v["family"], "erf_like");
        assert_eq!(v["order"], 0);
        let back: Profile = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);

        let d: Profile = serde_json::from_str(r#"{"family":"dirac"}"#).unwrap();
        assert_eq!(d, Profile::dirac());
        assert!(serde_json::from_str::<Profile>(r#"{"family":"gaussian"}"#).is_err());
    }
}
