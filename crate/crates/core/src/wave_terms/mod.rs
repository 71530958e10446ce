//! Closed-form fields as finite sums of traveling waves.
//!
//! Every engine that produces an exact solution (interface splitting, the
//! chiral cascade, the spatial scatterer) writes its result as a
//! [`WaveField`]: a canonical list of terms
//! `coefficient * profile^(m)(x - s c t + shift)`.

mod dalembert;
mod field;
mod profile;

pub use dalembert::dalembert;
pub use field::{
    Direction, Polarization, SpatialTerm, WaveField, WaveTerm, ARGUMENT_TOLERANCE,
};
pub use profile::{Family, Profile, Shape, DEFAULT_COMB_PERIODS, MIN_ORDER};

use crate::error::Result;

/// Value of the profile's `m`-th derivative (antiderivative for `m < 0`).
pub fn eval_profile(profile: &Profile, x: f64) -> Result<f64> {
    profile.eval(x)
}

/// Sum of the field's terms of one polarization at `(x, t)`.
pub fn eval_field(field: &WaveField, x: f64, t: f64, polarization: Polarization) -> Result<f64> {
    field.eval(x, t, polarization)
}
