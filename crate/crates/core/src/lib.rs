//! Waves in temporally stratified and chiral media.
//!
//! Three engines share one problem family and check each other:
//!
//! * [`wave_terms`] and [`scalar_laminate`]: exact traveling-wave sums split
//!   at every temporal interface.
//! * [`spectral`]: per-wavenumber transfer matrices, monodromy and Floquet
//!   growth, plus a fixed-step RK4 path for continuously varying media.
//! * [`chiral`]: coupled longitudinal/transverse waves with a gyroscopic
//!   term, by finite differences and by closed-form cascades.

// `!(a > b)` is how NaN parameters get rejected along with bad ranges.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chiral;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod scalar_laminate;
pub mod spectral;
pub mod table;
pub mod wave_terms;

pub use error::{Error, Result};
