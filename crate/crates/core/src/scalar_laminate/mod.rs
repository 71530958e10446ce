//! Exact propagation of the scalar Cauchy problem through a temporal
//! laminate by splitting every traveling wave at each interface.

mod characteristics;
mod comb;
mod medium;
mod split;

pub use characteristics::characteristics;
pub use comb::{comb_laminate, comb_origin_series, comb_origin_value, comb_origin_value_split};
pub use medium::{Interface, Layer, MediumPhase, TemporalLaminate, EQUAL_DISTANCE_TOLERANCE};
pub use split::{
    edge_amplitude, edge_terms, growth_base, initial_field, propagate, propagate_stages,
    split_field, split_weights, transmission_ratio, Stage, DEFAULT_PRUNE_TOLERANCE,
    MATCHED_IMPEDANCE_TOLERANCE,
};
