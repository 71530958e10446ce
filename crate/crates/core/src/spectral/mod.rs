//! Per-wavenumber propagation: transfer matrices, monodromy and Floquet
//! growth, RK4 for continuously varying coefficients, and an FFT solver
//! for the whole Cauchy problem.

mod cauchy;
mod ode;
mod transfer;

pub use cauchy::{spectral_cauchy, InitialData, SampledField, SpectralGrid, DEFAULT_GRID_SIZE};
pub use ode::{
    integrate_monodromy, integrate_real, integrate_spectrum, mathieu_monodromy, SpectralState,
};
pub use transfer::{
    floquet_from_trace, floquet_growth, growth_scan, growth_table, k_range, monodromy,
    phase_transfer, propagator_until, system_matrix, FloquetGrowth, GrowthRow, TransferMatrix,
    TRACE_TOLERANCE,
};
