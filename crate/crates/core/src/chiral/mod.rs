//! Coupled longitudinal and transverse waves in a gyroscopic rod.

mod cascade;
mod characteristics;
mod config;
mod fd;
mod scatter;
mod stationary;

pub use cascade::{
    cascade_solve, CascadeCase, CascadeConfig, CascadeInterval, CascadeSolution, CASCADE_PRUNE_TOLERANCE,
};
pub use characteristics::{chiral_characteristics, first_eigenvalue_nonchiral};
pub use config::{Boundary, ChiralConfig, Coupling, GyricityInterval, GyricityStrip, InterfaceRule};
pub use fd::{fd_simulate, rod_energy, ChiralInitial, ChiralSolver, ChiralState, EnergySample, FieldRecord, InitialProfile};
pub use scatter::{coupled_scatter_amplitude, spatial_scatter, SpatialScatter};
pub use stationary::{interface_jump, jump_matrix, stationary_solution, stationary_velocity, RotationMatrix};
