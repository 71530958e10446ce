//! Scenario-driven front end for the `tlam-core` engines.
//!
//! A scenario is one JSON document: a `kind`, its `params` and the list of
//! `outputs` to write. [`Scenario::from_json`] checks it, [`run`] executes it
//! and records a manifest with checksums of everything written.

pub mod compare;
pub mod error;
pub mod figures;
pub mod run;
pub mod scenario;

pub use compare::{compare_csv, compare_tables, CompareReport, Norm};
pub use error::{CliError, CliResult, SchemaError};
pub use figures::{figure_scenarios, reproduce_figure, FIGURES};
pub use run::{execute, run, Outcome, RunManifest, ENGINE_OPERATIONS};
pub use scenario::{Format, Kind, Params, Scenario};
