//! Workbench for a cognitive-consequence algebra over finite
//! universes: Tarski-style consequence operators, deductive-set
//! lattices, consequence-wise-open families, a cognitive pseudometric
//! with convergence and black-hole detection, set-family filters and
//! ideals, and practical-whole environment topologies — all driven by
//! scenario files through the `ccspace` CLI and machine-checked into
//! deterministic reports.

pub mod commands;
pub mod consequence;
pub mod environment;
pub mod error;
pub mod families;
pub mod lattice;
pub mod metric;
pub mod report;
pub mod scenario;
pub mod set;
pub mod universe;

pub use error::Error;
