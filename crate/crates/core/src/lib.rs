//! Spatio-temporal multilevel coarsening for the capacitated vehicle routing
//! problem with time windows.
//!
//! The pipeline reads a Solomon instance ([`instance`]), builds a graph
//! ([`graph`]), merges customers into super-nodes ([`coarsen`]), solves the
//! reduced graph with a construction heuristic ([`heuristics`]), expands the
//! routes back onto the original customers ([`inflate`]) and scores them
//! ([`evaluation`]). [`tuning`] runs seeded random search over the
//! coarsening parameters.

pub mod cli;
pub mod coarsen;
pub mod document;
pub mod error;
pub mod evaluation;
pub mod graph;
pub mod heuristics;
pub mod inflate;
pub mod instance;
pub mod pipeline;
pub mod plot;
pub mod report;
pub mod tuning;

pub use error::{Error, Result};
