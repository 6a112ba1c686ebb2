//! k-forested list coloring of sparse graphs.
//!
//! A proper coloring is k-forested when any two color classes induce a
//! forest of maximum degree below `k`. This crate verifies such colorings,
//! computes maximum average degree exactly, finds the reducible
//! configurations behind the choosability bounds for graphs of bounded mad,
//! colors graphs constructively by peeling and extending, and replays the
//! discharging argument on concrete graphs.

pub mod bounds;
pub mod cli;
pub mod colorer;
pub mod coloring;
pub mod config;
pub mod corpus;
pub mod discharging;
pub mod error;
mod flow;
pub mod format;
pub mod generate;
pub mod graph;
pub mod mad;
pub mod par;
pub mod rational;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
