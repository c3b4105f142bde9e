//! Evolving network topologies for distributed dual averaging.
//!
//! The crate covers three layers:
//!
//! * topology design: choosing which candidate edges to add to a base graph
//!   ([`design`], [`protocols`]) and when to add them ([`dda::greedy_schedule`]);
//! * simulation: distributed dual averaging over the resulting time-varying
//!   network ([`dda`]);
//! * theory: mixing-time, regret and convergence-time bounds ([`theory`]).
//!
//! [`experiment`] ties them together for sweeps and CSV output.

pub mod config;
pub mod dda;
pub mod design;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod protocols;
pub mod rng;
pub mod spectral;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{CostModel, DynamicNetwork, Edge, Graph};
pub use matrix::SymMatrix;
pub use spectral::EigPair;
