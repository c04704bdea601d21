//! Clique-problem toolkit.
//!
//! Exact, heuristic and metaheuristic solvers for maximum (weight) clique,
//! minimum-size clique and independent set, together with reductions that
//! turn resource-allocation and coding problems from wireless networks into
//! clique searches and decode the answers back.

pub mod apps;
pub mod bitset;
pub mod cli;
pub mod dimacs;
pub mod error;
pub mod graph;
pub mod ip;
pub mod mapping;
pub mod rng;
pub mod scenario;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use solver::{Algorithm, SolveOptions, SolveResult};
