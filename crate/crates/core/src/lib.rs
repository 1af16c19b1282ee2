//! Exact minimum vertex cover by branch and reduce.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod lp;
pub mod packing;
pub mod reductions;
pub mod solver;
pub mod state;

pub use error::{Error, Result};
pub use graph::{is_vertex_cover, Graph, Vertex};
pub use solver::{solve, SolveResult, SolverConfig};
pub use state::SearchState;
