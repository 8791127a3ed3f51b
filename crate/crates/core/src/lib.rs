//! Multi-objective best-first search with partial expansion and iterative
//! deepening near the goal, plus benchmark instance generators and a
//! brute-force reference solver.

pub mod bench;
pub mod cost;
pub mod frontier;
pub mod graph;
pub mod label;
pub mod oracle;
pub mod problem;
pub mod search;

pub use cost::{Bound, BoundVec, CostVec};
pub use graph::{Graph, VertexId};
pub use search::{rme_moa_star, solve, SearchConfig, SearchResult, Termination};
