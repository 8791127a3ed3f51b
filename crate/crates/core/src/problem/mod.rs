//! Benchmark instance families, heuristics and the on-disk instance format.

pub mod grid;
pub mod heuristic;
pub mod io;
pub mod lattice;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use grid::{gen_grid, grid_instance, GridSpec};
pub use heuristic::{compute_heuristic, HeuristicError, HeuristicTable};
pub use io::{read_instance, write_instance, InstanceError};
pub use lattice::{gen_lattice, lattice_instance, LatticeSpec};

/// Constraint violations found while validating a generator spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError(pub Vec<String>);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid spec: {}", self.0.join("; "))
    }
}

impl std::error::Error for SpecError {}

/// Provenance recorded alongside a generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub family: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempt: Option<u32>,
    pub spec: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub meta: Option<InstanceMeta>,
}

/// Small hand-checkable graphs shared by tests across the crate.
pub mod fixtures {
    use crate::cost::CostVec;
    use crate::graph::Graph;

    /// `s=0, a=1, b=2, d=3`; edges `s→a (1,3)`, `s→b (3,1)`, `a→d (1,3)`,
    /// `b→d (3,1)`, `s→d (5,5)`. Pareto front `{(2,6), (5,5), (6,2)}`.
    pub fn g1() -> Graph {
        Graph::from_edges(
            4,
            2,
            0,
            3,
            [
                (0, 1, CostVec::from([1, 3])),
                (0, 2, CostVec::from([3, 1])),
                (1, 3, CostVec::from([1, 3])),
                (2, 3, CostVec::from([3, 1])),
                (0, 3, CostVec::from([5, 5])),
            ],
        )
        .expect("fixture graph is valid")
    }

    /// Single edge `s → d` with cost `(4, 7)`.
    pub fn single_edge() -> Graph {
        Graph::from_edges(2, 2, 0, 1, [(0, 1, CostVec::from([4, 7]))]).expect("fixture graph is valid")
    }
}
