use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::cost::{weakly_dominates, CostVec};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeuristicError {
    #[error("heuristic at goal vertex {0} is {1}, expected the zero vector")]
    NonZeroGoal(VertexId, CostVec),
    #[error("inconsistent heuristic on edge {from} -> {to}: h({from}) = {h_from} exceeds c + h({to}) = {bound}")]
    Inconsistent {
        from: VertexId,
        to: VertexId,
        h_from: CostVec,
        bound: CostVec,
    },
    #[error("heuristic table has {got} entries for a graph with {expected} vertices")]
    SizeMismatch { got: usize, expected: usize },
}

/// Per-vertex lower bounds on the remaining cost to the goal. `None` marks a
/// vertex from which the goal is unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicTable {
    values: Vec<Option<CostVec>>,
}

impl HeuristicTable {
    pub fn from_values(values: Vec<Option<CostVec>>) -> Self {
        HeuristicTable { values }
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> Option<&CostVec> {
        self.values[v as usize].as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks `h(goal) = 0` and `h(v) ⪯ c(v, v') + h(v')` on every edge whose
    /// endpoints both reach the goal.
    pub fn validate(&self, graph: &Graph) -> Result<(), HeuristicError> {
        if self.values.len() != graph.vertex_count() {
            return Err(HeuristicError::SizeMismatch {
                got: self.values.len(),
                expected: graph.vertex_count(),
            });
        }
        if let Some(h) = self.get(graph.goal()) {
            if !h.is_zero() {
                return Err(HeuristicError::NonZeroGoal(graph.goal(), h.clone()));
            }
        }
        for (u, e) in graph.edges() {
            if let (Some(hu), Some(hv)) = (self.get(u), self.get(e.to)) {
                let bound = &e.cost + hv;
                if !weakly_dominates(hu, &bound) {
                    return Err(HeuristicError::Inconsistent {
                        from: u,
                        to: e.to,
                        h_from: hu.clone(),
                        bound,
                    });
                }
            }
        }
        Ok(())
    }
}

/// One single-objective Dijkstra per cost component, run from the goal over
/// reversed edges.
pub fn compute_heuristic(graph: &Graph) -> HeuristicTable {
    let n = graph.vertex_count();
    let m = graph.num_objectives();

    let mut reverse: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    let mut costs: Vec<&CostVec> = Vec::with_capacity(graph.edge_count());
    for (u, e) in graph.edges() {
        reverse[e.to as usize].push((u, costs.len()));
        costs.push(&e.cost);
    }

    let mut dist = vec![vec![u64::MAX; n]; m];
    for (obj, d) in dist.iter_mut().enumerate() {
        let mut heap = BinaryHeap::new();
        d[graph.goal() as usize] = 0;
        heap.push(Reverse((0u64, graph.goal())));
        while let Some(Reverse((du, u))) = heap.pop() {
            if du > d[u as usize] {
                continue;
            }
            for &(pred, ei) in &reverse[u as usize] {
                let nd = du + costs[ei][obj];
                if nd < d[pred as usize] {
                    d[pred as usize] = nd;
                    heap.push(Reverse((nd, pred)));
                }
            }
        }
    }

    let values = (0..n)
        .map(|v| {
            if dist[0][v] == u64::MAX {
                None
            } else {
                Some(CostVec::from((0..m).map(|i| dist[i][v]).collect::<Vec<_>>()))
            }
        })
        .collect();
    HeuristicTable { values }
}
