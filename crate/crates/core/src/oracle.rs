//! Brute-force Pareto reference solver for small instances.
//!
//! A label-correcting search that keeps, per vertex, a plain list of all
//! non-dominated path costs found so far and compares full cost vectors by
//! linear scan. It shares no search code with the engine and needs no
//! heuristic.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::cost::{weakly_dominates, CostVec};
use crate::graph::{Graph, VertexId};

pub const MAX_ORACLE_VERTICES: usize = 5000;
pub const DEFAULT_LABEL_CAP: usize = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the reference solver: {vertices} vertices (limit {limit})")]
    TooManyVertices { vertices: usize, limit: usize },
    #[error("reference solver exceeded {cap} labels")]
    TooManyLabels { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OracleResult {
    /// Pareto-optimal costs with one witness path each, sorted by cost.
    pub witnesses: BTreeMap<CostVec, Vec<VertexId>>,
}

impl OracleResult {
    pub fn costs(&self) -> Vec<CostVec> {
        self.witnesses.keys().cloned().collect()
    }

    /// One comma-separated cost per line, sorted.
    pub fn to_lines(&self) -> String {
        self.witnesses.keys().map(|c| c.to_csv() + "\n").collect()
    }
}

struct Entry {
    vertex: VertexId,
    cost: CostVec,
    parent: Option<usize>,
    alive: bool,
}

pub fn oracle_pareto(graph: &Graph) -> Result<OracleResult, OracleError> {
    oracle_pareto_capped(graph, DEFAULT_LABEL_CAP)
}

pub fn oracle_pareto_capped(graph: &Graph, label_cap: usize) -> Result<OracleResult, OracleError> {
    let n = graph.vertex_count();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooManyVertices {
            vertices: n,
            limit: MAX_ORACLE_VERTICES,
        });
    }
    let mut entries = vec![Entry {
        vertex: graph.start(),
        cost: CostVec::zeros(graph.num_objectives()),
        parent: None,
        alive: true,
    }];
    // Indices into `entries` of the live non-dominated labels at each vertex.
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); n];
    sets[graph.start() as usize].push(0);
    let mut queue = VecDeque::from([0usize]);

    while let Some(i) = queue.pop_front() {
        if !entries[i].alive {
            continue;
        }
        let u = entries[i].vertex;
        if u == graph.goal() {
            continue;
        }
        let base = entries[i].cost.clone();
        for e in graph.successors(u) {
            let cost = &base + &e.cost;
            let set = &mut sets[e.to as usize];
            if set.iter().any(|&j| weakly_dominates(&entries[j].cost, &cost)) {
                continue;
            }
            set.retain(|&j| {
                let keep = !weakly_dominates(&cost, &entries[j].cost);
                if !keep {
                    entries[j].alive = false;
                }
                keep
            });
            if entries.len() >= label_cap {
                return Err(OracleError::TooManyLabels { cap: label_cap });
            }
            let id = entries.len();
            entries.push(Entry {
                vertex: e.to,
                cost,
                parent: Some(i),
                alive: true,
            });
            set.push(id);
            queue.push_back(id);
        }
    }

    let mut witnesses = BTreeMap::new();
    for &i in &sets[graph.goal() as usize] {
        let mut path = Vec::new();
        let mut cur = Some(i);
        while let Some(j) = cur {
            path.push(entries[j].vertex);
            cur = entries[j].parent;
        }
        path.reverse();
        witnesses.insert(entries[i].cost.clone(), path);
    }
    Ok(OracleResult { witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::fixtures::{g1, single_edge};

    fn c(x: &[u64]) -> CostVec {
        CostVec::from_slice(x)
    }

    #[test]
    fn g1_front() {
        let r = oracle_pareto(&g1()).unwrap();
        assert_eq!(r.costs(), vec![c(&[2, 6]), c(&[5, 5]), c(&[6, 2])]);
        assert_eq!(r.to_lines(), "2,6\n5,5\n6,2\n");
        for (cost, path) in &r.witnesses {
            assert!(g1().path_attains(path, cost));
        }
    }

    #[test]
    fn single_edge_front() {
        let r = oracle_pareto(&single_edge()).unwrap();
        assert_eq!(r.witnesses.get(&c(&[4, 7])), Some(&vec![0, 1]));
    }

    #[test]
    fn duplicate_costs_kept_once() {
        let g = Graph::from_edges(
            4,
            2,
            0,
            3,
            [
                (0, 1, c(&[1, 1])),
                (0, 2, c(&[1, 1])),
                (1, 3, c(&[1, 1])),
                (2, 3, c(&[1, 1])),
            ],
        )
        .unwrap();
        assert_eq!(oracle_pareto(&g).unwrap().costs(), vec![c(&[2, 2])]);
    }

    #[test]
    fn size_guards() {
        let big = Graph::new(MAX_ORACLE_VERTICES + 1, 2, 0, 1).unwrap();
        assert!(matches!(oracle_pareto(&big), Err(OracleError::TooManyVertices { .. })));
        assert_eq!(oracle_pareto_capped(&g1(), 2), Err(OracleError::TooManyLabels { cap: 2 }));
    }
}
