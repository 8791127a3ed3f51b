//! Directed multi-objective graph with explicit adjacency lists.

use thiserror::Error;

use crate::cost::{CostVec, MAX_EDGE_COMPONENT};

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("objective count must be at least 1")]
    NoObjectives,
    #[error("vertex {vertex} out of range (vertex_count = {count})")]
    VertexOutOfRange { vertex: u64, count: usize },
    #[error("edge {index} ({from} -> {to}) has {got} cost components, expected {expected}")]
    CostLength {
        index: usize,
        from: VertexId,
        to: VertexId,
        got: usize,
        expected: usize,
    },
    #[error("edge {index} ({from} -> {to}) has component {value} above the limit {MAX_EDGE_COMPONENT}")]
    CostTooLarge {
        index: usize,
        from: VertexId,
        to: VertexId,
        value: u64,
    },
    #[error("vertex count {0} does not fit in a 32-bit vertex id")]
    TooManyVertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub to: VertexId,
    pub cost: CostVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_objectives: usize,
    adjacency: Vec<Vec<Edge>>,
    start: VertexId,
    goal: VertexId,
}

impl Graph {
    /// Creates a graph with no edges.
    pub fn new(
        vertex_count: usize,
        num_objectives: usize,
        start: VertexId,
        goal: VertexId,
    ) -> Result<Self, GraphError> {
        if num_objectives == 0 {
            return Err(GraphError::NoObjectives);
        }
        if vertex_count > u32::MAX as usize {
            return Err(GraphError::TooManyVertices(vertex_count));
        }
        for v in [start, goal] {
            if v as usize >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v as u64,
                    count: vertex_count,
                });
            }
        }
        Ok(Graph {
            num_objectives,
            adjacency: vec![Vec::new(); vertex_count],
            start,
            goal,
        })
    }

    /// Builds a graph from `(from, to, cost)` triples, keeping their order
    /// within each adjacency list.
    pub fn from_edges<I>(
        vertex_count: usize,
        num_objectives: usize,
        start: VertexId,
        goal: VertexId,
        edges: I,
    ) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, CostVec)>,
    {
        let mut g = Graph::new(vertex_count, num_objectives, start, goal)?;
        for (from, to, cost) in edges {
            g.add_edge(from, to, cost)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, from: VertexId, to: VertexId, cost: CostVec) -> Result<(), GraphError> {
        let index = self.edge_count();
        let count = self.vertex_count();
        for v in [from, to] {
            if v as usize >= count {
                return Err(GraphError::VertexOutOfRange { vertex: v as u64, count });
            }
        }
        if cost.len() != self.num_objectives {
            return Err(GraphError::CostLength {
                index,
                from,
                to,
                got: cost.len(),
                expected: self.num_objectives,
            });
        }
        if let Some(value) = cost.iter().find(|&c| c > MAX_EDGE_COMPONENT) {
            return Err(GraphError::CostTooLarge { index, from, to, value });
        }
        self.adjacency[from as usize].push(Edge { to, cost });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn num_objectives(&self) -> usize {
        self.num_objectives
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn goal(&self) -> VertexId {
        self.goal
    }

    #[inline]
    pub fn successors(&self, v: VertexId) -> &[Edge] {
        &self.adjacency[v as usize]
    }

    /// Iterates `(from, edge)` in adjacency order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, &Edge)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |e| (u as VertexId, e)))
    }

    /// Sorts every adjacency list by target vertex (stable).
    pub fn canonicalize(&mut self) {
        for list in &mut self.adjacency {
            list.sort_by_key(|e| e.to);
        }
    }

    /// Cost of the first edge `from -> to`, taking the cheapest
    /// lexicographically when parallel edges exist.
    pub fn edge_cost(&self, from: VertexId, to: VertexId) -> Option<&CostVec> {
        self.successors(from)
            .iter()
            .filter(|e| e.to == to)
            .map(|e| &e.cost)
            .min()
    }

    /// Whether `path` is a walk in the graph whose summed edge costs equal
    /// `expected` for some choice among parallel edges.
    pub fn path_attains(&self, path: &[VertexId], expected: &CostVec) -> bool {
        if path.is_empty() {
            return false;
        }
        // Parallel edges can carry different costs, so track every reachable sum.
        let mut sums = vec![CostVec::zeros(self.num_objectives)];
        for w in path.windows(2) {
            let mut next = Vec::new();
            for e in self.successors(w[0]).iter().filter(|e| e.to == w[1]) {
                for s in &sums {
                    let t = s + &e.cost;
                    if !next.contains(&t) {
                        next.push(t);
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            sums = next;
        }
        sums.contains(expected)
    }

    /// Sum of the cheapest edges along `path`, or `None` if some step is not an edge.
    pub fn path_cost(&self, path: &[VertexId]) -> Option<CostVec> {
        let mut total = CostVec::zeros(self.num_objectives);
        for w in path.windows(2) {
            total = &total + self.edge_cost(w[0], w[1])?;
        }
        Some(total)
    }

    pub fn max_out_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}
