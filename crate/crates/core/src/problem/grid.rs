//! Random-cost `2^k`-connected grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Instance, InstanceMeta, SpecError};
use crate::cost::CostVec;
use crate::graph::{Graph, VertexId};

/// Move offsets `(dx, dy)` of the 2^k neighbourhood. Each level inserts the
/// moves lying between adjacent directions of the previous level, so the
/// first `2^k` entries form the `k`-neighbourhood.
pub const NEIGHBOR_OFFSETS: [(i32, i32); 32] = [
    // k = 2
    (1, 0),
    (0, 1),
    (-1, 0),
    (0, -1),
    // k = 3
    (1, 1),
    (-1, 1),
    (-1, -1),
    (1, -1),
    // k = 4
    (2, 1),
    (1, 2),
    (-1, 2),
    (-2, 1),
    (-2, -1),
    (-1, -2),
    (1, -2),
    (2, -1),
    // k = 5
    (3, 1),
    (3, 2),
    (2, 3),
    (1, 3),
    (-1, 3),
    (-2, 3),
    (-3, 2),
    (-3, 1),
    (-3, -1),
    (-3, -2),
    (-2, -3),
    (-1, -3),
    (1, -3),
    (2, -3),
    (3, -2),
    (3, -1),
];

pub fn neighbor_offsets(k: u32) -> &'static [(i32, i32)] {
    &NEIGHBOR_OFFSETS[..1usize << k]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub k: u32,
    pub m: usize,
    pub cost_min: u64,
    pub cost_max: u64,
    #[serde(default)]
    pub obstacle_density: f64,
    pub seed: u64,
}

impl GridSpec {
    /// `rows x cols`, costs in `1..=10`, no obstacles.
    pub fn new(rows: usize, cols: usize, k: u32, m: usize, seed: u64) -> Self {
        GridSpec {
            rows,
            cols,
            k,
            m,
            cost_min: 1,
            cost_max: 10,
            obstacle_density: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let mut violations = Vec::new();
        if !(2..=5).contains(&self.k) {
            violations.push(format!("k = {} outside 2..=5", self.k));
        }
        if self.rows < 2 || self.cols < 2 {
            violations.push(format!("grid {}x{} smaller than 2x2", self.rows, self.cols));
        }
        if self.m == 0 {
            violations.push("M must be at least 1".to_string());
        }
        if self.cost_min < 1 {
            violations.push("cost_min must be at least 1".to_string());
        }
        if self.cost_min > self.cost_max {
            violations.push(format!("cost range {}..={} is empty", self.cost_min, self.cost_max));
        }
        if !(0.0..1.0).contains(&self.obstacle_density) {
            violations.push(format!("obstacle density {} outside [0, 1)", self.obstacle_density));
        }
        if self.rows.saturating_mul(self.cols) > u32::MAX as usize {
            violations.push("too many cells".to_string());
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(SpecError(violations))
        }
    }

    pub fn cell(&self, row: usize, col: usize) -> VertexId {
        (row * self.cols + col) as VertexId
    }
}

/// Start is the top-left cell, goal the bottom-right one. Every directed edge
/// draws each cost component independently and uniformly from the cost range.
pub fn gen_grid(spec: &GridSpec) -> Result<Graph, SpecError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.rows * spec.cols;
    let start = spec.cell(0, 0);
    let goal = spec.cell(spec.rows - 1, spec.cols - 1);

    let mut blocked = vec![false; n];
    if spec.obstacle_density > 0.0 {
        for (i, b) in blocked.iter_mut().enumerate() {
            *b = rng.gen_bool(spec.obstacle_density);
            if i as VertexId == start || i as VertexId == goal {
                *b = false;
            }
        }
    }

    let mut graph = Graph::new(n, spec.m, start, goal).map_err(|e| SpecError(vec![e.to_string()]))?;
    for row in 0..spec.rows {
        for col in 0..spec.cols {
            let from = spec.cell(row, col);
            if blocked[from as usize] {
                continue;
            }
            for &(dx, dy) in neighbor_offsets(spec.k) {
                let (r2, c2) = (row as i64 + dy as i64, col as i64 + dx as i64);
                if r2 < 0 || c2 < 0 || r2 >= spec.rows as i64 || c2 >= spec.cols as i64 {
                    continue;
                }
                let to = spec.cell(r2 as usize, c2 as usize);
                if blocked[to as usize] {
                    continue;
                }
                let cost: Vec<u64> = (0..spec.m)
                    .map(|_| rng.gen_range(spec.cost_min..=spec.cost_max))
                    .collect();
                graph
                    .add_edge(from, to, CostVec::from(cost))
                    .expect("generated edge is in range");
            }
        }
    }
    graph.canonicalize();
    Ok(graph)
}

pub fn grid_instance(spec: &GridSpec) -> Result<Instance, SpecError> {
    let graph = gen_grid(spec)?;
    Ok(Instance {
        graph,
        meta: Some(InstanceMeta {
            family: "grid".to_string(),
            seed: spec.seed,
            attempt: None,
            spec: serde_json::to_value(spec).expect("grid spec serializes"),
        }),
    })
}
