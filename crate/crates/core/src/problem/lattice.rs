//! Differentially constrained state lattice for a planar robot.
//!
//! Poses are `(x, y, heading)` with 8 headings 45° apart. Motion primitives
//! are written as move strings over three letters, each advancing one cell:
//!
//! * `F` moves forward along the current heading,
//! * `L` turns 45° left and then moves,
//! * `R` turns 45° right and then moves.
//!
//! An axis-aligned step costs 10 length units and a diagonal one 14. The
//! turning cost counts 45° turns. The optional safety cost counts obstacle
//! cells in the 8-neighbourhood of the primitive's end cell. A primitive is
//! dropped when any cell it passes through is out of bounds or blocked.
//!
//! The goal is the bottom-right cell with any heading, modelled as a virtual
//! vertex reached from each of its 8 poses by a zero-cost edge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Instance, InstanceMeta, SpecError};
use crate::cost::CostVec;
use crate::graph::{Graph, VertexId};

pub const HEADINGS: usize = 8;

/// The primitive table, identical for every start heading.
pub const PRIMITIVES: [&str; 15] = [
    "F", "FF", "FFF", // straight
    "L", "R", // short turns
    "FL", "FR", // 45° arcs
    "FFL", "FFR", // long 45° arcs
    "FLL", "FRR", // 90° arcs
    "FLR", "FRL", // lane changes
    "LL", "RR", // tight 90° turns
];

const STRAIGHT_LEN: u64 = 10;
const DIAGONAL_LEN: u64 = 14;
/// Attempts at drawing an obstacle map with a start-to-goal path.
const MAX_ATTEMPTS: u32 = 1000;

/// Unit step of each heading, counter-clockwise from +x.
const DIRECTIONS: [(i32, i32); HEADINGS] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

/// A primitive resolved for one start heading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motion {
    /// Offsets of every cell entered, relative to the start cell.
    pub cells: Vec<(i32, i32)>,
    pub end_heading: usize,
    pub length: u64,
    pub turns: u64,
}

impl Motion {
    pub fn end(&self) -> (i32, i32) {
        *self.cells.last().expect("primitive moves at least once")
    }
}

pub fn resolve_primitive(moves: &str, heading: usize) -> Motion {
    let mut h = heading;
    let (mut x, mut y) = (0i32, 0i32);
    let mut cells = Vec::with_capacity(moves.len());
    let (mut length, mut turns) = (0, 0);
    for step in moves.chars() {
        match step {
            'F' => {}
            'L' => {
                h = (h + 1) % HEADINGS;
                turns += 1;
            }
            'R' => {
                h = (h + HEADINGS - 1) % HEADINGS;
                turns += 1;
            }
            other => panic!("unknown primitive step `{other}`"),
        }
        let (dx, dy) = DIRECTIONS[h];
        x += dx;
        y += dy;
        length += if h.is_multiple_of(2) { STRAIGHT_LEN } else { DIAGONAL_LEN };
        cells.push((x, y));
    }
    Motion {
        cells,
        end_heading: h,
        length,
        turns,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub rows: usize,
    pub cols: usize,
    pub obstacle_density: f64,
    pub m: usize,
    pub seed: u64,
}

impl LatticeSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        let mut violations = Vec::new();
        if self.rows < 2 || self.cols < 2 {
            violations.push(format!("lattice {}x{} smaller than 2x2", self.rows, self.cols));
        }
        if !(0.0..1.0).contains(&self.obstacle_density) {
            violations.push(format!("obstacle density {} outside [0, 1)", self.obstacle_density));
        }
        if !(2..=3).contains(&self.m) {
            violations.push(format!("M = {} but lattices define 2 or 3 objectives", self.m));
        }
        if (self.rows * self.cols).saturating_mul(HEADINGS) >= u32::MAX as usize {
            violations.push("too many poses".to_string());
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(SpecError(violations))
        }
    }

    pub fn pose_count(&self) -> usize {
        self.rows * self.cols * HEADINGS
    }

    pub fn pose(&self, x: usize, y: usize, heading: usize) -> VertexId {
        ((y * self.cols + x) * HEADINGS + heading) as VertexId
    }

    pub fn virtual_goal(&self) -> VertexId {
        self.pose_count() as VertexId
    }
}

/// Obstacle map as a row-major occupancy grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstacleMap {
    pub rows: usize,
    pub cols: usize,
    pub blocked: Vec<bool>,
}

impl ObstacleMap {
    fn is_free(&self, x: i32, y: i32) -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < self.cols
            && (y as usize) < self.rows
            && !self.blocked[y as usize * self.cols + x as usize]
    }

    /// Blocked cells among the 8 neighbours of `(x, y)`.
    pub fn adjacent_obstacles(&self, x: i32, y: i32) -> u64 {
        let mut n = 0;
        for dy in -1..=1 {
            for dx in -1..=1 {
                if (dx, dy) == (0, 0) {
                    continue;
                }
                let (nx, ny) = (x + dx, y + dy);
                if nx >= 0
                    && ny >= 0
                    && (nx as usize) < self.cols
                    && (ny as usize) < self.rows
                    && self.blocked[ny as usize * self.cols + nx as usize]
                {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn blocked_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| b).count()
    }
}

fn draw_obstacles(spec: &LatticeSpec, attempt: u32) -> ObstacleMap {
    let seed = spec.seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.rows * spec.cols;
    let mut blocked: Vec<bool> = (0..n).map(|_| rng.gen_bool(spec.obstacle_density)).collect();
    blocked[0] = false;
    blocked[n - 1] = false;
    ObstacleMap {
        rows: spec.rows,
        cols: spec.cols,
        blocked,
    }
}

/// Builds the lattice graph for a fixed obstacle map.
pub fn build_lattice(spec: &LatticeSpec, map: &ObstacleMap) -> Result<Graph, SpecError> {
    spec.validate()?;
    let goal = spec.virtual_goal();
    let mut graph = Graph::new(spec.pose_count() + 1, spec.m, spec.pose(0, 0, 0), goal)
        .map_err(|e| SpecError(vec![e.to_string()]))?;
    let motions: Vec<Vec<Motion>> = (0..HEADINGS)
        .map(|h| PRIMITIVES.iter().map(|p| resolve_primitive(p, h)).collect())
        .collect();

    for y in 0..spec.rows {
        for x in 0..spec.cols {
            if !map.is_free(x as i32, y as i32) {
                continue;
            }
            for (heading, table) in motions.iter().enumerate() {
                let from = spec.pose(x, y, heading);
                for motion in table {
                    let clear = motion
                        .cells
                        .iter()
                        .all(|&(dx, dy)| map.is_free(x as i32 + dx, y as i32 + dy));
                    if !clear {
                        continue;
                    }
                    let (ex, ey) = motion.end();
                    let (tx, ty) = (x as i32 + ex, y as i32 + ey);
                    let mut cost = vec![motion.length, motion.turns];
                    if spec.m == 3 {
                        cost.push(map.adjacent_obstacles(tx, ty));
                    }
                    let to = spec.pose(tx as usize, ty as usize, motion.end_heading);
                    graph
                        .add_edge(from, to, CostVec::from(cost))
                        .expect("lattice edge in range");
                }
            }
        }
    }
    for heading in 0..HEADINGS {
        let from = spec.pose(spec.cols - 1, spec.rows - 1, heading);
        graph
            .add_edge(from, goal, CostVec::zeros(spec.m))
            .expect("goal edge in range");
    }
    graph.canonicalize();
    Ok(graph)
}

fn reaches_goal(graph: &Graph) -> bool {
    let mut seen = vec![false; graph.vertex_count()];
    let mut stack = vec![graph.start()];
    seen[graph.start() as usize] = true;
    while let Some(v) = stack.pop() {
        if v == graph.goal() {
            return true;
        }
        for e in graph.successors(v) {
            if !seen[e.to as usize] {
                seen[e.to as usize] = true;
                stack.push(e.to);
            }
        }
    }
    false
}

/// Generated lattice together with the obstacle map and the number of
/// redraws it took to get a solvable map.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub graph: Graph,
    pub map: ObstacleMap,
    pub attempt: u32,
}

pub fn gen_lattice_full(spec: &LatticeSpec) -> Result<Lattice, SpecError> {
    spec.validate()?;
    for attempt in 0..MAX_ATTEMPTS {
        let map = draw_obstacles(spec, attempt);
        let graph = build_lattice(spec, &map)?;
        if reaches_goal(&graph) {
            if attempt > 0 {
                log::debug!("lattice seed {}: goal reachable after {} redraws", spec.seed, attempt);
            }
            return Ok(Lattice { graph, map, attempt });
        }
    }
    Err(SpecError(vec![format!(
        "no obstacle map with a start-to-goal path after {MAX_ATTEMPTS} attempts"
    )]))
}

pub fn gen_lattice(spec: &LatticeSpec) -> Result<Graph, SpecError> {
    gen_lattice_full(spec).map(|l| l.graph)
}

pub fn lattice_instance(spec: &LatticeSpec) -> Result<Instance, SpecError> {
    let lattice = gen_lattice_full(spec)?;
    Ok(Instance {
        graph: lattice.graph,
        meta: Some(InstanceMeta {
            family: "lattice".to_string(),
            seed: spec.seed,
            attempt: Some(lattice.attempt),
            spec: serde_json::to_value(spec).expect("lattice spec serializes"),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(rows: usize, cols: usize, density: f64, m: usize, seed: u64) -> LatticeSpec {
        LatticeSpec {
            rows,
            cols,
            obstacle_density: density,
            m,
            seed,
        }
    }

    #[test]
    fn pose_count() {
        let s = spec(20, 20, 0.2, 2, 1);
        assert_eq!(s.pose_count(), 3200);
        let g = gen_lattice(&s).unwrap();
        assert_eq!(g.vertex_count(), 3201);
    }

    #[test]
    fn primitive_geometry() {
        let straight = resolve_primitive("F", 0);
        assert_eq!((straight.end(), straight.end_heading, straight.length, straight.turns), ((1, 0), 0, 10, 0));
        let arc = resolve_primitive("FL", 0);
        assert_eq!((arc.end(), arc.end_heading, arc.length, arc.turns), ((2, 1), 1, 24, 1));
        let right = resolve_primitive("FR", 2);
        assert_eq!(right.turns, 1);
        assert_eq!(right.end_heading, 1);
        let diag = resolve_primitive("FF", 1);
        assert_eq!((diag.end(), diag.length), ((2, 2), 28));
        let lane = resolve_primitive("FLR", 0);
        assert_eq!((lane.end(), lane.end_heading, lane.turns), ((3, 1), 0, 2));
        for h in 0..HEADINGS {
            for p in PRIMITIVES {
                let m = resolve_primitive(p, h);
                let expected = p.chars().filter(|&c| c != 'F').count() as u64;
                assert_eq!(m.turns, expected);
            }
        }
    }

    #[test]
    fn primitives_are_distinct_per_heading() {
        for h in 0..HEADINGS {
            let mut ends: Vec<_> = PRIMITIVES
                .iter()
                .map(|p| {
                    let m = resolve_primitive(p, h);
                    (m.end(), m.end_heading)
                })
                .collect();
            ends.sort();
            ends.dedup();
            assert_eq!(ends.len(), PRIMITIVES.len());
        }
    }

    #[test]
    fn open_interior_pose_uses_full_table() {
        let s = spec(12, 12, 0.0, 2, 0);
        let g = gen_lattice(&s).unwrap();
        for h in 0..HEADINGS {
            assert_eq!(g.successors(s.pose(6, 6, h)).len(), PRIMITIVES.len());
        }
    }

    #[test]
    fn safety_cost_counts_target_neighbours() {
        // Free 5x5 map with obstacles at (3,0) and (3,2): a straight move from
        // (1,1) to (2,1) ends next to both.
        let s = spec(5, 5, 0.0, 3, 0);
        let mut blocked = vec![false; 25];
        blocked[3] = true;
        blocked[2 * 5 + 3] = true;
        let map = ObstacleMap { rows: 5, cols: 5, blocked };
        let g = build_lattice(&s, &map).unwrap();
        let from = s.pose(1, 1, 0);
        let to = s.pose(2, 1, 0);
        assert_eq!(g.edge_cost(from, to), Some(&CostVec::from([10, 0, 2])));
        // A 45° arc costs one turning unit.
        let arc_to = s.pose(3, 2, 1);
        assert!(g.edge_cost(s.pose(1, 1, 0), arc_to).is_none(), "ends on an obstacle");
        let g2 = build_lattice(&spec(5, 5, 0.0, 2, 0), &ObstacleMap { rows: 5, cols: 5, blocked: vec![false; 25] }).unwrap();
        assert_eq!(g2.edge_cost(s.pose(0, 0, 0), s.pose(2, 1, 1)).map(|c| c[1]), Some(1));
    }

    #[test]
    fn start_and_goal_cells_are_free_and_connected() {
        for seed in 0..10 {
            let s = spec(10, 10, 0.3, 2, seed);
            let l = gen_lattice_full(&s).unwrap();
            assert!(!l.map.blocked[0]);
            assert!(!l.map.blocked[99]);
            assert!(reaches_goal(&l.graph));
        }
    }

    #[test]
    fn obstacle_density_within_three_sigma() {
        let s = spec(40, 40, 0.2, 2, 5);
        let l = gen_lattice_full(&s).unwrap();
        let n = 40.0 * 40.0;
        let sigma = (n * 0.2 * 0.8f64).sqrt();
        let count = l.map.blocked_count() as f64;
        assert!((count - n * 0.2).abs() <= 3.0 * sigma + 2.0, "{count} blocked");
    }

    #[test]
    fn deterministic() {
        let s = spec(8, 9, 0.2, 3, 11);
        assert_eq!(gen_lattice(&s).unwrap(), gen_lattice(&s).unwrap());
    }
}
