//! Reference implementations shared by the integration and acceptance tests.
//! Everything here is deliberately naive: plain vectors and linear scans.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rmemoa::cost::{Bound, BoundVec, CostVec};
use rmemoa::graph::{Graph, VertexId};

pub fn weakly_dominates(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `a` is no worse anywhere and differs somewhere.
pub fn dominates(a: &[u64], b: &[u64]) -> bool {
    weakly_dominates(a, b) && a != b
}

/// Non-dominated subset, deduplicated and sorted lexicographically.
pub fn pareto_filter(costs: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    for c in costs {
        let dominated = costs
            .iter()
            .any(|o| o != c && weakly_dominates(o, c));
        if !dominated && !out.contains(c) {
            out.push(c.clone());
        }
    }
    out.sort();
    out
}

/// Pareto front over every simple start-goal path, by exhaustive DFS.
/// Exponential; keep graphs tiny.
pub fn simple_path_front(g: &Graph) -> Vec<Vec<u64>> {
    fn walk(g: &Graph, v: VertexId, cost: Vec<u64>, seen: &mut Vec<bool>, out: &mut Vec<Vec<u64>>) {
        if v == g.goal() {
            out.push(cost);
            return;
        }
        for e in g.successors(v) {
            if seen[e.to as usize] {
                continue;
            }
            seen[e.to as usize] = true;
            let next: Vec<u64> = cost.iter().zip(e.cost.iter()).map(|(a, b)| a + b).collect();
            walk(g, e.to, next, seen, out);
            seen[e.to as usize] = false;
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[g.start() as usize] = true;
    let mut all = Vec::new();
    walk(g, g.start(), vec![0; g.num_objectives()], &mut seen, &mut all);
    pareto_filter(&all)
}

pub fn to_vecs(costs: &[CostVec]) -> Vec<Vec<u64>> {
    costs.iter().map(|c| c.as_slice().to_vec()).collect()
}

/// Random digraph with strictly positive costs.
pub fn random_graph(seed: u64, n: usize, m: usize, edge_prob: f64, max_cost: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n, m, 0, (n - 1) as VertexId).unwrap();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(edge_prob) {
                let cost: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=max_cost)).collect();
                g.add_edge(u as VertexId, v as VertexId, CostVec::from(cost)).unwrap();
            }
        }
    }
    g
}

pub fn bound(x: Option<u64>, m: usize) -> BoundVec {
    BoundVec::splat(x.map_or(Bound::Unbounded, Bound::Finite), m)
}

/// Sorted, deduplicated list of vectors kept mutually non-dominated by the
/// same rules as the library's sets.
#[derive(Debug, Clone, Default)]
pub struct NaiveSet {
    pub items: Vec<Vec<u64>>,
}

impl NaiveSet {
    pub fn weakly_dominates(&self, q: &[u64]) -> bool {
        self.items.iter().any(|a| weakly_dominates(a, q))
    }

    pub fn dominates(&self, q: &[u64]) -> bool {
        self.items.iter().any(|a| dominates(a, q))
    }

    /// Removes everything `q` weakly dominates, then adds `q`. Returns the
    /// number removed.
    pub fn insert_filtered(&mut self, q: &[u64]) -> usize {
        let before = self.items.len();
        self.items.retain(|a| !weakly_dominates(q, a));
        let removed = before - self.items.len();
        self.items.push(q.to_vec());
        self.items.sort();
        removed
    }
}

/// Runs one random operation sequence against the library's frontier,
/// solution and threshold sets and the naive references. Returns a
/// description of the first disagreement.
pub fn frontier_sequence(seed: u64) -> Result<(), String> {
    use rmemoa::frontier::*;
    use rmemoa::label::Label;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=4);
    let hi = rng.gen_range(2..=8u64);
    let ops = rng.gen_range(1..=60);

    let mut frontier = ParetoFrontier::new();
    let mut naive_frontier = NaiveSet::default();
    let mut solutions = SolutionSet::new();
    let mut naive_solutions = NaiveSet::default();
    let mut naive_lengths: Vec<(Vec<u64>, usize)> = Vec::new();
    let mut next = ThresholdSet::new();
    let mut naive_next = NaiveSet::default();

    let fail = |op: usize, what: &str, q: &[u64]| Err(format!("seed {seed} op {op}: {what} disagrees on {q:?}"));

    for op in 0..ops {
        let q: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=hi)).collect();
        let qc = CostVec::from(q.clone());
        let truncated = &q[1..];
        match rng.gen_range(0..3) {
            0 => {
                let dominated = frontier_check_g(&frontier, &qc);
                if dominated != naive_frontier.weakly_dominates(truncated) {
                    return fail(op, "frontier check", &q);
                }
                if !dominated && rng.gen_bool(0.7) {
                    let mut label = Label::new(op as u32, 0, qc.clone(), &CostVec::zeros(m), None);
                    let removed = update_frontier(&mut frontier, &mut label);
                    if removed != Some(naive_frontier.insert_filtered(truncated)) {
                        return fail(op, "frontier update", &q);
                    }
                    if !label.in_frontier || frontier_check(&frontier, &label) {
                        return fail(op, "frontier membership", &q);
                    }
                }
                let keys: Vec<Vec<u64>> = frontier.entries().map(|(k, _)| k.as_slice().to_vec()).collect();
                if keys != naive_frontier.items {
                    return fail(op, "frontier contents", &q);
                }
            }
            1 => {
                let dominated = solution_check(&solutions, &qc);
                if dominated != naive_solutions.weakly_dominates(&q) {
                    return fail(op, "solution check", &q);
                }
                if !dominated && rng.gen_bool(0.7) {
                    let seg_len = rng.gen_range(0..4);
                    let segment = (seg_len > 0).then(|| vec![0; seg_len]);
                    let delta = update_solution(&mut solutions, &qc, op as u32, segment);
                    naive_solutions.insert_filtered(&q);
                    let before: usize = naive_lengths.iter().map(|(_, l)| l).sum();
                    naive_lengths.retain(|(c, _)| !weakly_dominates(&q, c));
                    let after: usize = naive_lengths.iter().map(|(_, l)| l).sum();
                    naive_lengths.push((q.clone(), seg_len.max(1)));
                    if delta.removed != before - after || delta.added != seg_len.max(1) {
                        return fail(op, "stored path delta", &q);
                    }
                }
                let total: usize = naive_lengths.iter().map(|(_, l)| l).sum();
                if solutions.costs() != naive_solutions.items.iter().map(|v| CostVec::from(v.clone())).collect::<Vec<_>>()
                    || solutions.stored_path_len() != total
                {
                    return fail(op, "solution contents", &q);
                }
            }
            _ => {
                if threshold_check(&next, &qc) != naive_next.dominates(&q) {
                    return fail(op, "threshold check", &q);
                }
                let expected = if naive_next.weakly_dominates(&q) {
                    0
                } else {
                    1 - naive_next.insert_filtered(&q) as isize
                };
                if update_threshold(&mut next, &qc) != expected {
                    return fail(op, "threshold update", &q);
                }
                let got: Vec<Vec<u64>> = next.vectors().iter().map(|v| v.as_slice().to_vec()).collect();
                if got != naive_next.items {
                    return fail(op, "threshold contents", &q);
                }
            }
        }
    }
    Ok(())
}
