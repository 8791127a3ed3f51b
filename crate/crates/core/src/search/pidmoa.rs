//! Iterative multi-objective iterative-deepening search from a single label.
//!
//! Each pass runs a depth-first search bounded by the Pareto threshold set
//! `T`: a child whose `f` is strictly dominated by `T` is cut off and its
//! `f` feeds the next pass's thresholds `T_n`. Passes repeat until a pass
//! defers nothing. Solutions are written straight into the shared solution
//! set together with their explicit path segment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::metrics::{SearchMetrics, Structure};
use super::open::{DfsLabel, DfsStack};
use super::{Clock, ThresholdInit, TimedOut};
use crate::cost::CostVec;
use crate::frontier::{solution_check, threshold_check, update_solution, update_threshold, SolutionSet, ThresholdSet};
use crate::graph::{Graph, VertexId};
use crate::label::LabelId;
use crate::problem::HeuristicTable;

/// Randomized from-scratch recount of the stored-labels metric.
#[derive(Debug)]
pub struct Auditor {
    rng: ChaCha8Rng,
    rate: f64,
    recount_max: usize,
}

impl Auditor {
    pub fn new(seed: u64, rate: f64) -> Self {
        Auditor {
            rng: ChaCha8Rng::seed_from_u64(seed),
            rate,
            recount_max: 0,
        }
    }

    pub fn due(&mut self) -> bool {
        self.rng.gen_bool(self.rate)
    }

    /// Compares a recount with the incremental counters.
    pub fn check(&mut self, metrics: &mut SearchMetrics, recount: [usize; 6]) {
        let s = metrics.sizes;
        let incremental = [s.open, s.open_dfs, s.threshold, s.next_threshold, s.frontiers, s.stored_paths];
        let total: usize = recount.iter().sum();
        self.recount_max = self.recount_max.max(total);
        metrics.audit_checks += 1;
        if incremental != recount || self.recount_max > metrics.max_stored_labels {
            log::error!("stored-label audit mismatch: incremental {incremental:?}, recount {recount:?}");
            metrics.audit_mismatches += 1;
        }
    }
}

/// Shared state handed to one iterative-deepening search.
pub struct Deepening<'a> {
    pub graph: &'a Graph,
    pub heuristic: &'a HeuristicTable,
    pub solutions: &'a mut SolutionSet,
    pub metrics: &'a mut SearchMetrics,
    pub clock: &'a mut Clock,
    pub threshold_init: ThresholdInit,
    pub auditor: Option<&'a mut Auditor>,
    /// OPEN and frontier sizes, fixed for the duration of the search.
    pub audit_base: (usize, usize),
}

impl Deepening<'_> {
    fn pruned_by_solutions(&self, f: &CostVec) -> bool {
        solution_check(self.solutions, f)
    }

    fn audit(&mut self, stack: &DfsStack, t: &ThresholdSet, tn: &ThresholdSet) {
        if let Some(a) = self.auditor.as_deref_mut() {
            if a.due() {
                let stored: usize = self.solutions.iter().map(|(_, s)| s.stored_len()).sum();
                let recount = [self.audit_base.0, stack.len(), t.len(), tn.len(), self.audit_base.1, stored];
                a.check(self.metrics, recount);
            }
        }
    }

    /// Searches every extension of the partial path `(v_p, g_p)`. `origin` is
    /// the best-first label the path belongs to; solutions point back to it.
    pub fn run(&mut self, origin: LabelId, v_p: VertexId, g_p: &CostVec) -> Result<(), TimedOut> {
        self.metrics.dfs_searches += 1;
        let goal = self.graph.goal();
        let Some(h_p) = self.heuristic.get(v_p) else {
            return Ok(());
        };
        if v_p == goal {
            if !self.pruned_by_solutions(g_p) {
                let delta = update_solution(self.solutions, g_p, origin, Some(vec![goal]));
                self.metrics.record(Structure::StoredPaths, delta.added as isize - delta.removed as isize);
            }
            return Ok(());
        }
        let f_p = g_p + h_p;
        let mut thresholds = ThresholdSet::singleton(match self.threshold_init {
            ThresholdInit::StartCost => f_p.clone(),
            ThresholdInit::StartHeuristic => h_p.clone(),
        });
        self.metrics.record(Structure::Threshold, 1);

        let mut stack = DfsStack::new();
        let mut path: Vec<VertexId> = Vec::new();
        while !thresholds.is_empty() {
            self.metrics.dfs_iterations += 1;
            let mut next = ThresholdSet::new();
            stack.push(DfsLabel {
                vertex: v_p,
                g: g_p.clone(),
                f: f_p.clone(),
                depth: 0,
            });
            self.metrics.record(Structure::OpenDfs, 1);

            while let Some(l) = stack.pop() {
                self.metrics.record(Structure::OpenDfs, -1);
                if self.clock.expired() {
                    self.metrics.record(Structure::OpenDfs, -(stack.len() as isize));
                    self.metrics.record(Structure::Threshold, -(thresholds.len() as isize));
                    self.metrics.record(Structure::NextThreshold, -(next.len() as isize));
                    return Err(TimedOut);
                }
                self.audit(&stack, &thresholds, &next);
                if self.pruned_by_solutions(&l.f) {
                    continue;
                }
                path.truncate(l.depth);
                path.push(l.vertex);
                self.metrics.dfs_expansions += 1;

                for e in self.graph.successors(l.vertex) {
                    let Some(h) = self.heuristic.get(e.to) else {
                        continue;
                    };
                    let g = &l.g + &e.cost;
                    let f = &g + h;
                    self.metrics.generated += 1;
                    if self.pruned_by_solutions(&f) {
                        continue;
                    }
                    if threshold_check(&thresholds, &f) {
                        let delta = update_threshold(&mut next, &f);
                        self.metrics.record(Structure::NextThreshold, delta);
                        continue;
                    }
                    if e.to == goal {
                        let mut segment = path.clone();
                        segment.push(goal);
                        let delta = update_solution(self.solutions, &g, origin, Some(segment));
                        self.metrics.record(Structure::StoredPaths, delta.added as isize - delta.removed as isize);
                        continue;
                    }
                    stack.push(DfsLabel {
                        vertex: e.to,
                        g,
                        f,
                        depth: l.depth + 1,
                    });
                    self.metrics.record(Structure::OpenDfs, 1);
                }
            }

            // Each deferred vector is dominated by some threshold, so a
            // non-empty next set always differs from the current one.
            debug_assert!(next.is_empty() || next.vectors() != thresholds.vectors());
            self.metrics.record(Structure::Threshold, -(thresholds.len() as isize));
            self.metrics.record(Structure::NextThreshold, -(next.len() as isize));
            thresholds = next;
            self.metrics.record(Structure::Threshold, thresholds.len() as isize);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::compute_heuristic;

    fn c(x: &[u64]) -> CostVec {
        CostVec::from_slice(x)
    }

    fn run_from(graph: &Graph, v_p: VertexId, g_p: &[u64], init: ThresholdInit) -> (SolutionSet, SearchMetrics) {
        let h = compute_heuristic(graph);
        let mut solutions = SolutionSet::new();
        let mut metrics = SearchMetrics::default();
        let mut clock = Clock::new(None);
        let mut d = Deepening {
            graph,
            heuristic: &h,
            solutions: &mut solutions,
            metrics: &mut metrics,
            clock: &mut clock,
            threshold_init: init,
            auditor: None,
            audit_base: (0, 0),
        };
        d.run(0, v_p, &c(g_p)).unwrap();
        (solutions, metrics)
    }

    fn segments(s: &SolutionSet) -> Vec<(CostVec, Vec<VertexId>)> {
        s.iter().map(|(k, v)| (k.clone(), v.segment.clone().unwrap())).collect()
    }

    #[test]
    fn start_at_goal() {
        let g = Graph::from_edges(2, 2, 0, 1, [(0, 1, c(&[1, 1]))]).unwrap();
        let (s, m) = run_from(&g, 1, &[5, 5], ThresholdInit::StartCost);
        assert_eq!(segments(&s), vec![(c(&[5, 5]), vec![1])]);
        assert_eq!(m.sizes.stored_paths, 1);
    }

    #[test]
    fn chain() {
        let g = Graph::from_edges(3, 2, 0, 2, [(0, 1, c(&[1, 1])), (1, 2, c(&[1, 1]))]).unwrap();
        for init in [ThresholdInit::StartCost, ThresholdInit::StartHeuristic] {
            let (s, m) = run_from(&g, 0, &[0, 0], init);
            assert_eq!(segments(&s), vec![(c(&[2, 2]), vec![0, 1, 2])]);
            assert_eq!(m.sizes.stored_paths, 3);
            assert_eq!(m.sizes.open_dfs + m.sizes.threshold + m.sizes.next_threshold, 0);
        }
    }

    #[test]
    fn diamond_keeps_both_incomparable_paths() {
        let g = Graph::from_edges(
            4,
            2,
            0,
            3,
            [
                (0, 1, c(&[1, 3])),
                (1, 3, c(&[1, 3])),
                (0, 2, c(&[3, 1])),
                (2, 3, c(&[3, 1])),
            ],
        )
        .unwrap();
        let (s, m) = run_from(&g, 0, &[0, 0], ThresholdInit::StartCost);
        assert_eq!(
            segments(&s),
            vec![(c(&[2, 6]), vec![0, 1, 3]), (c(&[6, 2]), vec![0, 2, 3])]
        );
        assert!(m.dfs_iterations >= 2);
    }

    #[test]
    fn offset_start_cost_is_added() {
        let g = crate::problem::fixtures::g1();
        let (s, _) = run_from(&g, 1, &[1, 3], ThresholdInit::StartHeuristic);
        assert_eq!(segments(&s), vec![(c(&[2, 6]), vec![1, 3])]);
    }
}
