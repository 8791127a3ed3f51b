//! Best-first multi-objective search with partial expansion, switching to
//! iterative deepening once a label gets within `D` of the goal.

pub mod expansion;
pub mod metrics;
pub mod open;
pub mod pidmoa;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{BoundVec, CostVec};
use crate::frontier::{
    frontier_check, frontier_check_g, solution_check, update_frontier, update_solution, ParetoFrontier, SolutionSet,
};
use crate::graph::{Graph, VertexId};
use crate::label::{Label, LabelId};
use crate::problem::{compute_heuristic, HeuristicError, HeuristicTable};

pub use expansion::{classify_child, classify_children, ChildClass, Partition};
pub use metrics::{SearchMetrics, Structure, StructureSizes};
pub use open::{DfsLabel, DfsStack, OpenEntry, OpenList};
pub use pidmoa::{Auditor, Deepening};

/// Initial threshold set of an iterative-deepening search started at `l_p`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdInit {
    /// `{g(l_p) + h(v(l_p))}`.
    #[default]
    StartCost,
    /// `{h(v(l_p))}`, costing one extra iteration whenever `g(l_p) > 0`.
    StartHeuristic,
}

/// Deliberate defects used to check that the verification pipeline notices
/// wrong answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    /// The best-first loop stops pruning against the solution set.
    SkipSolutionCheck,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    pub seed: u64,
    /// Probability of a recount at each pop.
    pub rate: f64,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Partial-expansion window. `0` expands one `f` value at a time,
    /// unbounded expands all children at once.
    pub c: BoundVec,
    /// Iterative deepening starts at labels with `h < D` in every component.
    pub d: BoundVec,
    pub time_limit: Option<Duration>,
    pub trace_expansions: bool,
    pub validate_heuristic: bool,
    pub threshold_init: ThresholdInit,
    pub audit: Option<AuditConfig>,
    pub fault: Option<Fault>,
}

impl SearchConfig {
    pub fn new(c: BoundVec, d: BoundVec) -> Self {
        SearchConfig {
            c,
            d,
            time_limit: None,
            trace_expansions: false,
            validate_heuristic: false,
            threshold_init: ThresholdInit::default(),
            audit: None,
            fault: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{name} has {got} components but the graph has {expected} objectives")]
    BoundLength {
        name: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("heuristic table has {got} entries for {expected} vertices")]
    HeuristicSize { got: usize, expected: usize },
    #[error(transparent)]
    Heuristic(#[from] HeuristicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Completed,
    /// The time limit was hit; solutions are incomplete.
    TimedOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPath {
    pub cost: CostVec,
    pub path: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Sorted lexicographically by cost.
    pub solutions: Vec<SolutionPath>,
    pub metrics: SearchMetrics,
    pub termination: Termination,
    /// `(vertex, g)` of every label at its first expansion, when requested.
    pub trace: Vec<(VertexId, CostVec)>,
}

impl SearchResult {
    pub fn costs(&self) -> Vec<CostVec> {
        self.solutions.iter().map(|s| s.cost.clone()).collect()
    }

    /// One `expand <vertex> g=<c1,c2,..>` line per traced expansion.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for (v, g) in &self.trace {
            let _ = writeln!(out, "expand {v} g={}", g.to_csv());
        }
        out
    }
}

/// Returned when the wall-clock budget runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimedOut;

/// Wall-clock deadline, read once every [`Clock::CHECK_INTERVAL`] ticks.
#[derive(Debug)]
pub struct Clock {
    deadline: Option<Instant>,
    ticks: u32,
    expired: bool,
}

impl Clock {
    pub const CHECK_INTERVAL: u32 = 1024;

    pub fn new(limit: Option<Duration>) -> Self {
        Clock {
            deadline: limit.map(|d| Instant::now() + d),
            ticks: 0,
            expired: false,
        }
    }

    pub fn expired(&mut self) -> bool {
        let Some(deadline) = self.deadline else {
            return false;
        };
        self.ticks += 1;
        if self.ticks >= Self::CHECK_INTERVAL {
            self.ticks = 0;
            self.expired = Instant::now() >= deadline;
        }
        self.expired
    }
}

/// Computes the heuristic and runs [`rme_moa_star`].
pub fn solve(graph: &Graph, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    let h = compute_heuristic(graph);
    rme_moa_star(graph, &h, config)
}

/// Iterative deepening can cycle forever on edges with a zero component
/// until a solution is found. Edges into the goal are harmless.
fn warn_zero_costs(graph: &Graph, config: &SearchConfig) {
    if config.d.is_zero() {
        return;
    }
    let goal = graph.goal();
    if let Some((u, e)) = graph
        .edges()
        .find(|(_, e)| e.to != goal && e.cost.iter().any(|x| x == 0))
    {
        log::warn!(
            "edge {u}->{} has a zero cost component; iterative deepening may not terminate without a time limit",
            e.to
        );
    }
}

struct Engine<'a> {
    graph: &'a Graph,
    h: &'a HeuristicTable,
    config: &'a SearchConfig,
    labels: Vec<Label>,
    frontiers: Vec<ParetoFrontier>,
    frontier_total: usize,
    solutions: SolutionSet,
    open: OpenList,
    metrics: SearchMetrics,
    clock: Clock,
    auditor: Option<Auditor>,
    trace: Vec<(VertexId, CostVec)>,
}

impl Engine<'_> {
    fn skip_solution_check(&self) -> bool {
        self.config.fault == Some(Fault::SkipSolutionCheck)
    }

    fn solution_prunes(&self, f: &CostVec) -> bool {
        !self.skip_solution_check() && solution_check(&self.solutions, f)
    }

    fn new_label(&mut self, vertex: VertexId, g: CostVec, h: &CostVec, parent: Option<LabelId>) -> LabelId {
        let id = LabelId::try_from(self.labels.len()).expect("label arena exceeds u32 ids");
        self.labels.push(Label::new(id, vertex, g, h, parent));
        id
    }

    fn audit(&mut self) {
        let Some(a) = self.auditor.as_mut() else {
            return;
        };
        if !a.due() {
            return;
        }
        let frontiers: usize = self.frontiers.iter().map(ParetoFrontier::len).sum();
        let stored: usize = self.solutions.iter().map(|(_, s)| s.stored_len()).sum();
        a.check(&mut self.metrics, [self.open.len(), 0, 0, 0, frontiers, stored]);
    }

    fn run(&mut self) -> Termination {
        let start = self.graph.start();
        let Some(h_s) = self.h.get(start) else {
            return Termination::Completed;
        };
        let root = self.new_label(start, CostVec::zeros(self.graph.num_objectives()), &h_s.clone(), None);
        self.open.push(OpenEntry::fresh(self.labels[root as usize].f.clone(), start, root));
        self.metrics.record(Structure::Open, 1);

        let mut last_key: Option<CostVec> = None;
        let mut children_f: Vec<CostVec> = Vec::new();
        let mut children: Vec<(VertexId, CostVec)> = Vec::new();

        while let Some(entry) = self.open.pop() {
            self.metrics.record(Structure::Open, -1);
            if self.clock.expired() {
                return Termination::TimedOut;
            }
            debug_assert!(
                last_key.as_ref().is_none_or(|k| *k <= entry.r),
                "pop keys must be lexicographically non-decreasing"
            );
            if cfg!(debug_assertions) {
                last_key = Some(entry.r.clone());
            }
            self.audit();

            let id = entry.id;
            let v = entry.vertex;
            let label = &self.labels[id as usize];
            if frontier_check(&self.frontiers[v as usize], label) || self.solution_prunes(&label.f) {
                continue;
            }
            if v == self.graph.goal() {
                let g = label.g.clone();
                let delta = update_solution(&mut self.solutions, &g, id, None);
                self.metrics
                    .record(Structure::StoredPaths, delta.added as isize - delta.removed as isize);
                continue;
            }

            let label = &mut self.labels[id as usize];
            match update_frontier(&mut self.frontiers[v as usize], label) {
                Some(removed) => {
                    self.metrics.expansions += 1;
                    self.frontier_total = self.frontier_total + 1 - removed;
                    self.metrics.record(Structure::Frontiers, 1 - removed as isize);
                    if self.config.trace_expansions {
                        self.trace.push((v, label.g.clone()));
                    }
                }
                None => {
                    self.metrics.expansions += 1;
                    self.metrics.reexpansions += 1;
                }
            }

            let h_v = self.h.get(v).expect("labels are only created at vertices that reach the goal");
            if self.config.d.strictly_exceeds(h_v) {
                let g = label.g.clone();
                let audit_base = (self.open.len(), self.frontier_total);
                let mut deepening = Deepening {
                    graph: self.graph,
                    heuristic: self.h,
                    solutions: &mut self.solutions,
                    metrics: &mut self.metrics,
                    clock: &mut self.clock,
                    threshold_init: self.config.threshold_init,
                    auditor: self.auditor.as_mut(),
                    audit_base,
                };
                if deepening.run(id, v, &g).is_err() {
                    return Termination::TimedOut;
                }
                continue;
            }

            let r = label.r().clone();
            let g = label.g.clone();
            children.clear();
            children_f.clear();
            for e in self.graph.successors(v) {
                let Some(h) = self.h.get(e.to) else {
                    continue;
                };
                let g_child = &g + &e.cost;
                children_f.push(&g_child + h);
                children.push((e.to, g_child));
            }
            self.metrics.generated += children.len() as u64;

            let partition = {
                let frontiers = &self.frontiers;
                let children = &children;
                let children_f = &children_f;
                let skip = self.skip_solution_check();
                let solutions = &self.solutions;
                classify_children(children_f, &r, &self.config.c, |i| {
                    let (to, g_child) = &children[i];
                    frontier_check_g(&frontiers[*to as usize], g_child)
                        || (!skip && solution_check(solutions, &children_f[i]))
                })
            };

            for &i in &partition.explored {
                let (to, g_child) = children[i].clone();
                let h = self.h.get(to).expect("checked above");
                let child = self.new_label(to, g_child, &h.clone(), Some(id));
                self.open.push(OpenEntry::fresh(children_f[i].clone(), to, child));
                self.metrics.record(Structure::Open, 1);
            }
            if let Some(r_next) = partition.r_next {
                self.labels[id as usize].set_r(r_next.clone());
                self.open.push(OpenEntry::reinserted(r_next, v, id));
                self.metrics.reinsertions += 1;
                self.metrics.record(Structure::Open, 1);
            }
        }
        Termination::Completed
    }

    /// Start-to-goal vertex sequence of a solution.
    fn reconstruct(&self, label: LabelId, segment: Option<&[VertexId]>) -> Vec<VertexId> {
        let mut path = Vec::new();
        let mut cur = Some(label);
        while let Some(id) = cur {
            let l = self
                .labels
                .get(id as usize)
                .unwrap_or_else(|| panic!("internal invariant violation: broken parent chain at label {id}"));
            path.push(l.vertex);
            cur = l.parent;
        }
        path.reverse();
        if let Some(seg) = segment {
            assert_eq!(
                seg.first(),
                path.last(),
                "internal invariant violation: path segment does not start at its label"
            );
            path.extend_from_slice(&seg[1..]);
        }
        path
    }
}

/// Computes a maximal cost-unique Pareto-optimal solution set from the
/// graph's start to its goal, using heuristic `h`.
pub fn rme_moa_star(graph: &Graph, h: &HeuristicTable, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    let m = graph.num_objectives();
    for (name, b) in [("C", &config.c), ("D", &config.d)] {
        if b.len() != m {
            return Err(SearchError::BoundLength {
                name,
                got: b.len(),
                expected: m,
            });
        }
    }
    if h.len() != graph.vertex_count() {
        return Err(SearchError::HeuristicSize {
            got: h.len(),
            expected: graph.vertex_count(),
        });
    }
    if config.validate_heuristic {
        h.validate(graph)?;
    }
    warn_zero_costs(graph, config);

    let started = Instant::now();
    let mut engine = Engine {
        graph,
        h,
        config,
        labels: Vec::new(),
        frontiers: vec![ParetoFrontier::new(); graph.vertex_count()],
        frontier_total: 0,
        solutions: SolutionSet::new(),
        open: OpenList::new(),
        metrics: SearchMetrics::default(),
        clock: Clock::new(config.time_limit),
        auditor: config.audit.map(|a| Auditor::new(a.seed, a.rate)),
        trace: Vec::new(),
    };
    let termination = engine.run();
    engine.metrics.runtime_seconds = started.elapsed().as_secs_f64();

    let solutions = engine
        .solutions
        .iter()
        .map(|(cost, s)| SolutionPath {
            cost: cost.clone(),
            path: engine.reconstruct(s.label, s.segment.as_deref()),
        })
        .collect();
    Ok(SearchResult {
        solutions,
        metrics: engine.metrics,
        termination,
        trace: engine.trace,
    })
}
