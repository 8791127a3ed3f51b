//! Non-dominated sets: per-vertex frontiers, the solution set and the
//! iterative-deepening threshold sets.
//!
//! Every set is a [`ParetoSet`], an ordered map keyed lexicographically by
//! cost vector. Lexicographic order lets queries look only at one side of
//! the query point: anything that weakly dominates `q` sorts at or before
//! `q`, and anything `q` weakly dominates sorts at or after it. In two
//! dimensions a mutually non-dominated set is a staircase (first component
//! ascending, second strictly descending), so both queries reduce to a
//! single neighbour lookup plus a contiguous scan.

use std::collections::BTreeMap;
use std::ops::Bound::{Included, Unbounded};

use crate::cost::{weakly_dominates, CostVec};
use crate::graph::VertexId;
use crate::label::{Label, LabelId};

/// Ordered set of mutually non-dominated, cost-unique vectors with a payload.
#[derive(Debug, Clone)]
pub struct ParetoSet<V> {
    entries: BTreeMap<CostVec, V>,
}

impl<V> Default for ParetoSet<V> {
    fn default() -> Self {
        ParetoSet {
            entries: BTreeMap::new(),
        }
    }
}

impl<V> ParetoSet<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CostVec, &V)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CostVec> {
        self.entries.keys()
    }

    /// Some entry `e` satisfies `e ⪯ q`.
    pub fn weakly_dominates(&self, q: &CostVec) -> bool {
        if q.len() == 2 {
            return match self.entries.range(..=q).next_back() {
                Some((e, _)) => e[1] <= q[1],
                None => false,
            };
        }
        self.entries
            .range(..=q)
            .any(|(e, _)| weakly_dominates(e, q))
    }

    /// Some entry `e` satisfies `e ≺ q`.
    pub fn strictly_dominates(&self, q: &CostVec) -> bool {
        if q.len() == 2 {
            return match self.entries.range(..q).next_back() {
                Some((e, _)) => e[1] <= q[1],
                None => false,
            };
        }
        // Everything strictly below `q` lexicographically differs from it.
        self.entries.range(..q).any(|(e, _)| weakly_dominates(e, q))
    }

    /// Removes every entry `e` with `q ⪯ e` and returns them.
    pub fn remove_weakly_dominated_by(&mut self, q: &CostVec) -> Vec<(CostVec, V)> {
        let doomed: Vec<CostVec> = if q.len() == 2 {
            self.entries
                .range(q..)
                .take_while(|(e, _)| e[1] >= q[1])
                .map(|(e, _)| e.clone())
                .collect()
        } else {
            self.entries
                .range((Included(q), Unbounded))
                .filter(|(e, _)| weakly_dominates(q, e))
                .map(|(e, _)| e.clone())
                .collect()
        };
        doomed
            .into_iter()
            .map(|k| {
                let v = self.entries.remove(&k).expect("key collected from this map");
                (k, v)
            })
            .collect()
    }

    /// Inserts without any dominance check. Callers are responsible for
    /// having filtered the set first.
    pub fn insert_unchecked(&mut self, q: CostVec, value: V) -> Option<V> {
        self.entries.insert(q, value)
    }

    pub fn get(&self, q: &CostVec) -> Option<&V> {
        self.entries.get(q)
    }
}

/// Dimensionality-reduced frontier of one vertex: stores `g` with the first
/// component dropped.
#[derive(Debug, Clone, Default)]
pub struct ParetoFrontier {
    set: ParetoSet<LabelId>,
}

impl ParetoFrontier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CostVec, LabelId)> {
        self.set.iter().map(|(k, v)| (k, *v))
    }

    /// Whether the truncated `g` would be weakly dominated by this frontier.
    pub fn dominates_g(&self, g: &CostVec) -> bool {
        self.set.weakly_dominates(&g.truncate_first())
    }
}

/// `true` when `label` should be pruned by the frontier of its vertex.
/// Labels that were already added to the frontier are exempt so that they can
/// be re-expanded.
pub fn frontier_check(frontier: &ParetoFrontier, label: &Label) -> bool {
    if label.in_frontier {
        return false;
    }
    frontier.dominates_g(&label.g)
}

/// Same as [`frontier_check`] for a label that does not exist yet.
pub fn frontier_check_g(frontier: &ParetoFrontier, g: &CostVec) -> bool {
    frontier.dominates_g(g)
}

/// Adds `label` to the frontier, filtering entries it weakly dominates.
/// Returns the number of entries removed; `None` if the label was already a
/// member and nothing changed.
pub fn update_frontier(frontier: &mut ParetoFrontier, label: &mut Label) -> Option<usize> {
    if label.in_frontier {
        return None;
    }
    let key = label.g.truncate_first();
    let removed = frontier.set.remove_weakly_dominated_by(&key).len();
    frontier.set.insert_unchecked(key, label.id);
    label.in_frontier = true;
    Some(removed)
}

/// A solution in [`SolutionSet`]. Solutions found by the best-first loop
/// reference the goal label; solutions found by iterative deepening reference
/// the label it started from and carry the explicit path segment from there
/// to the goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub label: LabelId,
    pub segment: Option<Vec<VertexId>>,
}

impl Solution {
    /// Labels this solution keeps for path reconstruction: the segment length,
    /// or 1 for a best-first solution.
    pub fn stored_len(&self) -> usize {
        self.segment.as_ref().map_or(1, Vec::len)
    }
}

/// Full-vector non-dominated set of solution costs. Also owns the stored
/// iterative-deepening path segments.
#[derive(Debug, Clone, Default)]
pub struct SolutionSet {
    set: ParetoSet<Solution>,
    stored_path_len: usize,
}

/// Change to the stored-path total caused by one solution update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathDelta {
    pub added: usize,
    pub removed: usize,
}

impl SolutionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CostVec, &Solution)> {
        self.set.iter()
    }

    pub fn costs(&self) -> Vec<CostVec> {
        self.set.keys().cloned().collect()
    }

    /// Sum over solutions of their stored path lengths.
    pub fn stored_path_len(&self) -> usize {
        self.stored_path_len
    }
}

/// `true` iff some solution weakly dominates `f`.
pub fn solution_check(solutions: &SolutionSet, f: &CostVec) -> bool {
    solutions.set.weakly_dominates(f)
}

/// Records a solution of cost `g`. The caller must have established that no
/// current solution weakly dominates `g`.
pub fn update_solution(
    solutions: &mut SolutionSet,
    g: &CostVec,
    label: LabelId,
    segment: Option<Vec<VertexId>>,
) -> PathDelta {
    let removed: usize = solutions
        .set
        .remove_weakly_dominated_by(g)
        .iter()
        .map(|(_, s)| s.stored_len())
        .sum();
    let sol = Solution { label, segment };
    let added = sol.stored_len();
    solutions.set.insert_unchecked(g.clone(), sol);
    solutions.stored_path_len = solutions.stored_path_len + added - removed;
    PathDelta { added, removed }
}

/// Pareto threshold set for one iterative-deepening pass.
#[derive(Debug, Clone, Default)]
pub struct ThresholdSet {
    set: ParetoSet<()>,
}

impl ThresholdSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: CostVec) -> Self {
        let mut t = Self::new();
        t.set.insert_unchecked(v, ());
        t
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn vectors(&self) -> Vec<CostVec> {
        self.set.keys().cloned().collect()
    }
}

/// `true` iff some threshold strictly dominates `f`.
pub fn threshold_check(thresholds: &ThresholdSet, f: &CostVec) -> bool {
    thresholds.set.strictly_dominates(f)
}

/// Adds `f` to the next-iteration thresholds unless already weakly dominated.
/// Returns the signed change in size.
pub fn update_threshold(next: &mut ThresholdSet, f: &CostVec) -> isize {
    if next.set.weakly_dominates(f) {
        return 0;
    }
    let removed = next.set.remove_weakly_dominated_by(f).len();
    next.set.insert_unchecked(f.clone(), ());
    1 - removed as isize
}
