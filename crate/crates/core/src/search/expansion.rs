//! Partial expansion: which children of a (re)expanded label are explored now.

use std::cmp::Ordering;

use crate::cost::{lex_exceeds_window, BoundVec, CostVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildClass {
    /// `f <_lex r`: explored by an earlier expansion of the parent.
    PreviouslyExplored,
    /// `r <=_lex f <=_lex r + C`.
    Explored,
    /// `f >_lex r + C`: deferred to a later re-expansion.
    Unexplored,
}

pub fn classify_child(f: &CostVec, r: &CostVec, window: &BoundVec) -> ChildClass {
    if f.cmp(r) == Ordering::Less {
        ChildClass::PreviouslyExplored
    } else if lex_exceeds_window(f, r, window) {
        ChildClass::Unexplored
    } else {
        ChildClass::Explored
    }
}

/// Outcome of one (re)expansion, as child indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub previously_explored: Vec<usize>,
    /// Failed the frontier or solution check.
    pub pruned: Vec<usize>,
    pub explored: Vec<usize>,
    pub unexplored: Vec<usize>,
    /// Lex-min `f` of the unexplored children; `None` stands for `∞`.
    pub r_next: Option<CostVec>,
}

/// Splits children by their `f` values. Dominance is tested after the
/// previously-explored filter and before the window test, so a dominated
/// child never holds back a re-expansion.
pub fn classify_children<F>(children_f: &[CostVec], r: &CostVec, window: &BoundVec, mut is_dominated: F) -> Partition
where
    F: FnMut(usize) -> bool,
{
    let mut out = Partition::default();
    for (i, f) in children_f.iter().enumerate() {
        match classify_child(f, r, window) {
            ChildClass::PreviouslyExplored => out.previously_explored.push(i),
            _ if is_dominated(i) => out.pruned.push(i),
            ChildClass::Unexplored => {
                out.unexplored.push(i);
                if out.r_next.as_ref().is_none_or(|cur| f < cur) {
                    out.r_next = Some(f.clone());
                }
            }
            ChildClass::Explored => out.explored.push(i),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Bound;

    fn c(x: &[u64]) -> CostVec {
        CostVec::from_slice(x)
    }

    #[test]
    fn window_of_two() {
        let children = [c(&[4, 1]), c(&[5, 9]), c(&[7, 0])];
        let p = classify_children(&children, &c(&[4, 4]), &BoundVec::splat(Bound::Finite(2), 2), |_| false);
        assert_eq!(p.previously_explored, vec![0]);
        assert_eq!(p.explored, vec![1]);
        assert_eq!(p.unexplored, vec![2]);
        assert_eq!(p.r_next, Some(c(&[7, 0])));
    }

    #[test]
    fn unbounded_window_explores_everything() {
        let children = [c(&[3, 9]), c(&[100, 0]), c(&[1, 50])];
        let p = classify_children(&children, &c(&[0, 0]), &BoundVec::unbounded(2), |_| false);
        assert_eq!(p.explored, vec![0, 1, 2]);
        assert_eq!(p.r_next, None);
    }

    #[test]
    fn zero_window_boundary() {
        let children = [c(&[4, 4]), c(&[4, 5])];
        let p = classify_children(&children, &c(&[4, 4]), &BoundVec::zeros(2), |_| false);
        assert_eq!(p.explored, vec![0]);
        assert_eq!(p.unexplored, vec![1]);
        assert_eq!(p.r_next, Some(c(&[4, 5])));
    }

    #[test]
    fn dominated_children_do_not_set_r_next() {
        let children = [c(&[9, 9]), c(&[8, 1])];
        let p = classify_children(&children, &c(&[1, 1]), &BoundVec::zeros(2), |i| i == 1);
        assert_eq!(p.pruned, vec![1]);
        assert_eq!(p.unexplored, vec![0]);
        assert_eq!(p.r_next, Some(c(&[9, 9])));
    }

    #[test]
    fn previously_explored_skips_dominance_test() {
        let children = [c(&[0, 5])];
        let mut asked = false;
        let p = classify_children(&children, &c(&[1, 1]), &BoundVec::zeros(2), |_| {
            asked = true;
            true
        });
        assert!(!asked);
        assert_eq!(p.previously_explored, vec![0]);
    }
}
