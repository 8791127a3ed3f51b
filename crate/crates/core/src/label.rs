use crate::cost::CostVec;
use crate::graph::VertexId;

pub type LabelId = u32;

/// A partial path from the start vertex, as stored by the best-first loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub id: LabelId,
    pub vertex: VertexId,
    pub g: CostVec,
    pub f: CostVec,
    /// Re-expansion key: lex-min `f` among children not yet explored.
    r: CostVec,
    pub parent: Option<LabelId>,
    /// Set once the label has been added to the frontier of its vertex.
    pub in_frontier: bool,
}

impl Label {
    pub fn new(id: LabelId, vertex: VertexId, g: CostVec, h: &CostVec, parent: Option<LabelId>) -> Self {
        let f = &g + h;
        Label {
            id,
            vertex,
            g,
            r: f.clone(),
            f,
            parent,
            in_frontier: false,
        }
    }

    pub fn r(&self) -> &CostVec {
        &self.r
    }

    /// Advances the re-expansion key. Keys never move backwards.
    pub fn set_r(&mut self, next: CostVec) {
        assert!(
            next >= self.r,
            "re-expansion key moved backwards: {} -> {}",
            self.r,
            next
        );
        self.r = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_sets_f_and_r() {
        let l = Label::new(0, 3, CostVec::from([2, 5]), &CostVec::from([1, 1]), None);
        assert_eq!(l.f, CostVec::from([3, 6]));
        assert_eq!(l.r(), &l.f);
        assert!(!l.in_frontier);
    }

    #[test]
    #[should_panic(expected = "moved backwards")]
    fn r_is_monotone() {
        let mut l = Label::new(0, 0, CostVec::from([2, 5]), &CostVec::zeros(2), None);
        l.set_r(CostVec::from([3, 0]));
        l.set_r(CostVec::from([2, 9]));
    }
}
