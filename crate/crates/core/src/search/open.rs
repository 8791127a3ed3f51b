use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::CostVec;
use crate::graph::VertexId;
use crate::label::LabelId;

/// Heap entry of the best-first OPEN list.
///
/// Ordered by re-expansion key `r`, then re-inserted labels before fresh
/// ones, then vertex, then label id. Breaking ties on content rather than on
/// creation order makes every partial-expansion setting pop equal-key labels
/// in the same order as full expansion does.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OpenEntry {
    pub r: CostVec,
    fresh: bool,
    pub vertex: VertexId,
    pub id: LabelId,
}

impl OpenEntry {
    pub fn fresh(r: CostVec, vertex: VertexId, id: LabelId) -> Self {
        OpenEntry { r, fresh: true, vertex, id }
    }

    pub fn reinserted(r: CostVec, vertex: VertexId, id: LabelId) -> Self {
        OpenEntry { r, fresh: false, vertex, id }
    }

    pub fn is_reinserted(&self) -> bool {
        !self.fresh
    }
}

#[derive(Debug, Default)]
pub struct OpenList {
    heap: BinaryHeap<Reverse<OpenEntry>>,
}

impl OpenList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: OpenEntry) {
        self.heap.push(Reverse(entry));
    }

    pub fn pop(&mut self) -> Option<OpenEntry> {
        self.heap.pop().map(|Reverse(e)| e)
    }

    pub fn peek(&self) -> Option<&OpenEntry> {
        self.heap.peek().map(|Reverse(e)| e)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

/// Label of the depth-first search. Its ancestors are recovered from the
/// current DFS path by `depth`, so no parent pointer is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsLabel {
    pub vertex: VertexId,
    pub g: CostVec,
    pub f: CostVec,
    pub depth: usize,
}

/// LIFO stack of depth-first labels.
#[derive(Debug, Default)]
pub struct DfsStack {
    items: Vec<DfsLabel>,
}

impl DfsStack {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, l: DfsLabel) {
        self.items.push(l);
    }

    pub fn pop(&mut self) -> Option<DfsLabel> {
        self.items.pop()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}
