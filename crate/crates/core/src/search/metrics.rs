use serde::{Deserialize, Serialize};

/// Structures whose contents count towards the stored-labels memory metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    Open,
    OpenDfs,
    Threshold,
    NextThreshold,
    Frontiers,
    StoredPaths,
}

/// Current size of every counted structure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSizes {
    pub open: usize,
    pub open_dfs: usize,
    pub threshold: usize,
    pub next_threshold: usize,
    pub frontiers: usize,
    pub stored_paths: usize,
}

impl StructureSizes {
    pub fn total(&self) -> usize {
        self.open + self.open_dfs + self.threshold + self.next_threshold + self.frontiers + self.stored_paths
    }

    fn slot(&mut self, s: Structure) -> &mut usize {
        match s {
            Structure::Open => &mut self.open,
            Structure::OpenDfs => &mut self.open_dfs,
            Structure::Threshold => &mut self.threshold,
            Structure::NextThreshold => &mut self.next_threshold,
            Structure::Frontiers => &mut self.frontiers,
            Structure::StoredPaths => &mut self.stored_paths,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchMetrics {
    /// Best-first (re)expansions.
    pub expansions: u64,
    /// Expansions of a label that had been expanded before.
    pub reexpansions: u64,
    /// Labels put back into OPEN with an advanced re-expansion key.
    pub reinsertions: u64,
    /// Labels expanded by iterative-deepening searches.
    pub dfs_expansions: u64,
    pub dfs_iterations: u64,
    pub dfs_searches: u64,
    /// Every child label constructed, including ones discarded immediately.
    pub generated: u64,
    /// Running maximum of `sizes.total()`.
    pub max_stored_labels: usize,
    pub sizes: StructureSizes,
    pub runtime_seconds: f64,
    pub audit_checks: u64,
    pub audit_mismatches: u64,
}

impl SearchMetrics {
    /// Applies a signed size change to one structure and refreshes the maximum.
    pub fn record(&mut self, structure: Structure, delta: isize) {
        let slot = self.sizes.slot(structure);
        let next = *slot as isize + delta;
        assert!(
            next >= 0,
            "internal invariant violation: {structure:?} counter underflow ({} {delta:+})",
            *slot
        );
        *slot = next as usize;
        if delta > 0 {
            let total = self.sizes.total();
            if total > self.max_stored_labels {
                self.max_stored_labels = total;
            }
        }
    }

    pub fn stored_labels(&self) -> usize {
        self.sizes.total()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_to_open_sets_max() {
        let mut m = SearchMetrics::default();
        m.record(Structure::Open, 1);
        assert_eq!((m.stored_labels(), m.max_stored_labels), (1, 1));
    }

    #[test]
    fn pop_keeps_max() {
        let mut m = SearchMetrics::default();
        m.record(Structure::Open, 4);
        m.record(Structure::Frontiers, 2);
        m.record(Structure::Open, -1);
        m.record(Structure::Open, -1);
        assert_eq!(m.stored_labels(), 4);
        assert_eq!(m.max_stored_labels, 6);
    }

    #[test]
    fn stored_path_segment_counts_its_length() {
        let mut m = SearchMetrics::default();
        m.record(Structure::StoredPaths, 4);
        assert_eq!(m.sizes.stored_paths, 4);
    }

    #[test]
    #[should_panic(expected = "underflow")]
    fn underflow_is_fatal() {
        let mut m = SearchMetrics::default();
        m.record(Structure::OpenDfs, -1);
    }
}
