/// Limits for the exhaustive operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest group order for which full antiautomorphism counts run.
    pub max_count_order: u64,
    /// Largest group order for existence-only searches.
    pub max_exists_order: u64,
    /// Node limit for existence searches; `None` searches to exhaustion.
    pub max_search_nodes: Option<u64>,
    /// Largest group order materialized as a dense table.
    pub max_table_order: u64,
    /// Largest number of endomorphisms an enumeration will generate.
    pub max_endomorphisms: u64,
    /// Stop enumerations after this many solutions.
    pub max_solutions: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_count_order: 16,
            max_exists_order: 64,
            max_search_nodes: Some(50_000_000),
            max_table_order: crate::group::DEFAULT_ENUMERATION_CAP,
            max_endomorphisms: 1 << 22,
            max_solutions: None,
        }
    }
}

impl SearchBudget {
    /// Same budget with both search order caps set to `order`.
    pub fn with_search_order(mut self, order: u64) -> Self {
        self.max_count_order = order;
        self.max_exists_order = order;
        self
    }

    pub fn with_max_solutions(mut self, limit: Option<u64>) -> Self {
        self.max_solutions = limit;
        self
    }
}
