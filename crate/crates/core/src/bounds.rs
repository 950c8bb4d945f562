//! Search budgets. Every exhaustive sweep is bounded; the defaults suit the
//! gallery and the randomized campaigns.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Largest discrete shape used by colimit-completeness and cocontinuity
    /// sweeps (the parallel pair and the span are always added).
    pub max_discrete_diagram: usize,
    /// Abort descent-object enumeration beyond this many raw candidates.
    pub max_descent_candidates: usize,
    /// Largest hom-set an isomorphism search will scan.
    pub max_hom_size: usize,
    /// Largest value set accepted by presheaf-morphism enumeration.
    pub max_value_set: usize,
    /// Retries before a random generator reports the bounds infeasible.
    pub generation_retries: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_discrete_diagram: 3,
            max_descent_candidates: 1_000_000,
            max_hom_size: 64,
            max_value_set: 6,
            generation_retries: 32,
        }
    }
}

impl SearchBounds {
    /// Scale the diagram bound from a single CLI-style knob.
    pub fn with_diagram_bound(mut self, n: usize) -> Self {
        self.max_discrete_diagram = n;
        self
    }
}
