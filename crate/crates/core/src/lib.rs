//! Cover ideals of unmixed bipartite graphs and the Freiman property.
//!
//! The crate answers one question two ways. The direct route enumerates the
//! minimal vertex covers of a bipartite graph, builds its cover ideal and
//! computes `μ(I)`, `μ(I²)` and the analytic spread `ℓ(I)` (the rank of the
//! exponent matrix), then tests the equality `μ(I²) = ℓμ − C(ℓ, 2)`.
//! The structural route contracts every matched `K_{m,m}` block to a single
//! pair and asks whether the remaining poset becomes a chain after deleting
//! one element. [`classify`] and [`ideal`] expose both so they can be
//! compared graph by graph.
//!
//! Vertices are written `x_1..x_n` and `y_1..y_n`; all public indices are
//! 1-based.

pub mod bits;
pub mod classify;
mod cliques;
pub mod covers;
pub mod graph;
pub mod ideal;

pub use bits::IndexSet;
pub use classify::{classify_structural, Classification, KmmBlock, Verdict};
pub use covers::{MinimalCover, Poset};
pub use graph::{BipartiteGraph, RawBipartiteGraph};
pub use ideal::{freiman_report, FreimanReport, MonomialIdeal};

/// Default cap on the number of vertices (`2n`) for cover enumeration.
pub const DEFAULT_MAX_VERTICES: usize = 28;

/// Default cap on `n` for exhaustive graph enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

/// Default cap on the number of exponent sums materialized by a power or
/// product computation.
pub const DEFAULT_MAX_TERMS: usize = 50_000_000;

/// Safety bounds for the exponential parts of the computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible `2n` for cover and order-ideal enumeration.
    pub max_vertices: usize,
    /// Largest admissible `n` for [`graph::enumerate_graphs_with`].
    pub enumeration_bound: usize,
    /// Largest admissible number of candidate sums in [`ideal::power_with`].
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: DEFAULT_MAX_VERTICES,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}
