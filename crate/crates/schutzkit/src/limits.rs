//! Size guards for the exhaustive constructions.
//!
//! Everything in this crate is desk-scale and exact; the guards make the
//! boundary explicit instead of letting an oversized input degenerate into an
//! unbounded enumeration. Each guarded operation fails loudly with the
//! offending cardinality (see [`crate::error::Error::Guard`]).

/// Caps for enumeration and table materialization. `Limits::default()` is
/// used everywhere unless a caller overrides a field.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Candidate cap for valuation enumeration (SET: `2^n` maps,
    /// VECT: `p^d` functionals, POS: search-tree work).
    pub valuation_candidates: u128,
    /// Cap on `|M ∗ N|`.
    pub star_size: usize,
    /// Cap on `|M ∗ N|` when lifting to subsets/down-sets (the lifted carrier
    /// is exponential in this number).
    pub lift_base: usize,
    /// Cap on the number of elements for which binary operation tables are
    /// materialized (lifted algebras, triangular monoids, product carriers).
    pub table_size: usize,
    /// Cap on distinct languages generated by the POS closure fixpoint.
    pub pos_closure: usize,
    /// Cap on the base `|A|·|B|` of the tensor congruence (the free
    /// semilattice has `2^(|A||B|)` elements).
    pub tensor_pairs: usize,
    /// Above this many valuations on a Schützenberger product, closure checks
    /// switch to deterministic seeded sampling.
    pub sample_threshold: u128,
    /// Number of valuations drawn when sampling.
    pub sample_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            valuation_candidates: 1 << 20,
            star_size: 4096,
            lift_base: 20,
            table_size: 1024,
            pos_closure: 1 << 16,
            tensor_pairs: 16,
            sample_threshold: 1 << 12,
            sample_size: 64,
        }
    }
}
