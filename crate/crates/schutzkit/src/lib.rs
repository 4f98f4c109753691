//! Schützenberger products of finite monoids over four commutative varieties.
//!
//! The library builds monoid-like structures ("D-monoids") whose carrier lives
//! in one of four varieties — plain sets (`SET`), partially ordered sets
//! (`POS`), join-semilattices with bottom (`JSL`), and finite-dimensional
//! vector spaces over a prime field (`VECT`) — and constructs their
//! Schützenberger product `M ⋄ N`: a triangular product `M × A × N` whose
//! middle component is an algebra over the output semiring `S` built on the
//! quotient `M ∗ N` of the tensor product through a separating family of
//! valuations.
//!
//! On top of the constructions sit exhaustive, exact verifiers for the
//! algebraic facts that make the product useful for language recognition:
//!
//! * `M ⋄ N` recognizes the marked product `KaL` of languages recognized by
//!   `M` and `N` ([`recognition::schurec_witness`]);
//! * the middle component of a morphism into `M ⋄ N` satisfies the Reutenauer
//!   sum formula ([`recognition::reutenauer_check`]);
//! * every middle-recognized language decomposes into a sum of marked products
//!   ([`recognition::decompose_middle`]);
//! * every language recognized by `M ⋄ N` is a combination of the projection
//!   languages and their marked products under the variety's language
//!   operations ([`recognition::closure_check`]);
//! * `M ⋄ N` is universal among recognizers of that language family
//!   ([`recognition::universal_property_check`]).
//!
//! All language statements are checked exactly (finite semiring arithmetic,
//! tolerance zero) on the truncated domain `Σ^{≤L}`, default `L = 8`.
//!
//! The `schutzkit` binary exposes the constructions and verifiers over a JSON
//! document format; see the crate README for the CLI reference.

pub mod dmonoid;
pub mod document;
pub mod error;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod languages;
pub mod limits;
pub mod linalg;
pub mod object;
pub mod products;
pub mod recognition;
pub mod valuation;
pub mod variety;

pub use dmonoid::{Assignment, DMonoid, FreeImage, MonoidMorphism};
pub use error::{Error, Result};
pub use languages::{CombinationExpr, Membership, TruncLanguage};
pub use limits::Limits;
pub use object::{FiniteObject, Structure, ValidationReport};
pub use products::{LiftedAlgebra, SchutzElem, SchutzProduct, StarProduct};
pub use recognition::{Verdict, VerificationReport};
pub use valuation::Valuation;
pub use variety::{Semiring, Variety};
