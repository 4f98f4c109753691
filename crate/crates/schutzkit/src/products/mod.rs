//! Product constructions: the quotient `M ∗ N` of the tensor product through
//! the separating valuation family, the closed-subsets oracle and generic
//! tensor oracle for JSL, the lifted S-algebra `F(M ∗ N)`, the triangular
//! monoid, and the Schützenberger product `M ⋄ N` built on top of them.

mod kp;
mod lift;
mod schutz;
mod star;
mod tensor;

pub use kp::{closed_semiring_matches_star, jsl_closed_semiring, kp_closure, ClosedSemiring};
pub use lift::{lift_algebra, LiftKind, LiftedAlgebra};
pub use schutz::{schutzenberger, triangular_monoid, SchutzElem, SchutzProduct};
pub use star::{star_product, StarProduct};
pub use tensor::{jsl_isomorphic, tensor_jsl_oracle, TensorObject};
