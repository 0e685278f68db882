//! Weighted multivariate polynomials and vectors over them.

mod module;
mod polynomial;
mod ring;

pub use module::ModuleVector;
pub use polynomial::Polynomial;
pub use ring::{ModuleMonomial, Monomial, MonomialOrder, PolyRing, RingRef};

pub(crate) use polynomial::{format_monomial, format_term, merge_terms};
pub(crate) use ring::same_ring;
