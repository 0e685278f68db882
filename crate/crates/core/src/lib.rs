//! Exact computation of Kähler differentials of finitely presented algebras.
//!
//! The crate is `no_std` (it needs `alloc`). Scalars live in Q, F_p or
//! F_p(x); algebras are quotients of weighted polynomial rings handled through
//! reduced Gröbner bases; `Ω_{R/k}` is presented as the cokernel of the
//! Jacobian matrix. The [`constructions`] module builds the standard
//! non-reduced formally unramified examples and checks their properties.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod field;
pub mod groebner;
pub mod kaehler;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use poly::{ModuleVector, Monomial, MonomialOrder, PolyRing, Polynomial, RingRef};
