//! Finite-dimensional EP-operator toolkit.
//!
//! Dense complex matrices with a Jacobi SVD, the Moore-Penrose inverse,
//! subspace arithmetic, EP predicates and constructions, and checkers for
//! Fuglede-Putnam type commutativity statements together with a catalog of
//! concrete counterexamples.

pub mod ep;
pub mod error;
pub mod fuglede;
pub mod linalg;
pub mod pinv;
pub mod subspace;
pub mod suite;

pub use error::{Error, Result};
pub use linalg::{approx_eq, c, ComplexMatrix, SvdResult, Tolerance};
