//! Fuglede-Putnam type theorem checkers.
//!
//! Each checker evaluates the hypotheses and conclusions of one statement on
//! concrete matrices and reports whether the inputs are a counterexample.

pub mod catalog;
mod checks;
mod polar;
mod rules;
mod verdict;

pub use catalog::{catalog, evaluate_catalog, run_catalog, CatalogReport, CounterexampleCase};
pub use checks::{
    check_fuglede_adjoint, check_fuglede_classic, check_fuglede_mp, check_polar_corollary, check_product_ep,
    check_putnam_adjoint, check_putnam_classic, check_putnam_mp, check_squares, check_two_sided, product_facts,
    AdjointVariant,
};
pub use polar::polar_decompose;
pub use rules::{evaluate, Operands, Rule, Slot};
pub use verdict::{Fact, TheoremVerdict};
