//! Exact web calculus for good pairs of superalgebras.
//!
//! Diagrams of the web category are built syntactically, evaluated as exact
//! sparse matrices through the defining representation, reduced to the
//! canonical basis, and compared against Schur algebras, wreath products,
//! the idempotented enveloping category and Howe duality.

pub mod cli;
pub mod combinatorics;
pub mod dsl;
pub mod eval;
pub mod exact;
pub mod howe;
pub mod reduce;
pub mod relations;
pub mod schur;
pub mod superalgebra;
pub mod udot;
pub mod wreath;
pub mod webcat;
