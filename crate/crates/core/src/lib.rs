//! Exact calculus for quasihomogeneous Toeplitz operators on the Bergman
//! space of the unit disk.
//!
//! An operator `T_{e^{ipθ}φ}` acts on the monomial basis as a weighted shift
//! `z^k -> w(2k+2) z^(k+p)`, so sums, products and commutators of such
//! operators are finite maps from shift degree to weight functions. Weights
//! are rational functions, possibly times quotients of Gamma functions, and
//! are kept in a canonical form where equality of functions is syntactic
//! whenever all Gamma factors cancel.
//!
//! The [`solver`] module expands the commutation equations for a pair of
//! two-term operators into an exact linear system and computes its nullspace.

pub mod algebra;
pub mod error;
pub mod gamma;
pub mod mellin;
pub mod shift;
pub mod solver;
pub mod text;

pub use error::{Error, Result};
