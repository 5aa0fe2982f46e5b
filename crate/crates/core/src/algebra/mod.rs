//! Exact arithmetic substrate: GMP-backed rationals, univariate polynomials
//! and canonical rational functions in the weight variable `z`.

mod poly;
mod ratfunc;

pub use poly::Polynomial;
pub use ratfunc::{rf_arith, RationalFunction, RfOp};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type BigRational = rug::Rational;
