#![allow(dead_code)]

use proptest::prelude::*;
use quasitoep::algebra::{Polynomial, RationalFunction};
use quasitoep::mellin::{monomial_operator, RadialSymbol};
use quasitoep::shift::ShiftSum;
use rug::Rational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

pub fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..=max_degree + 1).prop_map(Polynomial::from_coeffs)
}

pub fn rational_function(max_degree: usize) -> impl Strategy<Value = RationalFunction> {
    (polynomial(max_degree), polynomial(max_degree))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

/// `T_{e^{ipθ} r^n}` with `p <= 3`, `n <= 6`.
pub fn monomial_op() -> impl Strategy<Value = ShiftSum> {
    (0u32..=3, 0u32..=6).prop_map(|(p, n)| monomial_operator(p, n))
}

/// Sum of one or two monomial operators.
pub fn small_op() -> impl Strategy<Value = ShiftSum> {
    (monomial_op(), prop::option::of(monomial_op()), small_rational()).prop_map(|(a, b, c)| match b {
        Some(b) => a.add(&b.scale(&c)),
        None => a,
    })
}

pub fn monomial_symbol() -> impl Strategy<Value = RadialSymbol> {
    (0u32..=8).prop_map(RadialSymbol::monomial)
}

/// Random 2-over-2 Gamma quotient with denominator `2δ <= 8`, offsets <= 20.
pub fn gamma_expr() -> impl Strategy<Value = quasitoep::gamma::GammaRatioExpr> {
    (1u32..=8, prop::collection::vec(0u32..=20, 0..=3), prop::collection::vec(0u32..=20, 0..=3))
        .prop_map(|(d, num, den)| quasitoep::gamma::GammaRatioExpr::new(d, &num, &den))
}

pub fn weight_expr() -> impl Strategy<Value = quasitoep::shift::WeightExpr> {
    prop::collection::vec((rational_function(2), gamma_expr()), 0..=3)
        .prop_map(quasitoep::shift::WeightExpr::from_terms)
}
