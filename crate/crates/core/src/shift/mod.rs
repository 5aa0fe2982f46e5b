//! Quasihomogeneous Toeplitz operators as finite sums of weighted shifts.
//!
//! A part of degree `d` with weight `w` sends `z^k` to `w(2k+2) z^(k+d)`.
//! Composition multiplies weights with an argument shift:
//! `(A∘B)_(a+b)(z) = w_A(z + 2b) · w_B(z)`.

mod weight;

use std::collections::BTreeMap;

use rayon::prelude::*;
use rug::Rational;

use crate::error::Result;
use crate::gamma::{BallValue, DEFAULT_PRECISION};

pub use weight::WeightExpr;

/// Number of sample points `z = 2k + 2`, `k = 0..SAMPLE_COUNT`, used to
/// certify that a weight is nonzero.
pub const NONZERO_SAMPLES: u32 = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ShiftSum {
    parts: BTreeMap<u32, WeightExpr>,
}

impl ShiftSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::single(0, WeightExpr::one())
    }

    pub fn single(degree: u32, weight: WeightExpr) -> Self {
        let mut s = Self::zero();
        s.add_part(degree, weight);
        s
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (u32, WeightExpr)>) -> Self {
        let mut s = Self::zero();
        for (d, w) in parts {
            s.add_part(d, w);
        }
        s
    }

    fn add_part(&mut self, degree: u32, weight: WeightExpr) {
        if weight.is_zero() {
            return;
        }
        let sum = match self.parts.remove(&degree) {
            Some(existing) => &existing + &weight,
            None => weight,
        };
        if !sum.is_zero() {
            self.parts.insert(degree, sum);
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (u32, &WeightExpr)> {
        self.parts.iter().map(|(&d, w)| (d, w))
    }

    pub fn weight(&self, degree: u32) -> Option<&WeightExpr> {
        self.parts.get(&degree)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.parts.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_parts(self.parts.iter().map(|(&d, w)| (d, w.scale(c))))
    }

    pub fn add(&self, other: &ShiftSum) -> Self {
        let mut out = self.clone();
        for (&d, w) in &other.parts {
            out.add_part(d, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &ShiftSum) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    /// `self ∘ self ∘ ... ∘ self` (`k` factors); the identity for `k = 0`.
    pub fn power(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| compose(&acc, self))
    }
}

pub fn linear_combine(ops: &[(Rational, ShiftSum)]) -> ShiftSum {
    ops.iter().fold(ShiftSum::zero(), |acc, (c, op)| acc.add(&op.scale(c)))
}

/// `A ∘ B`: apply `B` first.
pub fn compose(a: &ShiftSum, b: &ShiftSum) -> ShiftSum {
    let mut out = ShiftSum::zero();
    for (&da, wa) in &a.parts {
        for (&db, wb) in &b.parts {
            let w = &wa.shift(2 * db) * wb;
            out.add_part(da + db, w);
        }
    }
    out
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &ShiftSum, b: &ShiftSum) -> ShiftSum {
    compose(a, b).sub(&compose(b, a))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(Rational),
    Ball(BallValue),
}

impl Coefficient {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Coefficient::Exact(q) => Some(q),
            Coefficient::Ball(_) => None,
        }
    }
}

/// A multiple of the basis monomial `z^index`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisVector {
    pub index: u64,
    pub coeff: Coefficient,
}

/// Image of `z^k`: one entry per degree, exact for rational weights and a
/// certified ball (at the default precision) otherwise.
pub fn apply_to_basis(a: &ShiftSum, k: u64) -> Result<Vec<BasisVector>> {
    apply_to_basis_with(a, k, DEFAULT_PRECISION)
}

pub fn apply_to_basis_with(a: &ShiftSum, k: u64, prec: u32) -> Result<Vec<BasisVector>> {
    let z0 = Rational::from(2 * k + 2);
    a.parts
        .iter()
        .map(|(&d, w)| {
            let coeff = match w.eval_exact(&z0)? {
                Some(q) => Coefficient::Exact(q),
                None => Coefficient::Ball(w.eval_ball(&z0, prec)?),
            };
            Ok(BasisVector { index: k + u64::from(d), coeff })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    /// Canonical form is syntactically zero.
    Zero,
    /// Some certified sample is bounded away from zero.
    NonZero,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    NotEqual,
    Unknown,
}

pub fn is_zero(w: &WeightExpr) -> ZeroTest {
    is_zero_with(w, DEFAULT_PRECISION)
}

/// Zero only by syntactic cancellation; NonZero by a sample at
/// `z = 2k + 2`, `k < NONZERO_SAMPLES`, whose value excludes 0 (exactly for
/// rational weights, by ball separation otherwise). Poles are skipped.
pub fn is_zero_with(w: &WeightExpr, prec: u32) -> ZeroTest {
    if w.is_zero() {
        return ZeroTest::Zero;
    }
    if let Some(rf) = w.as_rational() {
        let nonzero = (0..NONZERO_SAMPLES).any(|k| rf.eval(&Rational::from(2 * k + 2)).is_ok_and(|v| v.cmp0().is_ne()));
        return if nonzero { ZeroTest::NonZero } else { ZeroTest::Unknown };
    }
    let nonzero = (0..NONZERO_SAMPLES)
        .into_par_iter()
        .any(|k| w.eval_ball(&Rational::from(2 * k + 2), prec).is_ok_and(|b| b.is_nonzero()));
    if nonzero {
        ZeroTest::NonZero
    } else {
        ZeroTest::Unknown
    }
}

/// Degree-wise zero test of `A - B`.
pub fn op_equal(a: &ShiftSum, b: &ShiftSum) -> Equality {
    let diff = a.sub(b);
    let mut verdict = Equality::Equal;
    for (_, w) in diff.parts() {
        match is_zero(w) {
            ZeroTest::Zero => {}
            ZeroTest::NonZero => return Equality::NotEqual,
            ZeroTest::Unknown => verdict = Equality::Unknown,
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Polynomial, RationalFunction};
    use crate::mellin::monomial_operator;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn linear_combination() {
        let a = monomial_operator(1, 2);
        let zero = linear_combine(&[(q(1, 1), a.clone()), (q(-1, 1), a.clone())]);
        assert!(zero.is_zero());
        let two = linear_combine(&[(q(1, 1), a), (q(1, 1), monomial_operator(2, 3))]);
        assert_eq!(two.degrees(), vec![1, 2]);
        let id2 = linear_combine(&[(q(2, 1), ShiftSum::identity())]);
        assert_eq!(id2.weight(0), Some(&WeightExpr::constant(q(2, 1))));
    }

    #[test]
    fn composition_examples() {
        let c = compose(&monomial_operator(1, 2), &monomial_operator(2, 3));
        let expected = &RationalFunction::linear_ratio(6, 7) * &RationalFunction::linear_ratio(4, 5);
        assert_eq!(c, ShiftSum::single(3, expected.into()));
        let a = monomial_operator(1, 2);
        assert_eq!(compose(&a, &ShiftSum::identity()), a);
        assert_eq!(compose(&ShiftSum::identity(), &a), a);
        let pure = compose(&monomial_operator(1, 1), &monomial_operator(2, 2));
        assert_eq!(pure, ShiftSum::single(3, WeightExpr::one()));
    }

    #[test]
    fn commutator_examples() {
        let a = monomial_operator(1, 2);
        assert!(commutator(&a, &a).is_zero());
        let c = commutator(&a, &monomial_operator(2, 3));
        let den = &(&Polynomial::linear(3) * &Polynomial::linear(5)) * &Polynomial::linear(7);
        let expected = RationalFunction::new(Polynomial::linear(6).scale(&q(2, 1)), den).unwrap();
        assert_eq!(c, ShiftSum::single(3, expected.into()));
        assert_eq!(is_zero(c.weight(3).unwrap()), ZeroTest::NonZero);
        assert!(commutator(&monomial_operator(1, 1), &monomial_operator(2, 2)).is_zero());
    }

    #[test]
    fn basis_action() {
        let t = monomial_operator(1, 2);
        let img = apply_to_basis(&t, 0).unwrap();
        assert_eq!(img, vec![BasisVector { index: 1, coeff: Coefficient::Exact(q(4, 5)) }]);
        let id = apply_to_basis(&ShiftSum::identity(), 7).unwrap();
        assert_eq!(id, vec![BasisVector { index: 7, coeff: Coefficient::Exact(q(1, 1)) }]);
        let sum = t.add(&monomial_operator(2, 3));
        let img = apply_to_basis(&sum, 0).unwrap();
        assert_eq!(
            img,
            vec![
                BasisVector { index: 1, coeff: Coefficient::Exact(q(4, 5)) },
                BasisVector { index: 2, coeff: Coefficient::Exact(q(6, 7)) },
            ]
        );
    }

    #[test]
    fn equality_verdicts() {
        let a = monomial_operator(1, 2);
        assert_eq!(op_equal(&a, &a), Equality::Equal);
        assert_eq!(op_equal(&monomial_operator(1, 1), &monomial_operator(2, 2)), Equality::NotEqual);
    }

    #[test]
    fn zero_weight_is_zero() {
        let a = monomial_operator(2, 5);
        let c = commutator(&a, &a);
        assert!(c.is_zero());
        assert_eq!(is_zero(&WeightExpr::zero()), ZeroTest::Zero);
    }
}
