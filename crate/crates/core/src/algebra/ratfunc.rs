use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Quotient of polynomials in `z` kept in canonical form: numerator and
/// denominator coprime, denominator monic. Two rational functions are equal
/// as functions exactly when their canonical forms are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RationalFunction {
    /// Builds the canonical form of `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lc = Rational::from(den.leading().expect("nonzero").recip_ref());
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn z() -> Self {
        Self::from_poly(Polynomial::z())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    /// `(z + a) / (z + b)`.
    pub fn linear_ratio(a: impl Into<Rational>, b: impl Into<Rational>) -> Self {
        Self::new(Polynomial::linear(a), Polynomial::linear(b)).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this is a constant function.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.is_one()) {
            (None, _) => Some(Rational::new()),
            (Some(0), true) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.cmp0().is_eq() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn eval(&self, point: &Rational) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.cmp0().is_eq() {
            return Err(Error::Pole(point.clone()));
        }
        Ok(self.num.eval(point) / d)
    }

    /// `a(z + h)`.
    pub fn shift(&self, h: &Rational) -> Self {
        if h.cmp0().is_eq() {
            return self.clone();
        }
        // A translate of a coprime pair stays coprime and monic.
        RationalFunction { num: self.num.shift(h), den: self.den.shift(h) }
    }

    pub fn shift_int(&self, h: i64) -> Self {
        self.shift(&Rational::from(h))
    }

    /// Formats for use as a factor inside a product, parenthesising a bare
    /// polynomial with more than one term.
    pub fn to_factor_string(&self) -> String {
        if self.den.is_one() && self.num.term_count() > 1 {
            format!("({})", self.num)
        } else {
            self.to_string()
        }
    }
}

/// Exact field operation on canonical rational functions.
pub fn rf_arith(a: &RationalFunction, b: &RationalFunction, op: RfOp) -> Result<RationalFunction> {
    Ok(match op {
        RfOp::Add => a + b,
        RfOp::Sub => a - b,
        RfOp::Mul => a * b,
        RfOp::Div => a.checked_div(b)?,
    })
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
