//! Radial symbols `φ(r) = Σ c_a r^a`, their Mellin transforms
//! `φ̂(z) = ∫₀¹ φ(r) r^(z-1) dr = Σ c_a / (z + a)`, and the weighted-shift
//! action `T_{e^{ipθ}φ} z^k = (z + 2p) φ̂(z + p) z^(k+p)` at `z = 2k + 2`.

mod quadrature;

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::shift::{ShiftSum, WeightExpr};

pub use quadrature::{bergman_quadrature_oracle, QuadratureValue};

/// Finite combination of monomials `r^a` with nonnegative rational `a`,
/// sorted by exponent, without zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadialSymbol {
    terms: Vec<(Rational, Rational)>,
}

impl RadialSymbol {
    /// Merges equal exponents and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (c, a) in terms {
            if a.cmp0().is_lt() {
                return Err(Error::NegativeExponent(a));
            }
            *merged.entry(a).or_default() += c;
        }
        Ok(RadialSymbol { terms: merged.into_iter().filter(|(_, c)| c.cmp0().is_ne()).map(|(a, c)| (c, a)).collect() })
    }

    pub fn monomial(n: u32) -> Self {
        RadialSymbol { terms: vec![(Rational::from(1), Rational::from(n))] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new([(c, Rational::new())]).expect("zero exponent")
    }

    /// `(coefficient, exponent)` pairs in ascending exponent order.
    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.terms.iter().map(|(k, a)| (Rational::from(k * c), a.clone()))).expect("exponents already valid")
    }

    pub fn add(&self, other: &RadialSymbol) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).cloned()).expect("exponents already valid")
    }
}

impl fmt::Display for RadialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, a)) in self.terms.iter().enumerate() {
            let negative = c.cmp0().is_lt();
            let mag = Rational::from(c.abs_ref());
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.cmp0().is_eq() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "r")?;
            if a.is_integer() {
                if *a != 1 {
                    write!(f, "^{a}")?;
                }
            } else {
                write!(f, "^({a})")?;
            }
        }
        Ok(())
    }
}

/// Parses `term (("+"|"-") term)*` where a term is `[coeff "*"] "r" ["^" exp]`
/// or a bare rational constant; rationals are `int` or `int/int`, and an
/// exponent may be parenthesised.
pub fn parse_symbol(text: &str) -> Result<RadialSymbol> {
    SymbolParser { src: text.as_bytes(), pos: 0 }.parse()
}

struct SymbolParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl SymbolParser<'_> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<RadialSymbol> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            let (c, a) = self.term()?;
            terms.push((c * sign, a));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else if self.peek().is_none() {
                break;
            } else {
                return self.err("expected '+', '-' or end of input");
            }
        }
        RadialSymbol::new(terms)
    }

    fn term(&mut self) -> Result<(Rational, Rational)> {
        if self.peek() == Some(b'r') {
            self.pos += 1;
            return Ok((Rational::from(1), self.exponent()?));
        }
        let c = self.rational()?;
        if self.eat(b'*') {
            if !self.eat(b'r') {
                return self.err("expected 'r' after '*'");
            }
            return Ok((c, self.exponent()?));
        }
        Ok((c, Rational::new()))
    }

    fn exponent(&mut self) -> Result<Rational> {
        if !self.eat(b'^') {
            return Ok(Rational::from(1));
        }
        let start = self.pos;
        let paren = self.eat(b'(');
        let negative = self.eat(b'-');
        let mut a = self.rational()?;
        if paren && !self.eat(b')') {
            return self.err("expected ')'");
        }
        if negative {
            a = -a;
        }
        if a.cmp0().is_lt() {
            self.pos = start;
            return Err(Error::NegativeExponent(a));
        }
        Ok(a)
    }

    fn integer(&mut self) -> Result<rug::Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.integer()?;
            if den == 0 {
                self.pos = at;
                return self.err("zero denominator");
            }
            return Ok(Rational::from((num, den)));
        }
        Ok(Rational::from(num))
    }
}

/// The Mellin transform `Σ c_a / (z + a)` as one rational function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MellinImage {
    pub value: RationalFunction,
}

pub fn mellin_transform(phi: &RadialSymbol) -> MellinImage {
    let value = phi.terms.iter().fold(RationalFunction::zero(), |acc, (c, a)| {
        let term = RationalFunction::new(Polynomial::constant(c.clone()), Polynomial::linear(a.clone()))
            .expect("z + a is nonzero");
        &acc + &term
    });
    MellinImage { value }
}

/// Weight of `T_{e^{ipθ}φ}` in `z = 2k + 2`: `(z + 2p) φ̂(z + p)`.
pub fn toeplitz_weight(p: u32, phi: &RadialSymbol) -> WeightExpr {
    let hat = mellin_transform(phi).value.shift(&Rational::from(p));
    let lead = RationalFunction::from_poly(Polynomial::linear(2 * p));
    WeightExpr::rational(&lead * &hat)
}

pub fn toeplitz_operator(p: u32, phi: &RadialSymbol) -> ShiftSum {
    ShiftSum::single(p, toeplitz_weight(p, phi))
}

/// `T_{e^{ipθ} r^n}`, with weight `(z + 2p)/(z + p + n)`.
pub fn monomial_operator(p: u32, n: u32) -> ShiftSum {
    toeplitz_operator(p, &RadialSymbol::monomial(n))
}
