//! Parser for the textual form of weights produced by `Display`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'z' | '(' expr ')' | 'Gamma' '(' expr ')'
//! ```
//!
//! A Gamma argument must reduce to `(z + a)/D` with positive integer `D`
//! and nonnegative integer `a`. Division is only by a single-term weight.

use rug::{Integer, Rational};

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::gamma::{GammaAtom, GammaRatioExpr};
use crate::shift::WeightExpr;

pub fn parse_weight(text: &str) -> Result<WeightExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let w = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(w)
}

/// Parses a rational number `[-]int[/int]`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let w = parse_weight(text)?;
    w.as_rational()
        .and_then(|rf| rf.as_constant())
        .ok_or(Error::Syntax { position: 0, message: "expected a rational number".into() })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<WeightExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeightExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = &acc * &self.reciprocal(&rhs, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn reciprocal(&self, w: &WeightExpr, at: usize) -> Result<WeightExpr> {
        let mut terms = w.terms();
        match (terms.next(), terms.next()) {
            (None, _) => Err(Error::DivisionByZero),
            (Some((c, g)), None) => Ok(WeightExpr::term(c.inv()?, g.inv())),
            _ => Err(Error::Syntax { position: at, message: "divisor must be a single term".into() }),
        }
    }

    fn unary(&mut self) -> Result<WeightExpr> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeightExpr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.integer()?;
        let e = e.to_u32().filter(|&e| e <= 1024).map_or_else(|| self.err("exponent too large"), Ok)?;
        Ok((0..e).fold(WeightExpr::one(), |acc, _| &acc * &base))
    }

    fn atom(&mut self) -> Result<WeightExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(WeightExpr::rational(RationalFunction::z()))
            }
            Some(c) if c.is_ascii_digit() => Ok(WeightExpr::constant(Rational::from(self.integer()?))),
            Some(b'G') if self.src[self.pos..].starts_with(b"Gamma") => {
                self.pos += 5;
                self.expect(b'(')?;
                let at = self.pos;
                let arg = self.expr()?;
                self.expect(b')')?;
                let atom = gamma_atom(&arg).ok_or(Error::Syntax {
                    position: at,
                    message: "Gamma argument must be (z+a)/D with integers a >= 0, D >= 1".into(),
                })?;
                Ok(WeightExpr::term(RationalFunction::one(), GammaRatioExpr::from_exponents([(atom, 1)])))
            }
            _ => self.err("expected a number, 'z', 'Gamma' or '('"),
        }
    }

    fn integer(&mut self) -> Result<Integer> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }
}

/// Recognizes `(z + a)/D` as a Gamma atom.
fn gamma_atom(arg: &WeightExpr) -> Option<GammaAtom> {
    let rf = arg.as_rational()?;
    if !rf.is_polynomial() || rf.num().degree() != Some(1) {
        return None;
    }
    let num: &Polynomial = rf.num();
    let inv_lead = Rational::from(num.coeff(1).recip_ref());
    if !inv_lead.is_integer() || inv_lead.cmp0().is_le() {
        return None;
    }
    let offset = Rational::from(&num.coeff(0) * &inv_lead);
    if !offset.is_integer() || offset.cmp0().is_lt() {
        return None;
    }
    let d = inv_lead.numer().to_u32()?;
    let a = offset.numer().to_u32()?;
    Some(GammaAtom::new(d, a))
}
