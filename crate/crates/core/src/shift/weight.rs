use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::gamma::{BallValue, GammaRatioExpr};

/// A weight function of `z = 2k + 2`: a finite sum of rational functions
/// times reduced Gamma products.
///
/// Always held in canonical form: every Gamma part is reduced, terms with
/// the same Gamma part are merged, and zero coefficients are dropped. With
/// all Gamma parts cancelled, equal functions have equal representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightExpr {
    terms: BTreeMap<GammaRatioExpr, RationalFunction>,
}

impl WeightExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(RationalFunction::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::rational(RationalFunction::constant(c))
    }

    pub fn rational(rf: RationalFunction) -> Self {
        Self::term(rf, GammaRatioExpr::one())
    }

    /// `coeff * gamma`, reduced.
    pub fn term(coeff: RationalFunction, gamma: GammaRatioExpr) -> Self {
        let mut w = Self::zero();
        w.push(coeff, &gamma);
        w
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (RationalFunction, GammaRatioExpr)>) -> Self {
        let mut w = Self::zero();
        for (c, g) in terms {
            w.push(c, &g);
        }
        w
    }

    fn push(&mut self, coeff: RationalFunction, gamma: &GammaRatioExpr) {
        if coeff.is_zero() {
            return;
        }
        let (coeff, gamma) = if gamma.is_reduced() {
            (coeff, gamma.clone())
        } else {
            let (cofactor, reduced) = gamma.canonicalize();
            (&coeff * &cofactor, reduced)
        };
        self.push_reduced(coeff, gamma);
    }

    fn push_reduced(&mut self, coeff: RationalFunction, gamma: GammaRatioExpr) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(gamma) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RationalFunction, &GammaRatioExpr)> {
        self.terms.iter().map(|(g, c)| (c, g))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no Gamma factor survives reduction.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(GammaRatioExpr::is_one)
    }

    pub fn as_rational(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&GammaRatioExpr::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.cmp0().is_eq() {
            return Self::zero();
        }
        WeightExpr { terms: self.terms.iter().map(|(g, rf)| (g.clone(), rf.scale(c))).collect() }
    }

    /// `w(z + h)`; `h` is a nonnegative integer so Gamma offsets stay valid.
    pub fn shift(&self, h: u32) -> Self {
        if h == 0 {
            return self.clone();
        }
        let hq = Rational::from(h);
        Self::from_terms(self.terms.iter().map(|(g, rf)| (rf.shift(&hq), g.shift(h))))
    }

    /// Exact value at `z0` when the weight is rational; `None` otherwise.
    pub fn eval_exact(&self, z0: &Rational) -> Result<Option<Rational>> {
        match self.as_rational() {
            Some(rf) => rf.eval(z0).map(Some),
            None => Ok(None),
        }
    }

    /// Certified enclosure at `z0`; errors if any term has a pole there.
    pub fn eval_ball(&self, z0: &Rational, prec: u32) -> Result<BallValue> {
        let mut acc = BallValue::exact_int(0, prec);
        for (g, rf) in &self.terms {
            let c = rf.eval(z0)?;
            let gv = g.eval_ball(z0, prec).map_err(|e| match e {
                Error::Pole(_) => Error::Pole(z0.clone()),
                other => other,
            })?;
            acc = acc.add(&BallValue::from_rational(&c, prec).mul(&gv));
        }
        Ok(acc)
    }
}

impl From<RationalFunction> for WeightExpr {
    fn from(rf: RationalFunction) -> Self {
        WeightExpr::rational(rf)
    }
}

impl<'a> Add<&'a WeightExpr> for &'a WeightExpr {
    type Output = WeightExpr;
    fn add(self, rhs: &WeightExpr) -> WeightExpr {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.push_reduced(c.clone(), g.clone());
        }
        out
    }
}

impl<'a> Sub<&'a WeightExpr> for &'a WeightExpr {
    type Output = WeightExpr;
    fn sub(self, rhs: &WeightExpr) -> WeightExpr {
        self + &(-rhs)
    }
}

impl Neg for &WeightExpr {
    type Output = WeightExpr;
    fn neg(self) -> WeightExpr {
        WeightExpr { terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect() }
    }
}

impl<'a> Mul<&'a WeightExpr> for &'a WeightExpr {
    type Output = WeightExpr;
    fn mul(self, rhs: &WeightExpr) -> WeightExpr {
        let mut out = WeightExpr::zero();
        for (ga, ca) in &self.terms {
            for (gb, cb) in &rhs.terms {
                // Reduced atoms multiply to reduced atoms.
                out.push_reduced(ca * cb, ga.mul(gb));
            }
        }
        out
    }
}

impl fmt::Display for WeightExpr {
    /// Terms joined by `+`/`-`, each `coeff*Gamma(..)/Gamma(..)`; parses
    /// back with [`crate::text::parse_weight`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let negative = c.num().leading().is_some_and(|l| l.cmp0().is_lt());
            let c = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            let coeff = if i == 0 && !negative { c.to_string() } else { c.to_factor_string() };
            if g.is_one() {
                write!(f, "{coeff}")?;
                continue;
            }
            let gamma = g.to_string();
            if c.is_one() {
                write!(f, "{gamma}")?;
            } else if let Some(rest) = gamma.strip_prefix("1/") {
                write!(f, "{}/{rest}", c.to_factor_string())?;
            } else {
                write!(f, "{}*{gamma}", c.to_factor_string())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    #[test]
    fn merging_and_cancellation() {
        let g = GammaRatioExpr::new(4, &[2], &[1]);
        let a = WeightExpr::term(RationalFunction::linear_ratio(1, 2), g.clone());
        let b = WeightExpr::term(RationalFunction::one(), g.clone());
        let s = &a + &b;
        assert_eq!(s.term_count(), 1);
        assert!((&s - &s).is_zero());
        assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn reduction_on_entry() {
        // (z/4)^{-1} Γ((z+4)/4) / Γ(z/4) == 1
        let w = WeightExpr::term(
            RationalFunction::z().scale(&Rational::from((1, 4))).inv().unwrap(),
            GammaRatioExpr::new(4, &[4], &[0]),
        );
        assert_eq!(w, WeightExpr::one());
    }

    #[test]
    fn shifting_moves_gamma_offsets() {
        let w = WeightExpr::term(RationalFunction::one(), GammaRatioExpr::new(2, &[0], &[1]));
        // Γ((z+2)/2)/Γ((z+3)/2) = (z/2) / ((z+1)/2) Γ(z/2)/Γ((z+1)/2)
        let shifted = w.shift(2);
        let expected = WeightExpr::term(
            RationalFunction::new(Polynomial::z(), Polynomial::linear(1)).unwrap(),
            GammaRatioExpr::new(2, &[0], &[1]),
        );
        assert_eq!(shifted, expected);
    }

    #[test]
    fn ball_evaluation_of_rational_weight() {
        let w = WeightExpr::rational(RationalFunction::linear_ratio(2, 3));
        let b = w.eval_ball(&Rational::from(2), 128).unwrap();
        assert!(b.contains_rational(&Rational::from((4, 5))));
        assert_eq!(w.eval_exact(&Rational::from(2)).unwrap(), Some(Rational::from((4, 5))));
    }

    #[test]
    fn display_forms() {
        assert_eq!(WeightExpr::rational(RationalFunction::linear_ratio(2, 3)).to_string(), "(z+2)/(z+3)");
        let g = GammaRatioExpr::new(4, &[2], &[0]);
        let w = WeightExpr::term(RationalFunction::linear_ratio(2, 0), g.clone());
        assert_eq!(w.to_string(), "(z+2)/z*Gamma((z+2)/4)/Gamma(z/4)");
        let neg = -&WeightExpr::term(RationalFunction::one(), g.inv());
        assert_eq!(neg.to_string(), "-Gamma(z/4)/Gamma((z+2)/4)");
        let pure = WeightExpr::term(RationalFunction::constant(Rational::from(3)), GammaRatioExpr::new(4, &[], &[1]));
        assert_eq!(pure.to_string(), "3/Gamma((z+1)/4)");
        assert_eq!(WeightExpr::zero().to_string(), "0");
    }
}
