use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::Rational;

use super::ball::BallValue;
use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// One factor `Γ((z + offset) / two_delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaAtom {
    pub two_delta: u32,
    pub offset: u32,
}

impl GammaAtom {
    pub fn new(two_delta: u32, offset: u32) -> Self {
        assert!(two_delta > 0, "Gamma argument denominator must be positive");
        GammaAtom { two_delta, offset }
    }

    /// The argument `(z0 + offset) / two_delta` at a concrete point.
    pub fn argument_at(&self, z0: &Rational) -> Rational {
        Rational::from(z0 + self.offset) / self.two_delta
    }

    fn is_reduced(&self) -> bool {
        self.offset < self.two_delta
    }
}

impl fmt::Display for GammaAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = if self.offset == 0 { "z".to_string() } else { format!("z+{}", self.offset) };
        match (self.two_delta, self.offset) {
            (1, _) => write!(f, "Gamma({arg})"),
            (d, 0) => write!(f, "Gamma(z/{d})"),
            (d, _) => write!(f, "Gamma(({arg})/{d})"),
        }
    }
}

/// Product of Gamma factors with affine arguments, stored as net exponents
/// per atom so identical numerator/denominator factors cancel on entry.
///
/// Atoms may carry different denominators; the functional equation only
/// relates atoms sharing a denominator and residue class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaRatioExpr {
    atoms: BTreeMap<GammaAtom, i32>,
}

impl GammaRatioExpr {
    pub fn one() -> Self {
        Self::default()
    }

    /// `Π Γ((z+a)/two_delta) / Π Γ((z+c)/two_delta)` over the given offsets.
    pub fn new(two_delta: u32, num_offsets: &[u32], den_offsets: &[u32]) -> Self {
        let mut g = Self::one();
        for &a in num_offsets {
            g.push(GammaAtom::new(two_delta, a), 1);
        }
        for &c in den_offsets {
            g.push(GammaAtom::new(two_delta, c), -1);
        }
        g
    }

    pub fn atom(two_delta: u32, offset: u32) -> Self {
        Self::new(two_delta, &[offset], &[])
    }

    pub fn from_exponents(atoms: impl IntoIterator<Item = (GammaAtom, i32)>) -> Self {
        let mut g = Self::one();
        for (atom, e) in atoms {
            g.push(atom, e);
        }
        g
    }

    fn push(&mut self, atom: GammaAtom, e: i32) {
        if e == 0 {
            return;
        }
        let slot = self.atoms.entry(atom).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.atoms.remove(&atom);
        }
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&GammaAtom, &i32)> {
        self.atoms.iter()
    }

    /// The common denominator `2δ` when every atom shares one.
    pub fn two_delta(&self) -> Option<u32> {
        let mut it = self.atoms.keys().map(|a| a.two_delta);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn num_offsets(&self) -> Vec<u32> {
        self.expand(|e| e > 0)
    }

    pub fn den_offsets(&self) -> Vec<u32> {
        self.expand(|e| e < 0)
    }

    fn expand(&self, side: impl Fn(i32) -> bool) -> Vec<u32> {
        self.atoms
            .iter()
            .filter(|(_, &e)| side(e))
            .flat_map(|(a, &e)| std::iter::repeat_n(a.offset, e.unsigned_abs() as usize))
            .collect()
    }

    pub fn mul(&self, other: &GammaRatioExpr) -> GammaRatioExpr {
        let mut g = self.clone();
        for (&a, &e) in &other.atoms {
            g.push(a, e);
        }
        g
    }

    pub fn inv(&self) -> GammaRatioExpr {
        self.pow(-1)
    }

    pub fn pow(&self, k: i32) -> GammaRatioExpr {
        GammaRatioExpr {
            atoms: if k == 0 { BTreeMap::new() } else { self.atoms.iter().map(|(&a, &e)| (a, e * k)).collect() },
        }
    }

    /// Substitutes `z -> z + h`. The result is generally not reduced.
    pub fn shift(&self, h: u32) -> GammaRatioExpr {
        Self::from_exponents(self.atoms.iter().map(|(a, &e)| (GammaAtom::new(a.two_delta, a.offset + h), e)))
    }

    /// True when every offset is already the minimal representative of its
    /// residue class modulo its denominator.
    pub fn is_reduced(&self) -> bool {
        self.atoms.keys().all(GammaAtom::is_reduced)
    }

    /// Moves every offset to its residue-class minimum with
    /// `Γ(x + 1) = x Γ(x)`, returning the extracted rational cofactor and the
    /// reduced Gamma part. The product of the two equals `self` as a function.
    pub fn canonicalize(&self) -> (RationalFunction, GammaRatioExpr) {
        let mut num = Polynomial::one();
        let mut den = Polynomial::one();
        let mut scale = Rational::from(1);
        let mut reduced = GammaRatioExpr::one();
        for (atom, &e) in &self.atoms {
            let d = atom.two_delta;
            let r = atom.offset % d;
            let steps = atom.offset / d;
            reduced.push(GammaAtom::new(d, r), e);
            if steps == 0 {
                continue;
            }
            // Γ((z+r+jD)/D) = Γ((z+r)/D) Π_{i<j} (z+r+iD)/D
            let mut factor = Polynomial::one();
            for i in 0..steps {
                factor = &factor * &Polynomial::linear(r + i * d);
            }
            let factor = factor.pow(e.unsigned_abs());
            let d_pow = Rational::from(rug::Integer::from(d).pow(steps * e.unsigned_abs()));
            if e > 0 {
                num = &num * &factor;
                scale /= d_pow;
            } else {
                den = &den * &factor;
                scale *= d_pow;
            }
        }
        let cofactor = RationalFunction::new(num.scale(&scale), den).expect("nonzero denominator");
        (cofactor, reduced)
    }

    /// True when some atom has a pole at `z0`.
    pub fn has_pole_at(&self, z0: &Rational) -> bool {
        self.atoms.keys().any(|a| {
            let x = a.argument_at(z0);
            x.is_integer() && x.cmp0().is_le()
        })
    }

    /// Certified enclosure of the expression at `z0`.
    pub fn eval_ball(&self, z0: &Rational, prec: u32) -> Result<BallValue> {
        if self.has_pole_at(z0) {
            return Err(Error::Pole(z0.clone()));
        }
        let mut num = BallValue::exact_int(1, prec);
        let mut den = BallValue::exact_int(1, prec);
        for (a, &e) in &self.atoms {
            let g = BallValue::gamma(&a.argument_at(z0), prec)?;
            let target = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target = target.mul(&g);
            }
        }
        num.div(&den)
    }
}

impl fmt::Display for GammaRatioExpr {
    /// `Gamma(...)*Gamma(...)/Gamma(...)`; `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (a, &e) in self.atoms.iter().filter(|(_, &e)| e > 0) {
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "{a}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        for (a, &e) in self.atoms.iter().filter(|(_, &e)| e < 0) {
            write!(f, "/{a}")?;
            if e < -1 {
                write!(f, "^{}", -e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functional_equation_step() {
        // Γ((z+2p)/2p) / Γ(z/2p) = z/(2p)
        for p in 1..5u32 {
            let g = GammaRatioExpr::new(2 * p, &[2 * p], &[0]);
            let (cof, rest) = g.canonicalize();
            assert!(rest.is_one());
            let expected = RationalFunction::z().scale(&Rational::from((1, 2 * p)));
            assert_eq!(cof, expected);
        }
    }

    #[test]
    fn distinct_residues_are_irreducible() {
        let g = GammaRatioExpr::new(4, &[2], &[3]);
        let (cof, rest) = g.canonicalize();
        assert!(cof.is_one());
        assert_eq!(rest, g);
    }

    #[test]
    fn identical_factors_cancel() {
        let g = GammaRatioExpr::new(6, &[5, 1], &[5]);
        assert_eq!(g, GammaRatioExpr::atom(6, 1));
        assert!(GammaRatioExpr::new(3, &[7], &[7]).is_one());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let g = GammaRatioExpr::new(4, &[9, 2, 13], &[1, 6]);
        let (_, rest) = g.canonicalize();
        assert!(rest.is_reduced());
        let (cof2, rest2) = rest.canonicalize();
        assert!(cof2.is_one());
        assert_eq!(rest, rest2);
    }

    #[test]
    fn offsets_and_denominator() {
        let g = GammaRatioExpr::new(4, &[2, 5], &[0, 7]);
        assert_eq!(g.two_delta(), Some(4));
        assert_eq!(g.num_offsets(), vec![2, 5]);
        assert_eq!(g.den_offsets(), vec![0, 7]);
        let mixed = g.mul(&GammaRatioExpr::atom(6, 1));
        assert_eq!(mixed.two_delta(), None);
    }

    #[test]
    fn display() {
        let g = GammaRatioExpr::new(4, &[2, 2], &[0, 5]);
        assert_eq!(g.to_string(), "Gamma((z+2)/4)^2/Gamma(z/4)/Gamma((z+5)/4)");
        assert_eq!(GammaRatioExpr::new(1, &[], &[3]).to_string(), "1/Gamma(z+3)");
    }

    #[test]
    fn pole_detection() {
        let g = GammaRatioExpr::atom(2, 0);
        assert!(g.has_pole_at(&Rational::from(0)));
        assert!(g.has_pole_at(&Rational::from(-4)));
        assert!(!g.has_pole_at(&Rational::from(-3)));
        assert!(!g.has_pole_at(&Rational::from(2)));
    }
}
