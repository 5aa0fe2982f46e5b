use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upwards. The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self::from_coeffs(vec![Rational::new(), Rational::from(1)])
    }

    /// `z + a`.
    pub fn linear(a: impl Into<Rational>) -> Self {
        Self::from_coeffs(vec![a.into(), Rational::from(1)])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0().is_eq()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| c.cmp0().is_ne()).count()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.cmp0().is_eq() {
            return Self::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = Rational::from(lc.recip_ref());
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `p(z + h)` by Horner composition.
    pub fn shift(&self, h: &Rational) -> Self {
        if h.cmp0().is_eq() {
            return self.clone();
        }
        let step = Polynomial::linear(h.clone());
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &step) + &Polynomial::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = Rational::from(divisor.coeffs[dd].recip_ref());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::new(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = Rational::from(&rem[i + dd] * &lc_inv);
            if q.cmp0().is_ne() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= Rational::from(&q * dc);
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    /// Splits into a positive rational content and an integer primitive part
    /// with positive leading coefficient: `self = content * primitive`.
    pub fn primitive_part(&self) -> (Rational, Vec<Integer>) {
        if self.is_zero() {
            return (Rational::new(), Vec::new());
        }
        let mut den_lcm = Integer::from(1);
        for c in &self.coeffs {
            den_lcm.lcm_mut(c.denom());
        }
        let mut ints: Vec<Integer> =
            self.coeffs.iter().map(|c| c.numer() * Integer::from(&den_lcm / c.denom())).collect();
        let mut g = Integer::new();
        for c in &ints {
            g.gcd_mut(c);
        }
        if ints.last().is_some_and(|c| c.cmp0().is_lt()) {
            g = -g;
        }
        for c in ints.iter_mut() {
            c.div_exact_mut(&g);
        }
        (Rational::from((g, den_lcm)), ints)
    }

    fn from_integers(ints: Vec<Integer>) -> Self {
        Self::from_coeffs(ints.into_iter().map(Rational::from).collect())
    }

    /// Monic greatest common divisor, computed with the primitive
    /// pseudo-remainder sequence over the integers. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, mut a) = self.primitive_part();
        let (_, mut b) = other.primitive_part();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive(r);
        }
        Self::from_integers(a).monic()
    }
}

fn primitive(mut v: Vec<Integer>) -> Vec<Integer> {
    while v.last().is_some_and(|c| c.cmp0().is_eq()) {
        v.pop();
    }
    let mut g = Integer::new();
    for c in &v {
        g.gcd_mut(c);
    }
    if g.cmp0().is_ne() && g != 1 {
        for c in v.iter_mut() {
            c.div_exact_mut(&g);
        }
    }
    v
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` over the integers.
fn pseudo_rem(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Integer> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= Integer::from(&lr * bc);
        }
        while r.last().is_some_and(|c| c.cmp0().is_eq()) {
            r.pop();
        }
    }
    r
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => Rational::from(a + b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl fmt::Display for Polynomial {
    /// Descending powers of `z`, e.g. `z^2+3*z-1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.cmp0().is_eq() {
                continue;
            }
            let negative = c.cmp0().is_lt();
            let mag = Rational::from(c.abs_ref());
            if negative {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (deg, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{deg}")?,
                (_, false) => write!(f, "{mag}*z^{deg}")?,
            }
        }
        Ok(())
    }
}
