//! Midpoint-radius enclosures over MPFR floats.
//!
//! Every operation rounds the midpoint to nearest and folds a bound on that
//! rounding error, computed with upward rounding, into the radius. Gamma
//! values come from MPFR's correctly rounded `gamma` evaluated on the
//! monotone branch `x >= 2`, so the enclosure is rigorous.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::{Float, Rational};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct BallValue {
    mid: Float,
    rad: Float,
}

/// `|m| * 2^(1-prec)` rounded up: bounds the error of one nearest rounding.
fn rounding_error(m: &Float, ord: Ordering) -> Float {
    let prec = m.prec();
    if ord == Ordering::Equal || m.is_zero() {
        return Float::new(prec);
    }
    let mut e = Float::with_val(prec, m.abs_ref());
    e >>= prec - 1;
    e
}

impl BallValue {
    pub fn exact_int(v: i64, prec: u32) -> Self {
        BallValue { mid: Float::with_val(prec, v), rad: Float::new(prec) }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, q, Round::Nearest);
        let rad = rounding_error(&mid, ord);
        BallValue { mid, rad }
    }

    /// Smallest ball around the interval `[lo, hi]`.
    pub fn from_bounds(lo: &Float, hi: &Float) -> Self {
        let prec = lo.prec().max(hi.prec());
        let mut mid = Float::with_val(prec + 1, lo + hi);
        mid >>= 1;
        let mid = Float::with_val(prec, &mid);
        let r1 = Float::with_val_round(prec, hi - &mid, Round::Up).0;
        let r2 = Float::with_val_round(prec, &mid - lo, Round::Up).0;
        let rad = if r1 > r2 { r1 } else { r2 };
        BallValue { mid, rad: rad.max(&Float::new(prec)) }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid - &self.rad, Round::Down).0
    }

    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid + &self.rad, Round::Up).0
    }

    pub fn contains_zero(&self) -> bool {
        let abs = Float::with_val(self.prec(), self.mid.abs_ref());
        abs <= self.rad
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        let lo = self.lower();
        let hi = self.upper();
        lo <= *q && *q <= hi
    }

    /// True when the enclosed value is certainly nonzero.
    pub fn is_nonzero(&self) -> bool {
        !self.contains_zero()
    }

    /// Radius divided by the midpoint magnitude; infinite if the midpoint is 0.
    pub fn relative_radius(&self) -> Float {
        let prec = self.prec();
        if self.mid.is_zero() {
            return if self.rad.is_zero() {
                Float::new(prec)
            } else {
                Float::with_val(prec, rug::float::Special::Infinity)
            };
        }
        Float::with_val_round(prec, &self.rad / Float::with_val(prec, self.mid.abs_ref()), Round::Up).0
    }

    pub fn neg(&self) -> Self {
        BallValue { mid: Float::with_val(self.prec(), -&self.mid), rad: self.rad.clone() }
    }

    pub fn add(&self, other: &BallValue) -> Self {
        let prec = self.prec().max(other.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid + &other.mid, Round::Nearest);
        let err = rounding_error(&mid, ord);
        let radii = Float::with_val_round(prec, &self.rad + &other.rad, Round::Up).0;
        let rad = Float::with_val_round(prec, &radii + &err, Round::Up).0;
        BallValue { mid, rad }
    }

    pub fn sub(&self, other: &BallValue) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BallValue) -> Self {
        let prec = self.prec().max(other.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid * &other.mid, Round::Nearest);
        let err = rounding_error(&mid, ord);
        let a = Float::with_val(prec, self.mid.abs_ref());
        let b = Float::with_val(prec, other.mid.abs_ref());
        let t1 = Float::with_val_round(prec, &a * &other.rad, Round::Up).0;
        let t2 = Float::with_val_round(prec, &b * &self.rad, Round::Up).0;
        let t3 = Float::with_val_round(prec, &self.rad * &other.rad, Round::Up).0;
        let mut rad = Float::with_val_round(prec, &t1 + &t2, Round::Up).0;
        rad = Float::with_val_round(prec, &rad + &t3, Round::Up).0;
        rad = Float::with_val_round(prec, &rad + &err, Round::Up).0;
        BallValue { mid, rad }
    }

    pub fn div(&self, other: &BallValue) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::BallDivisionByZero);
        }
        let prec = self.prec().max(other.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid / &other.mid, Round::Nearest);
        let err = rounding_error(&mid, ord);
        // |a/b - am/bm| <= (|bm| ra + |am| rb) / (|bm| (|bm| - rb))
        let a = Float::with_val(prec, self.mid.abs_ref());
        let b = Float::with_val(prec, other.mid.abs_ref());
        let t1 = Float::with_val_round(prec, &b * &self.rad, Round::Up).0;
        let t2 = Float::with_val_round(prec, &a * &other.rad, Round::Up).0;
        let numer = Float::with_val_round(prec, &t1 + &t2, Round::Up).0;
        let gap = Float::with_val_round(prec, &b - &other.rad, Round::Down).0;
        let denom = Float::with_val_round(prec, &b * &gap, Round::Down).0;
        let q = Float::with_val_round(prec, &numer / &denom, Round::Up).0;
        let rad = Float::with_val_round(prec, &q + &err, Round::Up).0;
        Ok(BallValue { mid, rad })
    }

    /// Enclosure of `Γ(x)` for rational `x` that is not a pole.
    pub fn gamma(x: &Rational, prec: u32) -> Result<Self> {
        if x.is_integer() && x.cmp0().is_le() {
            return Err(Error::Pole(x.clone()));
        }
        // Γ(x) = Γ(x + j) / (x (x+1) ... (x+j-1)), with x + j >= 2 where Γ increases.
        let mut y = x.clone();
        let mut shift_product = Rational::from(1);
        while y < 2 {
            shift_product *= &y;
            y += 1;
        }
        let (y_lo, _) = Float::with_val_round(prec, &y, Round::Down);
        let (y_hi, _) = Float::with_val_round(prec, &y, Round::Up);
        let (g_lo, _) = Float::with_val_round(prec, y_lo.gamma_ref(), Round::Down);
        let (g_hi, _) = Float::with_val_round(prec, y_hi.gamma_ref(), Round::Up);
        let g = BallValue::from_bounds(&g_lo, &g_hi);
        if shift_product == 1 {
            return Ok(g);
        }
        g.div(&BallValue::from_rational(&shift_product, prec))
    }

    /// Decimal midpoint with `digits` significant digits.
    pub fn mid_string(&self, digits: usize) -> String {
        self.mid.to_string_radix(10, Some(digits))
    }

    pub fn rad_string(&self) -> String {
        self.rad.to_string_radix(10, Some(6))
    }
}

/// Smallest-denominator continued-fraction convergent of the midpoint that
/// lies inside the ball, with denominator at most `max_den`.
pub fn recognize_rational(b: &BallValue, max_den: u64) -> Option<Rational> {
    let mut x = Rational::try_from(b.mid()).ok()?;
    let (mut h0, mut h1) = (rug::Integer::from(0), rug::Integer::from(1));
    let (mut k0, mut k1) = (rug::Integer::from(1), rug::Integer::from(0));
    loop {
        let a = x.clone().floor().into_numer_denom().0;
        let h2 = rug::Integer::from(&a * &h1) + &h0;
        let k2 = rug::Integer::from(&a * &k1) + &k0;
        if k2 > max_den {
            return None;
        }
        let candidate = Rational::from((h2.clone(), k2.clone()));
        if b.contains_rational(&candidate) {
            return Some(candidate);
        }
        let frac = Rational::from(&x - &a);
        if frac.cmp0().is_eq() {
            return None;
        }
        x = frac.recip();
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
}

impl fmt::Display for BallValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid_string(30), self.rad_string())
    }
}
