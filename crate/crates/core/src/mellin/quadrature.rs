use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::RadialSymbol;
use crate::error::{Error, Result};

const GAUSS_POINTS: usize = 20;
const MAX_DEPTH: u32 = 48;
const GUARD_BITS: u32 = 32;

/// Numerical weight with the adaptive error estimate it was accepted at.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureValue {
    pub value: Float,
    pub error_estimate: Float,
}

/// `2(k+p+1) ∫₀¹ φ(r) r^(2k+p+1) dr`, the weight of `T_{e^{ipθ}φ}` on `z^k`
/// from the inner product `(k+p+1)⟨e^{ipθ}φ z^k, z^(k+p)⟩`, by adaptive
/// Gauss-Legendre quadrature to about `digits` decimal digits.
pub fn bergman_quadrature_oracle(p: u32, phi: &RadialSymbol, k: u32, digits: u32) -> Result<QuadratureValue> {
    let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
    let rule = GaussLegendre::new(GAUSS_POINTS, bits);
    let base = Rational::from(2 * k + p + 1);
    let exponents: Vec<(Float, Float)> = phi
        .terms()
        .iter()
        .map(|(c, a)| (Float::with_val(bits, c), Float::with_val(bits, Rational::from(a + &base))))
        .collect();
    let f = |r: &Float| -> Float {
        let mut acc = Float::new(bits);
        for (c, e) in &exponents {
            let pw = Float::with_val(bits, r.pow(e));
            acc += Float::with_val(bits, c * &pw);
        }
        acc
    };
    let mut tol = Float::with_val(bits, 10);
    tol = tol.pow(-i64::from(digits)) / 4u32;
    let zero = Float::new(bits);
    let one = Float::with_val(bits, 1);
    let whole = rule.integrate(&f, &zero, &one);
    let (integral, err) = adapt(&rule, &f, &zero, &one, whole, &tol, 0)?;
    let scale = 2 * (k + p + 1);
    Ok(QuadratureValue { value: integral * scale, error_estimate: err * scale })
}

fn adapt(
    rule: &GaussLegendre,
    f: &impl Fn(&Float) -> Float,
    a: &Float,
    b: &Float,
    whole: Float,
    tol: &Float,
    depth: u32,
) -> Result<(Float, Float)> {
    let prec = a.prec();
    let mid = Float::with_val(prec, a + b) / 2u32;
    let left = rule.integrate(f, a, &mid);
    let right = rule.integrate(f, &mid, b);
    let both = Float::with_val(prec, &left + &right);
    let diff = Float::with_val(prec, &both - &whole).abs();
    if diff <= *tol {
        return Ok((both, diff));
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureNonConvergence { estimate: diff.to_string_radix(10, Some(6)) });
    }
    let half_tol = Float::with_val(prec, tol / 2u32);
    let (l, el) = adapt(rule, f, a, &mid, left, &half_tol, depth + 1)?;
    let (r, er) = adapt(rule, f, &mid, b, right, &half_tol, depth + 1)?;
    Ok((l + r, el + er))
}

/// Nodes and weights on `[-1, 1]`.
struct GaussLegendre {
    nodes: Vec<(Float, Float)>,
}

impl GaussLegendre {
    fn new(n: usize, prec: u32) -> Self {
        let pi = Float::with_val(prec, Constant::Pi);
        let mut eps = Float::with_val(prec, 1);
        eps >>= prec - 8;
        let nodes = (1..=n)
            .map(|i| {
                let guess = Float::with_val(prec, (i as f64 - 0.25) / (n as f64 + 0.5));
                let mut x = Float::with_val(prec, &pi * &guess).cos();
                let mut dp = Float::new(prec);
                for _ in 0..200 {
                    let (p, d) = legendre(n, &x);
                    dp = d;
                    let step = Float::with_val(prec, &p / &dp);
                    x -= &step;
                    if step.abs() <= eps {
                        break;
                    }
                }
                let (_, d) = legendre(n, &x);
                dp = if d.is_zero() { dp } else { d };
                let one_minus = Float::with_val(prec, 1 - Float::with_val(prec, x.square_ref()));
                let w = Float::with_val(prec, 2) / (one_minus * Float::with_val(prec, dp.square_ref()));
                (x, w)
            })
            .collect();
        GaussLegendre { nodes }
    }

    fn integrate(&self, f: &impl Fn(&Float) -> Float, a: &Float, b: &Float) -> Float {
        let prec = a.prec();
        let half = Float::with_val(prec, b - a) / 2u32;
        let center = Float::with_val(prec, b + a) / 2u32;
        let mut acc = Float::new(prec);
        for (x, w) in &self.nodes {
            let r = Float::with_val(prec, &center + Float::with_val(prec, &half * x));
            acc += Float::with_val(prec, w * f(&r));
        }
        acc * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for j in 2..=n {
        let j = j as u32;
        let t = Float::with_val(prec, x * &p1) * (2 * j - 1);
        let p2 = (t - Float::with_val(prec, &p0 * (j - 1))) / j;
        p0 = p1;
        p1 = p2;
    }
    let num = Float::with_val(prec, x * &p1) - &p0;
    let den = Float::with_val(prec, x.square_ref()) - 1u32;
    let d = num * (n as u32) / den;
    (p1, d)
}
