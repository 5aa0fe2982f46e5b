//! Pointwise checks of the weight identities that arise when a sum of two
//! root powers commutes with `T_{e^{ipθ} r^n} + T_{e^{isθ} r^d}`.
//!
//! Each identity has a left and a right side. Both are evaluated as balls at
//! sample points `z`, and the verdict states whether `left / right` is a
//! single constant across all samples.

use rug::{Float, Rational};

use super::ball::{recognize_rational, BallValue};
use super::roots::power_weight_factors;
use super::GammaRatioExpr;
use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::shift::WeightExpr;

/// Extra precision doublings allowed before a verdict is inconclusive.
const MAX_PRECISION_BUMPS: u32 = 4;
/// Largest denominator tried when recognizing the constant as a rational.
const MAX_RECOGNIZED_DEN: u64 = 1_000_000;
const MAX_WITNESSES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    /// `c₁ [R_m, T_{s,d}] = c₂ [T_{p,n}, Q_l]` at degree `m+s`, where `R`, `Q`
    /// are the canonical roots; both sides evaluated from unreduced factors.
    CommutatorBalance,
    /// The same two sides after full Gamma reduction, i.e. as sums of
    /// rational coefficients times reduced Gamma quotients.
    ReducedForm,
    /// `H(z) F(z + 2α) = F(z)` with `α = s - p`; needs `l + p = m + s`.
    ShiftFunctional,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::CommutatorBalance => "commutator-balance",
            IdentityKind::ReducedForm => "reduced-form",
            IdentityKind::ShiftFunctional => "shift-functional",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::CommutatorBalance, Self::ReducedForm, Self::ShiftFunctional].into_iter().find(|k| k.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityParams {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub d: u32,
    pub m: u32,
    pub l: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One reduced term `coeff · gamma` of a side.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTerm {
    pub side: Side,
    pub coeff: RationalFunction,
    pub gamma: GammaRatioExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleEval {
    pub z: Rational,
    pub left: BallValue,
    pub right: BallValue,
    pub ratio: BallValue,
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdentityVerdict {
    /// `left = κ · right` on every sample; `exact` is κ when recognized.
    Proportional {
        kappa: BallValue,
        exact: Option<Rational>,
    },
    /// Both sides reduce to the zero function, so the identity holds for any
    /// constant and the ratio is undefined.
    BothVanish,
    /// Pairs of sample points whose ratios are certifiably different.
    NotProportional {
        witnesses: Vec<(Rational, Rational)>,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub params: IdentityParams,
    /// Precision of the final evaluation round, in bits.
    pub precision: u32,
    pub left: WeightExpr,
    pub right: WeightExpr,
    pub reduced_terms: Vec<ReducedTerm>,
    pub samples: Vec<SampleEval>,
    /// Sample points skipped because of a pole or a right side enclosing 0.
    pub skipped: Vec<Rational>,
    pub verdict: IdentityVerdict,
}

/// Sample points `z = 2k + 2` for `k < count`.
pub fn lattice_samples(count: u32) -> Vec<Rational> {
    (0..count).map(|k| Rational::from(2 * k + 2)).collect()
}

/// A sum of products kept exactly as written, without Gamma reduction.
#[derive(Clone, Debug, Default)]
struct RawSum(Vec<(RationalFunction, GammaRatioExpr)>);

impl RawSum {
    fn push(&mut self, rf: RationalFunction, g: GammaRatioExpr) {
        self.0.push((rf, g));
    }

    fn reduced(&self) -> WeightExpr {
        WeightExpr::from_terms(self.0.iter().cloned())
    }

    fn eval_ball(&self, z0: &Rational, prec: u32) -> Result<BallValue> {
        let mut acc = BallValue::exact_int(0, prec);
        for (rf, g) in &self.0 {
            let c = BallValue::from_rational(&rf.eval(z0)?, prec);
            acc = acc.add(&c.mul(&g.eval_ball(z0, prec)?));
        }
        Ok(acc)
    }
}

fn phi(p: u32, n: u32) -> RationalFunction {
    RationalFunction::linear_ratio(2 * p, p + n)
}

/// `[R^m, T_{s,d}]` and `[T_{p,n}, Q^l]` at degree `m + s = p + l`.
fn commutator_sides(q: &IdentityParams) -> (RawSum, RawSum) {
    let psi = phi(q.s, q.d);
    let big_phi = phi(q.p, q.n);
    let (rm, gm) = power_weight_factors(q.m, q.p, q.n);
    let (rl, gl) = power_weight_factors(q.l, q.s, q.d);
    let mut left = RawSum::default();
    left.push(&rm.shift_int(2 * i64::from(q.s)) * &psi, gm.shift(2 * q.s));
    left.push(-&(&psi.shift_int(2 * i64::from(q.m)) * &rm), gm);
    let mut right = RawSum::default();
    right.push(&big_phi.shift_int(2 * i64::from(q.l)) * &rl, gl.clone());
    right.push(-&(&rl.shift_int(2 * i64::from(q.p)) * &big_phi), gl.shift(2 * q.p));
    (left, right)
}

/// `H(z) F(z + 2α)` and `F(z)`.
fn shift_functional_sides(q: &IdentityParams) -> Result<(RawSum, RawSum)> {
    if q.p >= q.s || q.l + q.p != q.m + q.s {
        return Err(Error::InvalidParameters("shift functional needs p < s and l + p = m + s".into()));
    }
    let (p, s, n, d, m, l) = (q.p, q.s, q.n, q.d, q.m, q.l);
    let alpha = s - p;
    let lead = RationalFunction::linear_ratio(2 * m, 0);
    let (_, g_pm) = power_weight_factors(m, p, n);
    let g_s = GammaRatioExpr::new(2 * s, &[2 * m, 2 * p + s + d], &[2 * p, 2 * m + s + d]);
    let mut f = RawSum::default();
    f.push(lead.clone(), g_pm);
    f.push(-&RationalFunction::linear_ratio(2 * m, p + n), g_s);

    let h = &RationalFunction::linear_ratio(2 * alpha + p + n, 2 * l + p + n)
        * &RationalFunction::linear_ratio(2 * m + s + d, s + d);
    let shift = Rational::from(2 * alpha);
    let mut left = RawSum::default();
    for (rf, g) in &f.0 {
        left.push(&h * &rf.shift(&shift), g.shift(2 * alpha));
    }
    Ok((left, f))
}

fn validate(q: &IdentityParams) -> Result<()> {
    if q.p == 0 || q.s == 0 {
        return Err(Error::InvalidParameters("p and s must be positive".into()));
    }
    Ok(())
}

/// Runs one identity check at `sample_zs`, starting at `prec` bits and
/// doubling the precision while the verdict is undecided.
pub fn verify_identity(
    kind: IdentityKind,
    params: IdentityParams,
    sample_zs: &[Rational],
    prec: u32,
) -> Result<IdentityReport> {
    validate(&params)?;
    let (left_raw, right_raw) = match kind {
        IdentityKind::CommutatorBalance | IdentityKind::ReducedForm => commutator_sides(&params),
        IdentityKind::ShiftFunctional => shift_functional_sides(&params)?,
    };
    let left = left_raw.reduced();
    let right = right_raw.reduced();
    let reduced_terms = if kind == IdentityKind::ReducedForm {
        [(Side::Left, &left), (Side::Right, &right)]
            .into_iter()
            .flat_map(|(side, w)| w.terms().map(move |(c, g)| ReducedTerm { side, coeff: c.clone(), gamma: g.clone() }))
            .collect()
    } else {
        Vec::new()
    };

    let mut report = IdentityReport {
        kind,
        params,
        precision: prec,
        left: left.clone(),
        right: right.clone(),
        reduced_terms,
        samples: Vec::new(),
        skipped: Vec::new(),
        verdict: IdentityVerdict::Inconclusive,
    };

    if left.is_zero() && right.is_zero() {
        report.verdict = IdentityVerdict::BothVanish;
        return Ok(report);
    }

    let eval = |z: &Rational, bits: u32| -> Result<Option<(BallValue, BallValue)>> {
        let pair = match kind {
            IdentityKind::ReducedForm => (left.eval_ball(z, bits), right.eval_ball(z, bits)),
            _ => (left_raw.eval_ball(z, bits), right_raw.eval_ball(z, bits)),
        };
        match pair {
            (Ok(a), Ok(b)) => Ok(Some((a, b))),
            (Err(Error::Pole(_)), _) | (_, Err(Error::Pole(_))) => Ok(None),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    };

    for bump in 0..=MAX_PRECISION_BUMPS {
        let bits = prec << bump;
        report.precision = bits;
        report.samples.clear();
        report.skipped.clear();
        for z in sample_zs {
            match eval(z, bits)? {
                Some((l, r)) if !r.contains_zero() => {
                    let ratio = l.div(&r)?;
                    report.samples.push(SampleEval { z: z.clone(), left: l, right: r, ratio });
                }
                _ => report.skipped.push(z.clone()),
            }
        }
        match decide(&report.samples, bits) {
            Some(v) => {
                report.verdict = v;
                return Ok(report);
            }
            None => continue,
        }
    }
    Ok(report)
}

/// `None` when the balls are too wide to decide at this precision.
fn decide(samples: &[SampleEval], bits: u32) -> Option<IdentityVerdict> {
    let first = samples.first()?;
    let mut witnesses = Vec::new();
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i + 1..] {
            if a.ratio.sub(&b.ratio).is_nonzero() && witnesses.len() < MAX_WITNESSES {
                witnesses.push((a.z.clone(), b.z.clone()));
            }
        }
    }
    if !witnesses.is_empty() {
        return Some(IdentityVerdict::NotProportional { witnesses });
    }
    let mut tol = Float::with_val(64, 1);
    tol >>= bits / 2;
    let tight =
        samples.iter().all(|s| s.ratio.mid().is_zero() && s.ratio.rad().is_zero() || s.ratio.relative_radius() <= tol);
    if !tight {
        return None;
    }
    let kappa = samples
        .iter()
        .min_by(|a, b| a.ratio.rad().partial_cmp(b.ratio.rad()).expect("finite radius"))
        .map_or_else(|| first.ratio.clone(), |s| s.ratio.clone());
    let exact =
        recognize_rational(&kappa, MAX_RECOGNIZED_DEN).filter(|q| samples.iter().all(|s| s.ratio.contains_rational(q)));
    Some(IdentityVerdict::Proportional { kappa, exact })
}
