//! Commutant equations for `S = T_{e^{imθ}f} + T_{e^{ilθ}g}` against
//! `T = T_{e^{ipθ}r^n} + T_{e^{isθ}r^d}`.
//!
//! The unknowns are the weight sequences `F_k`, `G_k` of the two parts of `S`
//! on `z^k`. Separating `ST = TS` by degree gives, with `z_k = 2k + 2`,
//! `Φ(z) = (z+2p)/(z+p+n)` and `Ψ(z) = (z+2s)/(z+s+d)`:
//!
//! 1. `F_{k+p} Φ(z_k) - Φ(z_k+2m) F_k = 0` (degree `m + p`)
//! 2. `G_{k+s} Ψ(z_k) - Ψ(z_k+2l) G_k = 0` (degree `l + s`)
//! 3. `F_{k+s} Ψ(z_k) + G_{k+p} Φ(z_k) - Ψ(z_k+2m) F_k - Φ(z_k+2l) G_k = 0`
//!    (degree `m + s = l + p`)
//!
//! Truncating at index `K` keeps the rows whose indices all lie in `0..=K`.

mod linear;
mod scan;

use std::fmt;

use rug::Rational;

use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::gamma::{power_weight, recognize_rational, BallValue, DEFAULT_PRECISION};
use crate::mellin::monomial_operator;
use crate::shift::{apply_to_basis, commutator, Coefficient, ShiftSum};

pub use linear::{nullspace_basis, residuals, SparseRow};
pub use scan::{scan, verify_theorem, CellReport, ClassReport, ScanReport, TheoremOutcome, TheoremReport};

/// Truncation increment used to check that a nullspace dimension is stable.
pub const STABILIZATION_STEP: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutantProblem {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub d: u32,
    pub m: u32,
    pub l: u32,
    pub truncation: u32,
}

impl CommutantProblem {
    /// Requires `1 <= p < s`, `1 <= m < l`, `l + p = m + s`, positive `n`,
    /// `d`, and a truncation of at least `max(p, s, m, l)`.
    pub fn new(p: u32, s: u32, n: u32, d: u32, m: u32, l: u32, truncation: u32) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidParameters(msg.into()));
        if p == 0 || m == 0 || n == 0 || d == 0 {
            return bad("p, m, n and d must be positive");
        }
        if p >= s || m >= l {
            return bad("need p < s and m < l");
        }
        if l + p != m + s {
            return bad("need l + p = m + s");
        }
        if truncation < p.max(s).max(m).max(l) {
            return bad("truncation K must be at least max(p, s, m, l)");
        }
        Ok(CommutantProblem { p, s, n, d, m, l, truncation })
    }

    pub fn with_truncation(&self, truncation: u32) -> Result<Self> {
        Self::new(self.p, self.s, self.n, self.d, self.m, self.l, truncation)
    }

    pub fn phi(&self) -> RationalFunction {
        RationalFunction::linear_ratio(2 * self.p, self.p + self.n)
    }

    pub fn psi(&self) -> RationalFunction {
        RationalFunction::linear_ratio(2 * self.s, self.s + self.d)
    }

    pub fn unknowns(&self) -> usize {
        2 * (self.truncation as usize + 1)
    }

    /// Column of `F_k`.
    pub fn f_col(&self, k: u32) -> usize {
        k as usize
    }

    /// Column of `G_k`.
    pub fn g_col(&self, k: u32) -> usize {
        (self.truncation + 1 + k) as usize
    }

    /// `T_{e^{ipθ}r^n} + T_{e^{isθ}r^d}`.
    pub fn operator(&self) -> ShiftSum {
        monomial_operator(self.p, self.n).add(&monomial_operator(self.s, self.d))
    }

    /// The sequence `(Φ(z_k), Ψ(z_k))`, which solves the system when
    /// `(m, l) = (p, s)`.
    pub fn operator_vector(&self) -> Vec<Rational> {
        let mut v = vec![Rational::new(); self.unknowns()];
        for k in 0..=self.truncation {
            let z = z_at(k);
            v[self.f_col(k)] = self.phi().eval(&z).expect("no pole for z >= 2");
            v[self.g_col(k)] = self.psi().eval(&z).expect("no pole for z >= 2");
        }
        v
    }
}

/// `[T_{e^{ipθ}r^n}, T_{e^{isθ}r^d}] ≠ 0`. Weights are rational, so the
/// canonical form decides this exactly.
pub fn nondegenerate(p: u32, n: u32, s: u32, d: u32) -> bool {
    !commutator(&monomial_operator(p, n), &monomial_operator(s, d)).is_zero()
}

fn z_at(k: u32) -> Rational {
    Rational::from(2 * k + 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// Which of the three degree families the row comes from.
    pub family: u8,
    pub k: u32,
    pub coeffs: SparseRow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLinearSystem {
    pub unknowns: usize,
    pub rows: Vec<Equation>,
}

impl ExactLinearSystem {
    pub fn sparse_rows(&self) -> Vec<SparseRow> {
        self.rows.iter().map(|e| e.coeffs.clone()).collect()
    }
}

pub fn build_system(prob: &CommutantProblem) -> ExactLinearSystem {
    let (p, s, m, l, big_k) = (prob.p, prob.s, prob.m, prob.l, prob.truncation);
    let phi = prob.phi();
    let psi = prob.psi();
    let at = |rf: &RationalFunction, z: &Rational, h: u32| rf.eval(&Rational::from(z + h)).expect("no pole for z >= 2");
    let mut rows = Vec::new();
    for k in 0..=big_k {
        let z = z_at(k);
        if k + p <= big_k {
            rows.push(Equation {
                family: 1,
                k,
                coeffs: vec![(prob.f_col(k + p), at(&phi, &z, 0)), (prob.f_col(k), -at(&phi, &z, 2 * m))],
            });
        }
        if k + s <= big_k {
            rows.push(Equation {
                family: 2,
                k,
                coeffs: vec![(prob.g_col(k + s), at(&psi, &z, 0)), (prob.g_col(k), -at(&psi, &z, 2 * l))],
            });
            rows.push(Equation {
                family: 3,
                k,
                coeffs: vec![
                    (prob.f_col(k + s), at(&psi, &z, 0)),
                    (prob.g_col(k + p), at(&phi, &z, 0)),
                    (prob.f_col(k), -at(&psi, &z, 2 * m)),
                    (prob.g_col(k), -at(&phi, &z, 2 * l)),
                ],
            });
        }
    }
    ExactLinearSystem { unknowns: prob.unknowns(), rows }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceReport {
    pub dimension: usize,
    pub rank: usize,
    pub basis: Vec<Vec<Rational>>,
    /// Every basis vector was re-multiplied against the rows and gave 0.
    pub verified: bool,
}

pub fn nullspace(sys: &ExactLinearSystem) -> NullspaceReport {
    let rows = sys.sparse_rows();
    let (rank, basis) = nullspace_basis(&rows, sys.unknowns);
    let verified = basis.iter().all(|v| residuals(&rows, v).iter().all(|r| r.cmp0().is_eq()));
    NullspaceReport { dimension: basis.len(), rank, basis, verified }
}

/// A proportionality constant, exact when it could be certified as rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Constant {
    Exact(Rational),
    Approx(BallValue),
}

impl Constant {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Constant::Exact(q) => Some(q),
            Constant::Approx(_) => None,
        }
    }

    fn to_ball(&self) -> BallValue {
        match self {
            Constant::Exact(q) => BallValue::from_rational(q, DEFAULT_PRECISION),
            Constant::Approx(b) => b.clone(),
        }
    }

    /// `self / other`; `None` if `other` may be zero.
    pub fn ratio(&self, other: &Constant) -> Option<Constant> {
        match (self, other) {
            (Constant::Exact(a), Constant::Exact(b)) if b.cmp0().is_ne() => {
                Some(Constant::Exact(Rational::from(a / b)))
            }
            (Constant::Exact(_), Constant::Exact(_)) => None,
            _ => self.to_ball().div(&other.to_ball()).ok().map(Constant::Approx),
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Exact(q) => write!(f, "{q}"),
            Constant::Approx(b) => write!(f, "{b}"),
        }
    }
}

/// The constant `c` with `v_k = c · power_weight(m, p, n)(z_k)` for every
/// `k`, if one exists: exact for rational weights, by ball comparison at the
/// default precision otherwise.
pub fn match_root_power(v: &[Rational], m: u32, p: u32, n: u32) -> Option<Constant> {
    let samples: Vec<(u32, Rational)> = v.iter().cloned().enumerate().map(|(k, x)| (k as u32, x)).collect();
    match_root_power_at(&samples, m, p, n)
}

/// [`match_root_power`] on an arbitrary set of indices `(k, v_k)`.
pub fn match_root_power_at(samples: &[(u32, Rational)], m: u32, p: u32, n: u32) -> Option<Constant> {
    let w = power_weight(m, p, n);
    let zs: Vec<Rational> = samples.iter().map(|(k, _)| z_at(*k)).collect();
    let v: Vec<&Rational> = samples.iter().map(|(_, x)| x).collect();
    if let Some(rf) = w.as_rational() {
        let ws: Vec<Rational> = zs.iter().map(|z| rf.eval(z)).collect::<Result<_>>().ok()?;
        let c = match ws.iter().position(|x| x.cmp0().is_ne()) {
            Some(i) => Rational::from(v[i] / &ws[i]),
            None => Rational::new(),
        };
        let fits = v.iter().zip(&ws).all(|(vk, wk)| **vk == Rational::from(&c * wk));
        return fits.then_some(Constant::Exact(c));
    }
    if v.iter().all(|x| x.cmp0().is_eq()) {
        return Some(Constant::Exact(Rational::new()));
    }
    let prec = DEFAULT_PRECISION;
    let ws: Vec<BallValue> = zs.iter().map(|z| w.eval_ball(z, prec)).collect::<Result<_>>().ok()?;
    let i = ws.iter().position(BallValue::is_nonzero)?;
    let c = BallValue::from_rational(v[i], prec).div(&ws[i]).ok()?;
    for (vk, wk) in v.iter().zip(&ws) {
        let diff = BallValue::from_rational(vk, prec).sub(&c.mul(wk));
        if diff.is_nonzero() {
            return None;
        }
    }
    match recognize_rational(&c, 1_000_000) {
        Some(q) => Some(Constant::Exact(q)),
        None => Some(Constant::Approx(c)),
    }
}

/// Coefficients of `[S, T] z^k` for `k <= K - s`, where `S` acts by the
/// sequences in `v` and `T` by the shift algebra. All vanish iff `v` solves
/// the commutation equations on that range.
pub fn commutator_residual(prob: &CommutantProblem, v: &[Rational]) -> Result<Vec<Rational>> {
    use std::collections::BTreeMap;
    let t = prob.operator();
    let exact = |c: &Coefficient| c.as_exact().cloned().expect("rational weights");
    let mut out = Vec::new();
    for k in 0..=prob.truncation - prob.s {
        let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
        let k64 = u64::from(k);
        // S T z^k
        for bv in apply_to_basis(&t, k64)? {
            let j = bv.index as u32;
            let c = exact(&bv.coeff);
            *acc.entry(bv.index + u64::from(prob.m)).or_default() += Rational::from(&c * &v[prob.f_col(j)]);
            *acc.entry(bv.index + u64::from(prob.l)).or_default() += Rational::from(&c * &v[prob.g_col(j)]);
        }
        // T S z^k
        for (shift, coeff) in [(prob.m, &v[prob.f_col(k)]), (prob.l, &v[prob.g_col(k)])] {
            for bv in apply_to_basis(&t, k64 + u64::from(shift))? {
                *acc.entry(bv.index).or_default() -= Rational::from(coeff * &exact(&bv.coeff));
            }
        }
        out.extend(acc.into_values());
    }
    Ok(out)
}
