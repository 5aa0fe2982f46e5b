use rayon::prelude::*;
use rug::Rational;

use super::{
    build_system, match_root_power_at, nondegenerate, nullspace, CommutantProblem, Constant, STABILIZATION_STEP,
};
use crate::error::{Error, Result};

/// Solutions supported on the indices `k ≡ residue (mod modulus)`.
///
/// Every equation links indices that differ by multiples of `p` and `s`, so
/// the system splits into independent blocks, one per residue class modulo
/// `gcd(p, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub residue: u32,
    pub dimension: usize,
    pub c1: Option<Constant>,
    pub c2: Option<Constant>,
    pub root_match: Option<Constant>,
}

/// Nullspace data for one `(m, l)` pair.
#[derive(Clone, Debug, PartialEq)]
pub struct CellReport {
    pub m: u32,
    pub l: u32,
    /// Dimension of the sequence-space nullspace at the requested truncation.
    pub dimension: usize,
    /// `(K, dimension)` for every truncation solved, ascending in `K`.
    pub dims: Vec<(u32, usize)>,
    /// Dimension unchanged between `K` and `K + STABILIZATION_STEP`.
    pub stable: bool,
    /// Every basis vector satisfies the system exactly.
    pub verified: bool,
    /// `gcd(p, s)`: the number of independent residue-class blocks.
    pub modulus: u32,
    pub classes: Vec<ClassReport>,
    /// Dimension of the solutions whose `F` and `G` blocks are single root
    /// power weights across all residue classes: 0 for a trivial nullspace,
    /// 1 when every class holds one solution and the classes share the
    /// constant `c₂ / c₁`, undetermined otherwise.
    pub glued_dimension: Option<usize>,
    /// Basis at the requested truncation, one class at a time; vectors are
    /// scaled so their `F` block matches the root power weight when it does.
    pub basis: Vec<Vec<Rational>>,
    /// The glued solution with `c₁ = 1`, when `glued_dimension` is 1.
    pub glued: Option<Vec<Rational>>,
    /// `F_k = c₁ · power_weight(m, p, n)(z_k)` for the glued solution.
    pub c1: Option<Constant>,
    /// `G_k = c₂ · power_weight(l, s, d)(z_k)` for the glued solution.
    pub c2: Option<Constant>,
    /// `c₂ / c₁`.
    pub root_match: Option<Constant>,
}

impl CellReport {
    pub fn nontrivial(&self) -> bool {
        self.dimension > 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub d: u32,
    pub bound: u32,
    pub truncation: u32,
    /// `[T_{e^{ipθ}r^n}, T_{e^{isθ}r^d}] ≠ 0`.
    pub nondegenerate: bool,
    pub cells: Vec<CellReport>,
    /// Pairs other than `(p, s)` with a stable nonzero nullspace.
    pub counterexamples: Vec<(u32, u32)>,
}

impl ScanReport {
    /// True when the commuting-pair condition fails, so the theorem does not
    /// apply to this input.
    pub fn outside_hypotheses(&self) -> bool {
        !self.nondegenerate
    }

    pub fn cell(&self, m: u32, l: u32) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.m == m && c.l == l)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Matches one class's basis vector against the root power weights and
/// scales it so that `c₁ = 1` when possible.
fn match_class(prob: &CommutantProblem, v: &mut [Rational], residue: u32, modulus: u32) -> ClassReport {
    let ks: Vec<u32> = (0..=prob.truncation).filter(|k| k % modulus == residue).collect();
    let take = |v: &[Rational], col: &dyn Fn(u32) -> usize| -> Vec<(u32, Rational)> {
        ks.iter().map(|&k| (k, v[col(k)].clone())).collect()
    };
    let mut c1 = match_root_power_at(&take(v, &|k| prob.f_col(k)), prob.m, prob.p, prob.n);
    let mut c2 = match_root_power_at(&take(v, &|k| prob.g_col(k)), prob.l, prob.s, prob.d);
    if let Some(Constant::Exact(a)) = &c1 {
        if a.cmp0().is_ne() {
            let inv = Rational::from(a.recip_ref());
            v.iter_mut().for_each(|x| *x *= &inv);
            c2 = c2.and_then(|c| c.ratio(&Constant::Exact(a.clone())));
            c1 = Some(Constant::Exact(Rational::from(1)));
        }
    }
    let root_match = match (&c1, &c2) {
        (Some(a), Some(b)) => b.ratio(a),
        _ => None,
    };
    ClassReport { residue, dimension: 1, c1, c2, root_match }
}

#[allow(clippy::too_many_arguments)]
fn solve_cell(p: u32, s: u32, n: u32, d: u32, m: u32, l: u32, ks: &[u32], primary: u32) -> Result<CellReport> {
    let prob = CommutantProblem::new(p, s, n, d, m, l, primary)?;
    let mut dims = Vec::new();
    let mut main = None;
    for &k in ks {
        let ns = nullspace(&build_system(&prob.with_truncation(k)?));
        dims.push((k, ns.dimension));
        if k == primary {
            main = Some(ns);
        }
    }
    let ns = main.expect("primary truncation is in the ladder");
    let dim_at = |k: u32| dims.iter().find(|(kk, _)| *kk == k).map(|(_, dd)| *dd);
    let stable = dim_at(primary) == dim_at(primary + STABILIZATION_STEP);

    let modulus = gcd(p, s);
    let index_of = |col: usize| {
        let split = prob.f_col(primary) + 1;
        (if col < split { col } else { col - split }) as u32
    };
    let mut per_class: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); modulus as usize];
    for v in ns.basis {
        let first = v.iter().position(|x| x.cmp0().is_ne()).expect("basis vectors are nonzero");
        per_class[(index_of(first) % modulus) as usize].push(v);
    }
    let mut classes = Vec::new();
    let mut basis = Vec::new();
    for (residue, mut vs) in per_class.into_iter().enumerate() {
        let residue = residue as u32;
        let report = match vs.as_mut_slice() {
            [v] => match_class(&prob, v, residue, modulus),
            _ => ClassReport { residue, dimension: vs.len(), c1: None, c2: None, root_match: None },
        };
        classes.push(report);
        basis.extend(vs);
    }

    let dimension = basis.len();
    let shared = classes.first().and_then(|c| c.root_match.clone()).filter(|c0| {
        matches!(c0, Constant::Exact(_))
            && classes.iter().all(|c| {
                c.dimension == 1
                    && c.c1 == Some(Constant::Exact(Rational::from(1)))
                    && c.root_match.as_ref() == Some(c0)
            })
    });
    let (glued_dimension, glued, c1, c2, root_match) = match (dimension, shared) {
        (0, _) => (Some(0), None, None, None, None),
        (_, Some(c)) => {
            let mut g = vec![Rational::new(); prob.unknowns()];
            for v in &basis {
                for (acc, x) in g.iter_mut().zip(v) {
                    *acc += x;
                }
            }
            (Some(1), Some(g), Some(Constant::Exact(Rational::from(1))), Some(c.clone()), Some(c))
        }
        _ => (None, None, None, None, None),
    };
    Ok(CellReport {
        m,
        l,
        dimension,
        dims,
        stable,
        verified: ns.verified,
        modulus,
        classes,
        glued_dimension,
        basis,
        glued,
        c1,
        c2,
        root_match,
    })
}

fn check_pair(p: u32, s: u32, n: u32, d: u32) -> Result<()> {
    if p == 0 || p >= s || n == 0 || d == 0 {
        return Err(Error::InvalidParameters("need 1 <= p < s and positive n, d".into()));
    }
    Ok(())
}

/// Solves every `(m, l)` with `1 <= m < l <= bound` and `l + p = m + s` at
/// truncations `K` and `K + STABILIZATION_STEP`. Cells run in parallel and
/// are reported in ascending `m`.
pub fn scan(p: u32, s: u32, n: u32, d: u32, bound: u32, truncation: u32) -> Result<ScanReport> {
    scan_with_ladder(p, s, n, d, bound, truncation, &[])
}

fn scan_with_ladder(p: u32, s: u32, n: u32, d: u32, bound: u32, truncation: u32, extra: &[u32]) -> Result<ScanReport> {
    check_pair(p, s, n, d)?;
    let alpha = s - p;
    let pairs: Vec<(u32, u32)> = (1..).map(|m| (m, m + alpha)).take_while(|&(_, l)| l <= bound).collect();
    if let Some(&(_, l)) = pairs.last() {
        if truncation < l.max(s) {
            return Err(Error::InvalidParameters("truncation K must be at least max(s, bound)".into()));
        }
    }
    let mut ks: Vec<u32> = extra.iter().copied().filter(|&k| k < truncation).collect();
    ks.extend([truncation, truncation + STABILIZATION_STEP]);
    let cells = pairs
        .par_iter()
        .map(|&(m, l)| {
            let ladder: Vec<u32> = ks.iter().copied().filter(|&k| k >= l.max(s)).collect();
            solve_cell(p, s, n, d, m, l, &ladder, truncation)
        })
        .collect::<Result<Vec<_>>>()?;
    let counterexamples =
        cells.iter().filter(|c| (c.m, c.l) != (p, s) && c.nontrivial() && c.stable).map(|c| (c.m, c.l)).collect();
    Ok(ScanReport { p, s, n, d, bound, truncation, nondegenerate: nondegenerate(p, n, s, d), cells, counterexamples })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremOutcome {
    Pass,
    Fail,
    Inconclusive,
    OutsideHypotheses,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub outcome: TheoremOutcome,
    /// Shared constant `c₂ / c₁` of the `(p, s)` solution.
    pub c: Option<Constant>,
    pub reason: String,
    pub scan: ScanReport,
}

/// Truncations below `K` that the `(p, s)` cell must also be stable at.
const LADDER_OFFSETS: [u32; 2] = [20, 10];

/// PASS iff the only nontrivial stable nullspace is at `(m, l) = (p, s)`,
/// it is one-dimensional at every truncation in the ladder, and its `F`
/// and `G` blocks are the weights of `T_{e^{ipθ}r^n}` and `T_{e^{isθ}r^d}`
/// times one shared constant.
pub fn verify_theorem(p: u32, s: u32, n: u32, d: u32, bound: u32, truncation: u32) -> Result<TheoremReport> {
    let extra: Vec<u32> = LADDER_OFFSETS.iter().filter_map(|&o| truncation.checked_sub(o)).collect();
    let scan = scan_with_ladder(p, s, n, d, bound, truncation, &extra)?;
    let report = |outcome, c, reason: String, scan| Ok(TheoremReport { outcome, c, reason, scan });
    if scan.outside_hypotheses() {
        return report(TheoremOutcome::OutsideHypotheses, None, "the two terms of T commute".into(), scan);
    }
    let unverified: Vec<_> = scan.cells.iter().filter(|c| !c.verified).map(|c| (c.m, c.l)).collect();
    if !unverified.is_empty() {
        return report(TheoremOutcome::Fail, None, format!("basis failed exact re-check at {unverified:?}"), scan);
    }
    if !scan.counterexamples.is_empty() {
        let reason = format!("nontrivial stable solutions at {:?}", scan.counterexamples);
        return report(TheoremOutcome::Fail, None, reason, scan);
    }
    let unstable: Vec<_> = scan.cells.iter().filter(|c| !c.stable).map(|c| (c.m, c.l)).collect();
    if !unstable.is_empty() {
        let reason = format!("dimension not stable by K + {STABILIZATION_STEP} at {unstable:?}");
        return report(TheoremOutcome::Inconclusive, None, reason, scan);
    }
    let Some(cell) = scan.cell(p, s).cloned() else {
        return report(TheoremOutcome::Inconclusive, None, format!("bound {bound} excludes (m, l) = ({p}, {s})"), scan);
    };
    if cell.dims.iter().any(|&(_, dim)| dim != cell.dimension) {
        let reason = format!("dimension at (m, l) = ({p}, {s}) varies with K: {:?}", cell.dims);
        return report(TheoremOutcome::Inconclusive, None, reason, scan);
    }
    if cell.glued_dimension != Some(1) {
        let reason = format!(
            "nullspace at (m, l) = ({p}, {s}) has dimension {} and is not one solution per residue class mod {} with a shared constant",
            cell.dimension, cell.modulus
        );
        return report(TheoremOutcome::Fail, cell.root_match.clone(), reason, scan);
    }
    match &cell.root_match {
        Some(Constant::Exact(c)) if *c == 1 => {
            let reason = if cell.modulus == 1 {
                format!("unique solution at (m, l) = ({p}, {s}), dimensions {:?}", cell.dims)
            } else {
                format!(
                    "unique solution at (m, l) = ({p}, {s}) after joining {} residue classes mod {}, sequence dimensions {:?}",
                    cell.modulus, cell.modulus, cell.dims
                )
            };
            report(TheoremOutcome::Pass, cell.root_match.clone(), reason, scan)
        }
        other => {
            let reason = match other {
                Some(c) => format!("F and G blocks carry different constants, ratio {c}"),
                None => "basis is not a multiple of the operator weights".into(),
            };
            report(TheoremOutcome::Fail, other.clone(), reason, scan)
        }
    }
}
