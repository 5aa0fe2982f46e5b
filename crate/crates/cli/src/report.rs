//! Serializable views of the library results.
//!
//! Field order is declaration order. Exact rationals and expressions are
//! strings in the syntax the library parsers accept; balls are
//! `{"mid", "rad"}` decimal strings.

use quasitoep::gamma::identity::{IdentityReport, IdentityVerdict, Side};
use quasitoep::gamma::BallValue;
use quasitoep::shift::{BasisVector, Coefficient, ShiftSum};
use quasitoep::solver::{CellReport, ClassReport, Constant, ScanReport, TheoremOutcome, TheoremReport};
use rug::Rational;
use serde::Serialize;

#[derive(Serialize)]
pub struct Ball {
    pub mid: String,
    pub rad: String,
}

impl Ball {
    pub fn new(b: &BallValue, digits: usize) -> Self {
        Ball { mid: b.mid_string(digits), rad: b.rad_string() }
    }
}

/// An exact rational string or a ball.
#[derive(Serialize)]
#[serde(untagged)]
pub enum Number {
    Exact(String),
    Ball(Ball),
}

impl Number {
    pub fn constant(c: &Constant, digits: usize) -> Self {
        match c {
            Constant::Exact(q) => Number::Exact(q.to_string()),
            Constant::Approx(b) => Number::Ball(Ball::new(b, digits)),
        }
    }

    fn coefficient(c: &Coefficient, digits: usize) -> Self {
        match c {
            Coefficient::Exact(q) => Number::Exact(q.to_string()),
            Coefficient::Ball(b) => Number::Ball(Ball::new(b, digits)),
        }
    }
}

fn opt_constant(c: &Option<Constant>, digits: usize) -> Option<Number> {
    c.as_ref().map(|c| Number::constant(c, digits))
}

#[derive(Serialize)]
pub struct MellinReport {
    pub symbol: String,
    pub transform: String,
}

#[derive(Serialize)]
pub struct Part {
    pub degree: u32,
    pub weight: String,
}

#[derive(Serialize)]
pub struct Operator {
    pub parts: Vec<Part>,
}

impl Operator {
    pub fn new(op: &ShiftSum) -> Self {
        Operator { parts: op.parts().map(|(degree, w)| Part { degree, weight: w.to_string() }).collect() }
    }
}

#[derive(Serialize)]
pub struct Entry {
    pub index: u64,
    pub coeff: Number,
}

#[derive(Serialize)]
pub struct ApplyReport {
    pub k: u64,
    pub operator: Operator,
    pub image: Vec<Entry>,
}

impl ApplyReport {
    pub fn new(k: u64, op: &ShiftSum, image: &[BasisVector], digits: usize) -> Self {
        ApplyReport {
            k,
            operator: Operator::new(op),
            image: image
                .iter()
                .map(|v| Entry { index: v.index, coeff: Number::coefficient(&v.coeff, digits) })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CommutatorReport {
    /// `null` when the zero test is undecided.
    pub commutes: Option<bool>,
    pub a: Operator,
    pub b: Operator,
    pub commutator: Operator,
}

#[derive(Serialize)]
pub struct RationalityReport {
    pub divisibility: bool,
    pub oracle: bool,
    pub expression: String,
    pub cofactor: String,
    pub residual_gamma: String,
}

#[derive(Serialize)]
pub struct RootReport {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub root_weight: String,
    pub composed: Operator,
    pub target: Operator,
    pub syntactic: bool,
    /// `equal`, `not-equal` or `unknown`.
    pub equality: &'static str,
}

#[derive(Serialize)]
pub struct Params {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub d: u32,
    pub m: u32,
    pub l: u32,
}

#[derive(Serialize)]
pub struct Term {
    pub side: &'static str,
    pub coeff: String,
    pub gamma: String,
}

#[derive(Serialize)]
pub struct Sample {
    pub z: String,
    pub left: Ball,
    pub right: Ball,
    pub ratio: Ball,
}

#[derive(Serialize)]
pub struct IdentityJson {
    pub kind: &'static str,
    /// `proportional`, `both-vanish`, `not-proportional` or `inconclusive`.
    pub verdict: &'static str,
    pub kappa: Option<Ball>,
    pub kappa_exact: Option<String>,
    pub witnesses: Vec<[String; 2]>,
    pub params: Params,
    pub precision: u32,
    pub left: String,
    pub right: String,
    pub reduced_terms: Vec<Term>,
    pub skipped: Vec<String>,
    pub samples: Vec<Sample>,
}

impl IdentityJson {
    pub fn new(r: &IdentityReport, digits: usize) -> Self {
        let (verdict, kappa, kappa_exact, witnesses) = match &r.verdict {
            IdentityVerdict::Proportional { kappa, exact } => {
                ("proportional", Some(Ball::new(kappa, digits)), exact.as_ref().map(Rational::to_string), Vec::new())
            }
            IdentityVerdict::BothVanish => ("both-vanish", None, None, Vec::new()),
            IdentityVerdict::NotProportional { witnesses } => (
                "not-proportional",
                None,
                None,
                witnesses.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
            ),
            IdentityVerdict::Inconclusive => ("inconclusive", None, None, Vec::new()),
        };
        let p = r.params;
        IdentityJson {
            kind: r.kind.name(),
            verdict,
            kappa,
            kappa_exact,
            witnesses,
            params: Params { p: p.p, s: p.s, n: p.n, d: p.d, m: p.m, l: p.l },
            precision: r.precision,
            left: r.left.to_string(),
            right: r.right.to_string(),
            reduced_terms: r
                .reduced_terms
                .iter()
                .map(|t| Term {
                    side: match t.side {
                        Side::Left => "left",
                        Side::Right => "right",
                    },
                    coeff: t.coeff.to_string(),
                    gamma: t.gamma.to_string(),
                })
                .collect(),
            skipped: r.skipped.iter().map(Rational::to_string).collect(),
            samples: r
                .samples
                .iter()
                .map(|s| Sample {
                    z: s.z.to_string(),
                    left: Ball::new(&s.left, digits),
                    right: Ball::new(&s.right, digits),
                    ratio: Ball::new(&s.ratio, digits),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Truncation {
    #[serde(rename = "K")]
    pub k: u32,
    pub dim: usize,
}

#[derive(Serialize)]
pub struct ClassRow {
    pub residue: u32,
    pub dim: usize,
    pub c1: Option<Number>,
    pub c2: Option<Number>,
    pub root_match: Option<Number>,
}

impl ClassRow {
    fn new(c: &ClassReport, digits: usize) -> Self {
        ClassRow {
            residue: c.residue,
            dim: c.dimension,
            c1: opt_constant(&c.c1, digits),
            c2: opt_constant(&c.c2, digits),
            root_match: opt_constant(&c.root_match, digits),
        }
    }
}

#[derive(Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub l: u32,
    pub dim: usize,
    pub stable: bool,
    pub root_match: Option<Number>,
    pub verified: bool,
    pub glued_dim: Option<usize>,
    pub c1: Option<Number>,
    pub c2: Option<Number>,
    pub dims: Vec<Truncation>,
    pub modulus: u32,
    pub classes: Vec<ClassRow>,
}

impl ScanRow {
    fn new(c: &CellReport, digits: usize) -> Self {
        ScanRow {
            m: c.m,
            l: c.l,
            dim: c.dimension,
            stable: c.stable,
            root_match: opt_constant(&c.root_match, digits),
            verified: c.verified,
            glued_dim: c.glued_dimension,
            c1: opt_constant(&c.c1, digits),
            c2: opt_constant(&c.c2, digits),
            dims: c.dims.iter().map(|&(k, dim)| Truncation { k, dim }).collect(),
            modulus: c.modulus,
            classes: c.classes.iter().map(|x| ClassRow::new(x, digits)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ScanJson {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub d: u32,
    pub bound: u32,
    #[serde(rename = "K")]
    pub truncation: u32,
    pub nondegenerate: bool,
    pub outside_hypotheses: bool,
    pub counterexamples: Vec<[u32; 2]>,
    pub rows: Vec<ScanRow>,
}

impl ScanJson {
    pub fn new(r: &ScanReport, digits: usize) -> Self {
        ScanJson {
            p: r.p,
            s: r.s,
            n: r.n,
            d: r.d,
            bound: r.bound,
            truncation: r.truncation,
            nondegenerate: r.nondegenerate,
            outside_hypotheses: r.outside_hypotheses(),
            counterexamples: r.counterexamples.iter().map(|&(m, l)| [m, l]).collect(),
            rows: r.cells.iter().map(|c| ScanRow::new(c, digits)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct TheoremJson {
    pub pass: bool,
    pub c: Option<Number>,
    /// `pass`, `fail`, `inconclusive` or `outside-hypotheses`.
    pub outcome: &'static str,
    pub reason: String,
    pub scan: ScanJson,
}

impl TheoremJson {
    pub fn new(r: &TheoremReport, digits: usize) -> Self {
        TheoremJson {
            pass: r.outcome == TheoremOutcome::Pass,
            c: opt_constant(&r.c, digits),
            outcome: match r.outcome {
                TheoremOutcome::Pass => "pass",
                TheoremOutcome::Fail => "fail",
                TheoremOutcome::Inconclusive => "inconclusive",
                TheoremOutcome::OutsideHypotheses => "outside-hypotheses",
            },
            reason: r.reason.clone(),
            scan: ScanJson::new(&r.scan, digits),
        }
    }
}

#[derive(Serialize)]
pub struct QuadratureReport {
    pub p: u32,
    pub symbol: String,
    pub k: u32,
    pub digits: u32,
    pub value: String,
    pub error_estimate: String,
    pub exact: String,
    pub difference: String,
    /// `|value - exact| <= 1e-10`.
    pub agrees: bool,
}
