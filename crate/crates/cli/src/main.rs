//! `quasitoep`: exact weighted-shift calculus for quasihomogeneous Toeplitz
//! operators on the Bergman space.
//!
//! Exit codes: 0 success or PASS, 1 verified negative, 2 inconclusive (also
//! inputs outside the theorem's hypotheses), 64 usage error.

mod render;
mod report;
mod terms;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quasitoep::gamma::identity::{lattice_samples, verify_identity, IdentityKind, IdentityParams, IdentityVerdict};
use quasitoep::gamma::{quotient_is_rational, rationality_oracle, root_operator, two_over_two};
use quasitoep::mellin::{bergman_quadrature_oracle, mellin_transform, parse_symbol, toeplitz_weight};
use quasitoep::shift::{apply_to_basis_with, commutator, is_zero_with, op_equal, Equality, ShiftSum, ZeroTest};
use quasitoep::solver::{scan, verify_theorem, TheoremOutcome};
use quasitoep::Error;
use rug::{Float, Rational};
use serde::Serialize;

use report::*;

#[derive(Parser)]
#[command(name = "quasitoep", version, about = "Exact weighted-shift calculus for quasihomogeneous Toeplitz operators")]
#[command(after_help = terms::TERM_GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Working precision for ball arithmetic, in bits.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u32).range(32..=100_000))]
    precision: u32,
    /// Significant digits for printed ball midpoints and for quadrature.
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(5..=1000))]
    digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Mellin transform of a radial symbol.
    Mellin {
        #[arg(long)]
        symbol: String,
    },
    /// Weight of T_{e^{ipθ}φ} on z^k, as a function of z = 2k+2.
    Weight {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        symbol: String,
    },
    /// Image of z^k under a sum of terms.
    Apply {
        /// Operator term; repeat to add terms.
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
        #[arg(long)]
        k: u64,
    },
    /// Commutator [A, B] and whether it vanishes.
    Commutator {
        #[arg(long, required = true)]
        a: Vec<String>,
        #[arg(long, required = true)]
        b: Vec<String>,
    },
    /// Rationality of Γ((z+a)/2δ)Γ((z+b)/2δ) / (Γ((z+c)/2δ)Γ((z+d)/2δ)).
    Rationality {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        delta: u32,
    },
    /// Checks that the m-th power of the root of T_{e^{ipθ}r^n} has the closed-form weight.
    RootVerify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Power to take; defaults to p, which must give T_{e^{ipθ}r^n}.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Evaluates a Gamma-ratio identity on lattice sample points.
    IdentityCheck {
        /// commutator-balance, reduced-form or shift-functional.
        #[arg(long, value_parser = parse_kind)]
        kind: IdentityKind,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=10_000))]
        samples: u32,
    },
    /// Nullspace dimensions of the commutant system for every (m, l) up to the bound.
    Scan {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        bound: u32,
        #[arg(long = "K", default_value_t = 40)]
        truncation: u32,
    },
    /// Decides whether the commutant of T within the scanned range is {cT}.
    VerifyTheorem {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        bound: u32,
        #[arg(long = "K", default_value_t = 40)]
        truncation: u32,
    },
    /// Weight on z^k by numerical quadrature of the Bergman inner product.
    OracleQuadrature {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        k: u32,
    },
}

/// T = T_{e^{ipθ}r^n} + T_{e^{isθ}r^d}.
#[derive(clap::Args)]
struct Pair {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
}

fn parse_kind(s: &str) -> Result<IdentityKind, String> {
    IdentityKind::parse(s).ok_or_else(|| "expected commutator-balance, reduced-form or shift-functional".into())
}

/// Result triage mapped to the exit code.
#[derive(Clone, Copy)]
enum Status {
    Ok = 0,
    Negative = 1,
    Inconclusive = 2,
}

const USAGE: u8 = 64;

struct Settings {
    precision: u32,
    digits: u32,
    output: Output,
}

impl Settings {
    fn emit<T: Serialize>(&self, report: &T) {
        let value = serde_json::to_value(report).expect("reports serialize");
        match self.output {
            Output::Json => println!("{value}"),
            Output::Text => print!("{}", render::render(&value)),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let settings = Settings { precision: cli.precision, digits: cli.digits, output: cli.output };
    match run(cli.command, &settings) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::QuadratureNonConvergence { .. } | Error::BallDivisionByZero => {
                    ExitCode::from(Status::Inconclusive as u8)
                }
                _ => {
                    eprintln!("run `quasitoep --help` for the command grammar");
                    ExitCode::from(USAGE)
                }
            }
        }
    }
}

fn run(command: Command, cfg: &Settings) -> quasitoep::Result<Status> {
    let digits = cfg.digits as usize;
    match command {
        Command::Mellin { symbol } => {
            let phi = parse_symbol(&symbol)?;
            cfg.emit(&MellinReport { symbol: phi.to_string(), transform: mellin_transform(&phi).value.to_string() });
        }
        Command::Weight { p, symbol } => {
            let w = toeplitz_weight(p, &parse_symbol(&symbol)?);
            cfg.emit(&Part { degree: p, weight: w.to_string() });
        }
        Command::Apply { terms, k } => {
            let op = terms::parse_sum(&terms)?;
            let image = apply_to_basis_with(&op, k, cfg.precision)?;
            cfg.emit(&ApplyReport::new(k, &op, &image, digits));
        }
        Command::Commutator { a, b } => {
            let (a, b) = (terms::parse_sum(&a)?, terms::parse_sum(&b)?);
            let c = commutator(&a, &b);
            let commutes = all_zero(&c, cfg.precision);
            cfg.emit(&CommutatorReport {
                commutes,
                a: Operator::new(&a),
                b: Operator::new(&b),
                commutator: Operator::new(&c),
            });
        }
        Command::Rationality { a, b, c, d, delta } => {
            let g = two_over_two(a, b, c, d, delta);
            let (cofactor, rest) = g.canonicalize();
            let report = RationalityReport {
                divisibility: quotient_is_rational(a, b, c, d, delta),
                oracle: rationality_oracle(&g),
                expression: g.to_string(),
                cofactor: cofactor.to_string(),
                residual_gamma: rest.to_string(),
            };
            let agree = report.divisibility == report.oracle;
            cfg.emit(&report);
            if !agree {
                return Ok(Status::Negative);
            }
        }
        Command::RootVerify { p, n, m } => {
            let m = m.unwrap_or(p);
            let root = root_operator(p, n);
            let composed = (0..m).fold(ShiftSum::identity(), |acc, _| quasitoep::shift::compose(&acc, &root));
            let target = ShiftSum::single(m, quasitoep::gamma::power_weight(m, p, n));
            let target = if m == p { quasitoep::mellin::monomial_operator(p, n) } else { target };
            let equality = op_equal(&composed, &target);
            cfg.emit(&RootReport {
                p,
                n,
                m,
                root_weight: root.weight(1).map(ToString::to_string).unwrap_or_else(|| "0".into()),
                composed: Operator::new(&composed),
                target: Operator::new(&target),
                syntactic: composed == target,
                equality: match equality {
                    Equality::Equal => "equal",
                    Equality::NotEqual => "not-equal",
                    Equality::Unknown => "unknown",
                },
            });
            return Ok(match equality {
                Equality::Equal => Status::Ok,
                Equality::NotEqual => Status::Negative,
                Equality::Unknown => Status::Inconclusive,
            });
        }
        Command::IdentityCheck { kind, pair, m, l, samples } => {
            let params = IdentityParams { p: pair.p, s: pair.s, n: pair.n, d: pair.d, m, l };
            let report = verify_identity(kind, params, &lattice_samples(samples), cfg.precision)?;
            cfg.emit(&IdentityJson::new(&report, digits));
            return Ok(match report.verdict {
                IdentityVerdict::Proportional { .. } | IdentityVerdict::BothVanish => Status::Ok,
                IdentityVerdict::NotProportional { .. } => Status::Negative,
                IdentityVerdict::Inconclusive => Status::Inconclusive,
            });
        }
        Command::Scan { pair, bound, truncation } => {
            let r = scan(pair.p, pair.s, pair.n, pair.d, bound, truncation)?;
            cfg.emit(&ScanJson::new(&r, digits));
            return Ok(if r.outside_hypotheses() {
                Status::Inconclusive
            } else if !r.counterexamples.is_empty() {
                Status::Negative
            } else if r.cells.iter().any(|c| !c.stable) {
                Status::Inconclusive
            } else {
                Status::Ok
            });
        }
        Command::VerifyTheorem { pair, bound, truncation } => {
            let r = verify_theorem(pair.p, pair.s, pair.n, pair.d, bound, truncation)?;
            cfg.emit(&TheoremJson::new(&r, digits));
            return Ok(match r.outcome {
                TheoremOutcome::Pass => Status::Ok,
                TheoremOutcome::Fail => Status::Negative,
                TheoremOutcome::Inconclusive | TheoremOutcome::OutsideHypotheses => Status::Inconclusive,
            });
        }
        Command::OracleQuadrature { p, symbol, k } => {
            let phi = parse_symbol(&symbol)?;
            let q = bergman_quadrature_oracle(p, &phi, k, cfg.digits)?;
            let z0 = Rational::from(2 * u64::from(k) + 2);
            let exact = toeplitz_weight(p, &phi).eval_exact(&z0)?.expect("symbol weights are rational");
            let diff = Float::with_val(q.value.prec(), &q.value - &exact).abs();
            let agrees = diff <= 1e-10;
            cfg.emit(&QuadratureReport {
                p,
                symbol: phi.to_string(),
                k,
                digits: cfg.digits,
                value: q.value.to_string_radix(10, Some(digits)),
                error_estimate: q.error_estimate.to_string_radix(10, Some(6)),
                exact: exact.to_string(),
                difference: diff.to_string_radix(10, Some(6)),
                agrees,
            });
            if !agrees {
                return Ok(Status::Negative);
            }
        }
    }
    Ok(Status::Ok)
}

/// `Some(true)` when every part is certified zero, `Some(false)` when one is
/// certified nonzero.
fn all_zero(op: &ShiftSum, prec: u32) -> Option<bool> {
    let mut undecided = false;
    for (_, w) in op.parts() {
        match is_zero_with(w, prec) {
            ZeroTest::Zero => {}
            ZeroTest::NonZero => return Some(false),
            ZeroTest::Unknown => undecided = true,
        }
    }
    (!undecided).then_some(true)
}
