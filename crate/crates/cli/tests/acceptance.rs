//! End-to-end acceptance run: one PASS/FAIL line per criterion with timing.

use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use quasitoep::gamma::identity::{lattice_samples, verify_identity, IdentityKind, IdentityParams, IdentityVerdict};
use quasitoep::gamma::{quotient_is_rational, rationality_oracle, root_operator, two_over_two};
use quasitoep::mellin::{bergman_quadrature_oracle, monomial_operator, toeplitz_weight, RadialSymbol};
use quasitoep::shift::{commutator, compose, linear_combine, ShiftSum, WeightExpr};
use quasitoep::text::parse_weight;
use rug::{Float, Rational};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_quasitoep")).args(args).output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (code, json)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_law() -> Check {
    let (code, v) = cli(&["weight", "--p", "0", "--symbol", "1"]);
    ensure(code == 0, || format!("exit {code}"))?;
    let w = v["weight"].as_str().ok_or("no weight field")?;
    let parsed = parse_weight(w).map_err(|e| e.to_string())?;
    ensure(parsed == WeightExpr::one() && v["degree"] == 0, || format!("got {v}"))?;
    Ok(format!("weight {w:?}"))
}

fn display_reproduction() -> Check {
    let mut count = 0;
    for p in 1..=5u32 {
        for n in 1..=8u32 {
            let got = toeplitz_weight(p, &RadialSymbol::monomial(n));
            let want = parse_weight(&format!("(z+{})/(z+{})", 2 * p, p + n)).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("p={p} n={n}: {got} != {want}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} exact matches"))
}

fn quadrature_cross_check() -> Check {
    let mut worst = Float::new(64);
    let mut count = 0;
    for p in 0..=4u32 {
        for n in 0..=8u32 {
            let phi = RadialSymbol::monomial(n);
            let w = toeplitz_weight(p, &phi);
            for k in 0..=30u32 {
                let q = bergman_quadrature_oracle(p, &phi, k, 15).map_err(|e| e.to_string())?;
                let exact =
                    w.eval_exact(&Rational::from(2 * k + 2)).map_err(|e| e.to_string())?.ok_or("not rational")?;
                let diff = Float::with_val(q.value.prec(), &q.value - &exact).abs();
                ensure(diff <= 1e-10, || format!("p={p} n={n} k={k}: |diff| = {diff}"))?;
                if diff > worst {
                    worst = Float::with_val(64, &diff);
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases, max |diff| = {}", worst.to_string_radix(10, Some(3))))
}

fn root_telescoping() -> Check {
    let mut count = 0;
    for p in 1..=4u32 {
        for n in 0..=8u32 {
            let root = root_operator(p, n);
            let composed = (0..p).fold(ShiftSum::identity(), |acc, _| compose(&acc, &root));
            let target = ShiftSum::single(p, toeplitz_weight(p, &RadialSymbol::monomial(n)));
            ensure(composed == target, || format!("p={p} n={n}: {composed:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} syntactic matches"))
}

fn rationality_decision() -> Check {
    let mut count = 0;
    let mut rational = 0;
    for delta in 1..=3 {
        for a in 0..=12 {
            for b in 0..=12 {
                for c in 0..=12 {
                    for d in 0..=12 {
                        let decided = quotient_is_rational(a, b, c, d, delta);
                        let oracle = rationality_oracle(&two_over_two(a, b, c, d, delta));
                        ensure(decided == oracle, || format!("disagree at a={a} b={b} c={c} d={d} δ={delta}"))?;
                        count += 1;
                        rational += usize::from(oracle);
                    }
                }
            }
        }
    }
    Ok(format!("{count} cases, {rational} rational, 0 disagreements"))
}

fn dims_of(row: &Value) -> Vec<(u64, u64)> {
    row["dims"]
        .as_array()
        .map(|a| a.iter().map(|d| (d["K"].as_u64().unwrap_or(0), d["dim"].as_u64().unwrap_or(0))).collect())
        .unwrap_or_default()
}

/// `verify-theorem` PASSes with c = 1, every other cell is trivial, and the
/// `(p, s)` cell is unchanged at K = 40, 50, 60.
fn theorem(p: u32, s: u32, n: u32, d: u32) -> Check {
    let args = [p, s, n, d].map(|x| x.to_string());
    let (code, v) = cli(&[
        "verify-theorem",
        "--p",
        &args[0],
        "--s",
        &args[1],
        "--n",
        &args[2],
        "--d",
        &args[3],
        "--bound",
        "8",
        "--K",
        "60",
    ]);
    ensure(code == 0 && v["pass"] == true, || format!("exit {code}: {}", v["reason"]))?;
    ensure(v["c"] == "1", || format!("c = {}", v["c"]))?;
    let rows = v["scan"]["rows"].as_array().ok_or("no rows")?;
    let mut cell = None;
    for row in rows {
        let at = (row["m"].as_u64(), row["l"].as_u64());
        if at == (Some(p.into()), Some(s.into())) {
            cell = Some(row);
        } else {
            ensure(row["dim"] == 0, || format!("nontrivial cell {row}"))?;
        }
    }
    let cell = cell.ok_or("no (p, s) cell")?;
    let dims = dims_of(cell);
    let raw = cell["dim"].as_u64().unwrap_or(0);
    for k in [40, 50, 60] {
        ensure(dims.iter().any(|&(kk, dim)| kk == k && dim == raw), || format!("dims {dims:?}"))?;
    }
    ensure(cell["glued_dim"] == 1 && cell["root_match"] == "1", || format!("cell {cell}"))?;
    let classes: Vec<u64> = cell["classes"]
        .as_array()
        .map(|a| a.iter().map(|c| c["dim"].as_u64().unwrap_or(0)).collect())
        .unwrap_or_default();
    ensure(classes.iter().all(|&c| c == 1), || format!("class dims {classes:?}"))?;
    let mut detail = format!("c = 1; ({p},{s}) dims {dims:?}; all {} other cells trivial", rows.len() - 1);
    if raw != 1 {
        detail += &format!(
            "; sequence nullspace dim {raw} = {} residue classes mod gcd(p,s) of dim 1 each, one shared constant",
            classes.len()
        );
    }
    Ok(detail)
}

fn functional_identity() -> Check {
    let base = IdentityParams { p: 1, s: 2, n: 2, d: 3, m: 1, l: 2 };
    let samples = lattice_samples(50);
    let run = |kind, params| verify_identity(kind, params, &samples, 200).map_err(|e| e.to_string());

    let r = run(IdentityKind::ShiftFunctional, base)?;
    ensure(r.verdict == IdentityVerdict::BothVanish && r.left.is_zero() && r.right.is_zero(), || {
        format!("(1,2): {:?}", r.verdict)
    })?;
    let balance = run(IdentityKind::CommutatorBalance, base)?;
    let kappa = match &balance.verdict {
        IdentityVerdict::Proportional { exact: Some(k), .. } => k.clone(),
        other => return Err(format!("(1,2) commutator balance: {other:?}")),
    };
    ensure(balance.samples.len() == 50, || format!("{} samples evaluated", balance.samples.len()))?;

    let r = run(IdentityKind::ShiftFunctional, IdentityParams { m: 2, l: 3, ..base })?;
    let witnesses = match &r.verdict {
        IdentityVerdict::NotProportional { witnesses } if !witnesses.is_empty() => witnesses.clone(),
        other => return Err(format!("(2,3): {other:?}")),
    };
    let (z1, z2) = &witnesses[0];
    Ok(format!(
        "(1,2): both sides of H(z)F(z+2)=F(z) vanish identically (ratio 0/0), commutator balance ratio {kappa} on 50 \
         samples at 200 bits; (2,3): {} witness pairs, first (z={z1}, z={z2})",
        witnesses.len()
    ))
}

fn small_q() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::from((n, d)))
}

fn exact_op() -> impl Strategy<Value = ShiftSum> {
    prop::collection::vec((small_q(), 0u32..=3, 0u32..=6), 1..=3).prop_map(|terms| {
        let ops: Vec<(Rational, ShiftSum)> = terms.into_iter().map(|(c, p, n)| (c, monomial_operator(p, n))).collect();
        linear_combine(&ops)
    })
}

fn algebra_suite() -> Check {
    let cases = 500;
    let run = |name: &str, test: &dyn Fn(&ShiftSum, &ShiftSum, &ShiftSum, &Rational) -> bool| -> Result<(), String> {
        let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
        runner
            .run(&(exact_op(), exact_op(), exact_op(), small_q()), |(a, b, c, q)| {
                if test(&a, &b, &c, &q) {
                    Ok(())
                } else {
                    Err(TestCaseError::fail(name.to_string()))
                }
            })
            .map_err(|e| format!("{name}: {e}"))
    };
    run("associativity", &|a, b, c, _| compose(&compose(a, b), c) == compose(a, &compose(b, c)))?;
    run("bilinearity", &|a, b, c, q| {
        let left = commutator(&a.scale(q).add(b), c);
        left == commutator(a, c).scale(q).add(&commutator(b, c))
            && commutator(c, &a.scale(q).add(b)) == commutator(c, a).scale(q).add(&commutator(c, b))
    })?;
    run("antisymmetry", &|a, b, _, _| commutator(a, b) == commutator(b, a).scale(&Rational::from(-1)))?;
    run("jacobi", &|a, b, c, _| {
        let j = commutator(a, &commutator(b, c))
            .add(&commutator(b, &commutator(c, a)))
            .add(&commutator(c, &commutator(a, b)));
        j.is_zero()
    })?;
    Ok(format!("4 laws x {cases} exact cases, 0 failures"))
}

fn degenerate_pair() -> Check {
    let (code, v) = cli(&["commutator", "--a", "1:r", "--b", "2:r^2"]);
    ensure(code == 0 && v["commutes"] == true, || format!("commutator: exit {code}, {v}"))?;
    ensure(v["commutator"]["parts"].as_array().is_some_and(Vec::is_empty), || format!("{v}"))?;
    let (code, v) = cli(&["scan", "--p", "1", "--s", "2", "--n", "1", "--d", "2", "--bound", "8", "--K", "40"]);
    ensure(code == 2 && v["outside_hypotheses"] == true && v["nondegenerate"] == false, || {
        format!("scan: exit {code}, outside_hypotheses {}", v["outside_hypotheses"])
    })?;
    let (code, v) =
        cli(&["verify-theorem", "--p", "1", "--s", "2", "--n", "1", "--d", "2", "--bound", "8", "--K", "40"]);
    ensure(code == 2 && v["outcome"] == "outside-hypotheses", || format!("verify-theorem: exit {code}"))?;
    Ok("T_{e^{iθ}r} and T_{e^{2iθ}r^2} commute exactly; scan and verify-theorem report outside hypotheses".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("identity law", 1, identity_law),
        ("monomial weight display", 1, display_reproduction),
        ("quadrature cross-check", 30, quadrature_cross_check),
        ("root telescoping", 10, root_telescoping),
        ("rationality decision vs oracle", 60, rationality_decision),
        ("commutant (1,2,2,3)", 120, || theorem(1, 2, 2, 3)),
        ("commutant (2,4,3,5), s = 2p", 120, || theorem(2, 4, 3, 5)),
        ("commutant (1,2,3,6), odd multiple", 120, || theorem(1, 2, 3, 6)),
        ("shift functional identity", 10, functional_identity),
        ("operator algebra laws", 30, algebra_suite),
        ("degenerate pair", 5, degenerate_pair),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the {limit} s budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {status} [{:.2} s / {limit} s] {name}: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
