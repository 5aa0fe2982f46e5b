use std::process::{Command, Output};

use quasitoep::mellin::{monomial_operator, toeplitz_weight};
use quasitoep::text::{parse_rational, parse_weight};
use rug::Rational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasitoep")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).expect("JSON on stdout"))
}

#[test]
fn documented_outputs() {
    let out = run(&["weight", "--p", "1", "--symbol", "r^2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"degree":1,"weight":"(z+2)/(z+3)"}"#);

    let (code, v) = json(&["rationality", "--a", "2", "--b", "4", "--c", "0", "--d", "6", "--delta", "1"]);
    assert_eq!(code, 0);
    assert_eq!((v["divisibility"].clone(), v["oracle"].clone()), (Value::Bool(true), Value::Bool(true)));

    let (_, v) = json(&["commutator", "--a", "1:r", "--b", "2:r^2"]);
    assert_eq!(v["commutator"].to_string(), r#"{"parts":[]}"#);

    let (code, v) = json(&["scan", "--p", "1", "--s", "2", "--n", "2", "--d", "3", "--bound", "3", "--K", "20"]);
    assert_eq!(code, 0);
    let row = &v["rows"][0];
    assert_eq!(
        (row["m"].clone(), row["l"].clone(), row["dim"].clone(), row["stable"].clone(), row["root_match"].clone()),
        (1.into(), 2.into(), 1.into(), true.into(), "1".into())
    );
    let keys: Vec<&String> = row.as_object().unwrap().keys().take(5).collect();
    assert_eq!(keys, ["m", "l", "dim", "stable", "root_match"]);
}

#[test]
fn byte_identical_reruns() {
    let cases: [&[&str]; 4] = [
        &["verify-theorem", "--p", "1", "--s", "2", "--n", "2", "--d", "3", "--bound", "6", "--K", "30"],
        &[
            "identity-check",
            "--kind",
            "reduced-form",
            "--p",
            "1",
            "--s",
            "2",
            "--n",
            "2",
            "--d",
            "3",
            "--m",
            "2",
            "--l",
            "3",
        ],
        &["apply", "--term", "root:3:2", "--term", "2:1-r", "--k", "7"],
        &["scan", "--p", "2", "--s", "4", "--n", "3", "--d", "5", "--bound", "5", "--K", "20", "--output", "text"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["mellin", "--symbol", "r + 1/2*r^(1/2)"]), 0);
    assert_eq!(code(&["root-verify", "--p", "3", "--n", "4"]), 0);
    assert_eq!(code(&["root-verify", "--p", "2", "--n", "1", "--m", "3"]), 0);
    // (2, 3) is not a solution pair: the functional identity fails with witnesses.
    let sf = ["identity-check", "--kind", "shift-functional", "--p", "1", "--s", "2", "--n", "2", "--d", "3"];
    assert_eq!(code(&[&sf[..], &["--m", "2", "--l", "3"]].concat()), 1);
    assert_eq!(code(&[&sf[..], &["--m", "1", "--l", "2"]].concat()), 0);
    // Outside the hypotheses counts as inconclusive.
    assert_eq!(
        code(&["verify-theorem", "--p", "1", "--s", "2", "--n", "1", "--d", "2", "--bound", "4", "--K", "20"]),
        2
    );
    for bad in [
        &["frobnicate"][..],
        &["weight", "--p", "1"],
        &["weight", "--p", "1", "--symbol", "r^2", "--bogus"],
        &["weight", "--p", "x", "--symbol", "r"],
        &["weight", "--p", "1", "--symbol", "r^-1"],
        &["mellin", "--symbol", "r +"],
        &["apply", "--term", "root:0:1", "--k", "0"],
        &["rationality", "--a", "1", "--b", "1", "--c", "1", "--d", "1", "--delta", "0"],
        &["scan", "--p", "2", "--s", "1", "--n", "1", "--d", "1", "--bound", "4"],
        &["identity-check", "--kind", "nope", "--p", "1", "--s", "2", "--n", "2", "--d", "3", "--m", "1", "--l", "2"],
        &["weight", "--p", "1", "--symbol", "r", "--output", "xml"],
    ] {
        let out = run(bad);
        assert_eq!(out.status.code(), Some(64), "{bad:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["scan", "--help"]), 0);
}

#[test]
fn printed_values_parse_back() {
    for (p, sym) in [(0, "1"), (3, "2 - r^5"), (1, "1/3*r^(1/2) + r^7")] {
        let (_, v) = json(&["weight", "--p", &p.to_string(), "--symbol", sym]);
        let w = parse_weight(v["weight"].as_str().unwrap()).unwrap();
        let phi = quasitoep::mellin::parse_symbol(sym).unwrap();
        assert_eq!(w, toeplitz_weight(p, &phi));
    }
    let (_, v) = json(&["root-verify", "--p", "3", "--n", "2", "--m", "2"]);
    let w = parse_weight(v["root_weight"].as_str().unwrap()).unwrap();
    assert!(!w.is_rational());
    let target = parse_weight(v["target"]["parts"][0]["weight"].as_str().unwrap()).unwrap();
    assert_eq!(target, quasitoep::gamma::power_weight(2, 3, 2));

    let (_, v) = json(&["apply", "--term", "1:r^2", "--term", "3:r", "--k", "4"]);
    let image = v["image"].as_array().unwrap();
    let coeffs: Vec<Rational> = image.iter().map(|e| parse_rational(e["coeff"].as_str().unwrap()).unwrap()).collect();
    // (z+2)/(z+3) and (z+6)/(z+4) at z = 10
    assert_eq!(coeffs, [Rational::from((12, 13)), Rational::from((8, 7))]);
    assert_eq!(image[1]["index"], 7);

    let (_, v) = json(&["commutator", "--a", "1:r^2", "--b", "2:r"]);
    let part = &v["commutator"]["parts"][0];
    let a = monomial_operator(1, 2);
    let b = monomial_operator(2, 1);
    let want = quasitoep::shift::commutator(&a, &b);
    assert_eq!(parse_weight(part["weight"].as_str().unwrap()).unwrap(), *want.weight(3).unwrap());
    assert_eq!(v["commutes"], false);
}

#[test]
fn text_output_is_tabular() {
    let out =
        run(&["scan", "--p", "1", "--s", "2", "--n", "2", "--d", "3", "--bound", "3", "--K", "20", "--output", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().take(4).eq(["m", "l", "dim", "stable"])));
    assert!(text.contains("nondegenerate"));
}

#[test]
fn quadrature_command_agrees() {
    let (code, v) = json(&["oracle-quadrature", "--p", "2", "--symbol", "r^3", "--k", "1", "--digits", "25"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"], "8/9");
    assert_eq!(v["agrees"], true);
}
