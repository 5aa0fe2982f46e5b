use super::GammaRatioExpr;

/// `Γ((z+a)/2δ) Γ((z+b)/2δ) / (Γ((z+c)/2δ) Γ((z+d)/2δ))`.
pub fn two_over_two(a: u32, b: u32, c: u32, d: u32, delta: u32) -> GammaRatioExpr {
    GammaRatioExpr::new(2 * delta, &[a, b], &[c, d])
}

/// Divisibility criterion for the 2-over-2 quotient: with
/// `λ = a + b - c - d`, the quotient is rational iff `2δ | λ` and
/// `2δ` divides `a - c` or `a - d`.
pub fn quotient_is_rational(a: u32, b: u32, c: u32, d: u32, delta: u32) -> bool {
    assert!(delta > 0, "delta must be positive");
    let m = 2 * i64::from(delta);
    let (a, b, c, d) = (i64::from(a), i64::from(b), i64::from(c), i64::from(d));
    let divides = |x: i64| x.rem_euclid(m) == 0;
    divides(a + b - c - d) && (divides(a - c) || divides(a - d))
}

/// Rational iff functional-equation reduction leaves no Gamma factor.
pub fn rationality_oracle(g: &GammaRatioExpr) -> bool {
    g.canonicalize().1.is_one()
}
