use crate::algebra::{Polynomial, RationalFunction};
use crate::shift::{ShiftSum, WeightExpr};

use super::GammaRatioExpr;

/// Unreduced factors of the `m`-th power weight of the canonical `p`-th root
/// of `T_{e^{ipθ} r^n}`:
/// `(z+2m)/z · Γ((z+2m)/2p) Γ((z+p+n)/2p) / (Γ(z/2p) Γ((z+2m+p+n)/2p))`.
pub(crate) fn power_weight_factors(m: u32, p: u32, n: u32) -> (RationalFunction, GammaRatioExpr) {
    assert!(p > 0, "root order must be positive");
    let rf = RationalFunction::new(Polynomial::linear(2 * m), Polynomial::z()).expect("z is nonzero");
    let g = GammaRatioExpr::new(2 * p, &[2 * m, p + n], &[0, 2 * m + p + n]);
    (rf, g)
}

/// Canonical form of the `m`-th power weight; `power_weight(p, p, n)` is
/// `(z+2p)/(z+p+n)` and `power_weight(0, p, n)` is 1.
pub fn power_weight(m: u32, p: u32, n: u32) -> WeightExpr {
    let (rf, g) = power_weight_factors(m, p, n);
    WeightExpr::term(rf, g)
}

/// Degree-1 operator whose `p`-th power is `T_{e^{ipθ} r^n}`.
pub fn root_operator(p: u32, n: u32) -> ShiftSum {
    ShiftSum::single(1, power_weight(1, p, n))
}
