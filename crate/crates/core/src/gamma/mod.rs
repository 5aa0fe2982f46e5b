//! Gamma quotients with affine arguments `(z + offset) / 2δ`, their
//! functional-equation reduction, and certified ball evaluation.

mod ball;
mod expr;
pub mod identity;
mod rationality;
mod roots;

pub use ball::{recognize_rational, BallValue, DEFAULT_PRECISION};
pub use expr::{GammaAtom, GammaRatioExpr};
pub use rationality::{quotient_is_rational, rationality_oracle, two_over_two};
pub use roots::{power_weight, root_operator};
