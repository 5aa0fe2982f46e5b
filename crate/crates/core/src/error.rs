use rug::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("rational function with zero denominator")]
    ZeroDenominator,

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("pole at z = {0}")]
    Pole(Rational),

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("negative exponent {0} is not in the supported symbol class")]
    NegativeExponent(Rational),

    #[error("quadrature did not converge; achieved error estimate {estimate}")]
    QuadratureNonConvergence { estimate: String },

    #[error("enclosure of the divisor contains zero")]
    BallDivisionByZero,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
