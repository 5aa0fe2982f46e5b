use quasitoep::gamma::power_weight;
use quasitoep::mellin::{parse_symbol, toeplitz_operator};
use quasitoep::shift::ShiftSum;
use quasitoep::{Error, Result};

/// Grammar accepted by `--term`, `--a` and `--b`.
pub const TERM_GRAMMAR: &str = "TERM := P:SYMBOL | root:P:N | root^M:P:N   (e.g. 1:r^2, 2:3-r, root:2:1, root^3:4:5)";

/// Parses one operator term.
///
/// `P:SYMBOL` is `T_{e^{iPθ}φ}`; `root:P:N` is the degree-one root of
/// `T_{e^{iPθ}r^N}` and `root^M:P:N` its `M`-th power.
pub fn parse_term(text: &str) -> Result<ShiftSum> {
    let bad =
        |message: &str| Error::Syntax { position: 0, message: format!("{message} in term {text:?}; {TERM_GRAMMAR}") };
    let int = |s: &str| s.trim().parse::<u32>().map_err(|_| bad("expected a nonnegative integer"));
    if let Some(rest) = text.strip_prefix("root") {
        let (m, rest) = match rest.strip_prefix('^') {
            Some(r) => {
                let (m, r) = r.split_once(':').ok_or_else(|| bad("missing ':'"))?;
                (int(m)?, r)
            }
            None => (1, rest.strip_prefix(':').ok_or_else(|| bad("missing ':'"))?),
        };
        let (p, n) = rest.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let (p, n) = (int(p)?, int(n)?);
        if p == 0 {
            return Err(bad("root degree must be positive"));
        }
        return Ok(ShiftSum::single(m, power_weight(m, p, n)));
    }
    let (p, symbol) = text.split_once(':').ok_or_else(|| bad("missing ':'"))?;
    Ok(toeplitz_operator(int(p)?, &parse_symbol(symbol)?))
}

/// Sum of the parsed terms.
pub fn parse_sum(terms: &[String]) -> Result<ShiftSum> {
    terms.iter().try_fold(ShiftSum::zero(), |acc, t| Ok(acc.add(&parse_term(t)?)))
}
