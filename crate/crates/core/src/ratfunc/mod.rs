//! Exact arithmetic over the rationals: univariate polynomials in `t`,
//! places of the projective line and their valuations.

mod factor;
mod parse;
mod poly;

pub use factor::{
    gcd, gcdfree_refine, is_squarefree, place_order, split_rational_roots,
    squarefree_decomposition, valuation, valuation_at_infinity, FactorBasis, Place, RootSplit,
    Valuation,
};
pub use parse::{parse_poly, ParseError, MAX_PARSE_DEGREE};
pub use poly::Poly;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RatFuncError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("zero polynomial not allowed here")]
    ZeroInput,
    #[error("factor basis does not reconstruct its input")]
    InconsistentBasis,
    #[error("not a valid finite place (monic, non-constant, squarefree): {0}")]
    InvalidPlace(String),
}

/// Parses `a` or `a/b` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    Some(Rational::new(n, d))
}
