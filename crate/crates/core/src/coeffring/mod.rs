//! Exact coefficient arithmetic.
//!
//! Everything symbolic in this crate lives over the ring `Q[s_1, ..., s_n]` of
//! polynomials in commuting central symbols with rational coefficients
//! ([`CoeffExpr`]), and over univariate polynomials in the diagonal generator
//! `P0` with coefficients in that ring ([`P0Poly`]).

mod coeff;
mod p0poly;
mod symbol;

pub(crate) use coeff::rational_to_f64;
pub use coeff::{CoeffExpr, Monomial};
pub use p0poly::{P0Poly, Sign};
pub use symbol::Symbol;

/// Arbitrary precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n / d` as a [`Rational`].
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
