//! Numeric traits the rest of the crate is generic over.
//!
//! Polynomial coefficients and matrix entries are drawn from a [`Scalar`]
//! (a field, in practice `BigRational`), while group exponents are drawn
//! from an [`Exponent`] (an integer type, in practice `BigInt`).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num, Signed, ToPrimitive};

/// Coefficient field for polynomials and matrices.
///
/// Span tests are only meaningful over an exact field; `f64` is provided
/// for evaluation and interop, not for basis construction.
pub trait Scalar:
    Num + Signed + Clone + PartialEq + Debug + Display + FromPrimitive + Send + Sync + 'static
{
    /// Whether the value is an integer.
    fn is_integral(&self) -> bool;

    fn from_bigint(value: &BigInt) -> Option<Self>;
}

impl Scalar for BigRational {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(BigRational::from_integer(value.clone()))
    }
}

impl Scalar for Ratio<i64> {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i64().map(Ratio::from_integer)
    }
}

impl Scalar for f64 {
    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_f64()
    }
}

/// Integer type used for exponent vectors during collection.
///
/// Arithmetic goes through the checked operations so that fixed-width
/// types report overflow instead of wrapping.
pub trait Exponent:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_bigint(value: &BigInt) -> Option<Self>;

    fn to_bigint(&self) -> BigInt;
}

impl Exponent for BigInt {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl Exponent for i64 {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exponent for i128 {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i128()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// Renders a rational as `p/q`, omitting the denominator when it is 1.
pub fn rational_to_string(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p/q` or `p` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "-3", "7/2", "-11/4"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&q), s);
        }
        assert_eq!(rational_to_string(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(rational_to_string(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn integrality() {
        assert!(BigRational::from_integer(4.into()).is_integral());
        assert!(!parse_rational("1/3").unwrap().is_integral());
        assert!(2.0f64.is_integral());
        assert!(!Ratio::new(1i64, 2).is_integral());
    }
}
