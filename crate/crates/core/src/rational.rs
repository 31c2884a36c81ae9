//! Helpers around exact rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_uint(value: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value.clone()))
}

pub fn from_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders `p/q` in lowest terms; integers keep their `/1`.
pub fn fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses a `p/q` (or bare integer) string back into a reduced rational.
pub fn parse_fraction(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Nearest `f64`; `num-rational` rounds big ratios correctly.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
