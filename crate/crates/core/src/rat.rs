//! Exact rational numbers.
//!
//! All coefficients and exponents in this crate are arbitrary-precision
//! rationals kept in lowest terms with a positive denominator, which is the
//! normal form `num_rational::BigRational` maintains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

pub type Rat = num_rational::BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The value as an `i64` if it is an integer that fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// True iff `r * m` is an integer.
pub fn in_lattice(r: &Rat, m: i64) -> bool {
    (r * int(m)).is_integer()
}

pub(crate) fn denom_i64(r: &Rat) -> i64 {
    r.denom().to_i64().expect("denominator out of range")
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

pub(crate) fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |g, &x| gcd(g, x))
}

pub(crate) fn pow(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Formats `r` so that the series parser reads it back: integers bare,
/// fractions and negatives in parentheses.
pub(crate) fn fmt_exponent(r: &Rat) -> String {
    if r.is_integer() && !r.is_negative() {
        r.to_string()
    } else {
        format!("({})", r)
    }
}
