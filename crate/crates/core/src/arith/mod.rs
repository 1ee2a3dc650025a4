//! Exact arithmetic: rationals, the cyclotomic field of 12th roots of unity,
//! and dense univariate polynomials over the integers and over that field.

mod cyc12;
mod poly;

pub use cyc12::Cyc12;
pub use poly::{CycPoly, IntPoly};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational as an `i64`, if it is integral and fits.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Smallest integer `>= q`.
pub fn ceil_i64(q: &Rational) -> i64 {
    q.ceil().to_integer().to_i64().expect("ceiling out of i64 range")
}

/// Largest integer `<= q`.
pub fn floor_i64(q: &Rational) -> i64 {
    q.floor().to_integer().to_i64().expect("floor out of i64 range")
}
