//! Exact arithmetic: Laurent polynomials in `a` over arbitrary-precision
//! rationals, polynomials in `z` over that ring, and a factorial memo.

mod apoly;
mod factorial;
mod zpoly;

pub use apoly::APoly;
pub use factorial::{factorial, falling_factorial};
pub use zpoly::{horner, zpoly_from_ints, ZPoly};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Reduced fraction `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `1 / n!` as a rational.
pub fn inv_factorial(n: usize) -> BigRational {
    BigRational::new(BigInt::from(1), factorial(n))
}
