//! Exact rational scalars.
//!
//! All closed forms in this crate evaluate to arbitrary-precision rationals;
//! `num_rational::BigRational` already maintains the two invariants we need
//! (positive denominator, fully reduced), so `Rat` is an alias rather than a
//! wrapper. The helpers here are the conversions and the wire format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational; denominator always positive, always reduced.
pub type Rat = BigRational;

/// `i64 -> Rat`.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `BigInt -> Rat`.
pub fn rat_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `p/q` as a reduced rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `k!` as a big integer.
pub fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)` starting from an `i64` point.
pub fn falling(n: i64, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= n - i;
    }
    acc
}

/// The wire format for exact rationals: always `p/q`, in lowest terms, with
/// the denominator written even when it is 1. Keeps golden files bit-exact
/// and trivially parseable.
pub fn format_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// True if `x` is a (possibly negative) integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Nearest `f64` to the exact rational; used only for Monte Carlo z-scores
/// and text output, never for equality decisions.
pub fn to_f64(x: &Rat) -> f64 {
    // Split into integer and fractional parts so huge numerators still
    // convert without overflowing the exponent range prematurely.
    let trunc = x.trunc();
    let fract = x - &trunc;
    let t = bigint_to_f64(trunc.numer());
    let f = bigint_to_f64(fract.numer()) / bigint_to_f64(fract.denom());
    t + f
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    // BigInt implements ToPrimitive; fall back to +-inf on overflow.
    num_traits::ToPrimitive::to_f64(n).unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(12), BigInt::from(479_001_600i64));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn wire_format_always_carries_denominator() {
        assert_eq!(format_rat(&ratio(1, 5)), "1/5");
        assert_eq!(format_rat(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rat(&rat(7)), "7/1");
        assert_eq!(format_rat(&rat(0)), "0/1");
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&ratio(1, 4)), 0.25);
        assert!((to_f64(&ratio(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
