//! Arbitrary-precision rational numbers, the coefficient field for everything else.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational with reduced numerator/denominator and positive denominator.
///
/// Backed by `num_rational::BigRational`, which maintains exactly the
/// invariants required here (gcd 1, denominator > 0).
pub type BigRat = num_rational::BigRational;

pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders as a decimal integer when possible, `num/den` otherwise.
pub fn rat_to_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the format produced by [`rat_to_string`].
pub fn rat_from_str(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRat::from_integer(n))
        }
    }
}

/// Extracts an exact `i64` if the rational is an integer in range.
pub fn rat_as_i64(r: &BigRat) -> Option<i64> {
    if !r.denom().is_one() {
        return None;
    }
    let n = r.numer();
    if n.bits() > 62 {
        return None;
    }
    let mag: i64 = n.abs().to_string().parse().ok()?;
    Some(if n.is_negative() { -mag } else { mag })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for r in [rat_int(0), rat_int(-17), rat(3, 7), rat(-22, 4)] {
            assert_eq!(rat_from_str(&rat_to_string(&r)).unwrap(), r);
        }
        assert_eq!(rat_to_string(&rat(-22, 4)), "-11/2");
    }

    #[test]
    fn as_i64() {
        assert_eq!(rat_as_i64(&rat_int(-5)), Some(-5));
        assert_eq!(rat_as_i64(&rat(1, 2)), None);
    }
}
