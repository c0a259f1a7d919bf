//! Rational scalars and small vector helpers.
//!
//! [`Rational`] is an arbitrary-precision fraction kept reduced with a
//! positive denominator; `Display` renders `p/q`, or just `p` when the value
//! is an integer. All comparisons are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Integer lattice point or digit.
pub type IntVector = Vec<BigInt>;

/// Exact rational point.
pub type RatVector = Vec<Rational>;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// True when every coordinate lies in the half-open cube `(-1/2, 1/2]`.
pub fn in_half_open_unit_cube(v: &[Rational]) -> bool {
    let half = rat(1, 2);
    let neg_half = rat(-1, 2);
    v.iter().all(|x| *x > neg_half && *x <= half)
}

/// Parses `p` or `p/q` with an optional leading minus sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// Smallest integer `>= x`.
pub fn ceil_to_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Largest integer `<= x`.
pub fn floor_to_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Sum of absolute values, the vector contribution to a row-sum norm.
pub fn abs_sum(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

/// Least common multiple of the denominators of `v`.
pub fn denominator_lcm(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| {
        num_integer::lcm(acc, x.denom().clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_positive_denominator() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(rat(1, 3).to_string(), "1/3");
        assert_eq!(rat(-1, 3).to_string(), "-1/3");
        assert_eq!(rat(8, 4).to_string(), "2");
        assert_eq!(rat_int(0).to_string(), "0");
    }

    #[test]
    fn half_open_cube_membership() {
        assert!(in_half_open_unit_cube(&[rat(1, 2), rat(-1, 3)]));
        assert!(!in_half_open_unit_cube(&[rat(-1, 2)]));
        assert!(!in_half_open_unit_cube(&[rat(2, 3)]));
        assert!(in_half_open_unit_cube(&[]));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-7"), Some(rat_int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor_to_int(&rat(7, 2)), BigInt::from(3));
        assert_eq!(floor_to_int(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil_to_int(&rat(7, 2)), BigInt::from(4));
        assert_eq!(ceil_to_int(&rat(-7, 2)), BigInt::from(-3));
    }
}
