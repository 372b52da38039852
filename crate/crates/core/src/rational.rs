//! Exact arithmetic helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

pub fn in_unit_interval(v: &Rational) -> bool {
    !v.is_negative() && *v <= Rational::one()
}

/// Least common multiple of the denominators of `values` (1 for an empty iterator).
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `6^ceil(n_a / 2) * q`, the integer form of the denominator bound for values of a
/// game with `n_a` average vertices and sink denominators of lcm `q`.
pub fn denominator_bound(n_ave: usize, q: &BigInt) -> BigInt {
    num_traits::pow(BigInt::from(6u32), n_ave.div_ceil(2)) * q
}

/// Renders `num/den` with the denominator always present.
pub fn fmt_ratio(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `num/den` or a bare integer. Signs are accepted; range checks are the caller's job.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
