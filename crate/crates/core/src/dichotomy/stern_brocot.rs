use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Result, SsgError};
use crate::rational::{fmt_ratio, Rational};

/// The rational of smallest denominator in `[lo, hi]` (with `0 <= lo <= hi`), found
/// by descending the Stern-Brocot tree. Runs of steps in the same direction are
/// taken in one division, so the cost is that of a continued fraction expansion.
/// Fails if that denominator exceeds `max_denominator`.
pub fn stern_brocot(lo: &Rational, hi: &Rational, max_denominator: &BigInt) -> Result<Rational> {
    let none = || SsgError::NoCandidate {
        lo: fmt_ratio(lo),
        hi: fmt_ratio(hi),
        bound: max_denominator.to_string(),
    };
    if lo > hi || *lo < Rational::zero() {
        return Err(none());
    }
    let ceil = lo.ceil();
    if ceil <= *hi {
        return Ok(ceil);
    }
    let (a, b) = (lo.numer(), lo.denom());
    let (c, d) = (hi.numer(), hi.denom());
    // left = p0/q0 < lo, right = p1/q1 > hi
    let (mut p0, mut q0) = (lo.floor().to_integer(), BigInt::one());
    let (mut p1, mut q1) = (&p0 + 1, BigInt::one());
    loop {
        let (pm, qm) = (&p0 + &p1, &q0 + &q1);
        if &qm > max_denominator {
            return Err(none());
        }
        if &pm * b < a * &qm {
            // mediant < lo: largest t with (p0 + t p1) / (q0 + t q1) < lo
            let num: BigInt = a * &q0 - b * &p0;
            let den = b * &p1 - a * &q1;
            let t = num.div_ceil(&den) - 1;
            p0 += &t * &p1;
            q0 += &t * &q1;
        } else if &pm * d > c * &qm {
            // mediant > hi: largest t with (p1 + t p0) / (q1 + t q0) > hi
            let num: BigInt = d * &p1 - c * &q1;
            let den = c * &q0 - d * &p0;
            let t = num.div_ceil(&den) - 1;
            p1 += &t * &p0;
            q1 += &t * &q0;
        } else {
            return Ok(Rational::new(pm, qm));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn simplest_by_enumeration(lo: &Rational, hi: &Rational, bound: i64) -> Option<Rational> {
        (1..=bound).find_map(|q| (0..=q).map(|p| ratio(p, q)).find(|r| r >= lo && r <= hi))
    }

    #[test]
    fn third() {
        let r = stern_brocot(&ratio(3330, 10000), &ratio(3340, 10000), &BigInt::from(10)).unwrap();
        assert_eq!(r, ratio(1, 3));
    }

    #[test]
    fn point_interval() {
        assert_eq!(stern_brocot(&ratio(1, 2), &ratio(1, 2), &BigInt::from(2)).unwrap(), ratio(1, 2));
    }

    #[test]
    fn two_thirds() {
        let r = stern_brocot(&ratio(66, 100), &ratio(67, 100), &BigInt::from(3)).unwrap();
        assert_eq!(r, ratio(2, 3));
    }

    #[test]
    fn integer_endpoints() {
        assert_eq!(stern_brocot(&ratio(0, 1), &ratio(1, 1000), &BigInt::from(5)).unwrap(), ratio(0, 1));
        assert_eq!(stern_brocot(&ratio(999, 1000), &ratio(1, 1), &BigInt::from(5)).unwrap(), ratio(1, 1));
    }

    #[test]
    fn bound_too_small() {
        let err = stern_brocot(&ratio(3330, 10000), &ratio(3340, 10000), &BigInt::from(2)).unwrap_err();
        assert!(matches!(err, SsgError::NoCandidate { .. }));
    }

    #[test]
    fn long_runs_are_batched() {
        // 1/1000001 needs a million left steps one at a time.
        let target = ratio(1, 1_000_001);
        let lo = &target - ratio(1, 1_000_000_000_000_000);
        let hi = &target + ratio(1, 1_000_000_000_000_000);
        assert_eq!(stern_brocot(&lo, &hi, &BigInt::from(2_000_000)).unwrap(), target);
    }

    #[test]
    fn matches_enumeration() {
        for q in 2..30 {
            for p in 0..q {
                let lo = ratio(p, q);
                let hi = ratio(p + 1, q) - ratio(1, 10 * q);
                let expected = simplest_by_enumeration(&lo, &hi, 40).unwrap();
                assert_eq!(stern_brocot(&lo, &hi, &BigInt::from(40)).unwrap(), expected, "[{lo}, {hi}]");
            }
        }
    }
}
