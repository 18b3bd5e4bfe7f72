//! Interval enclosures of `log` and `acosh`.
//!
//! Everything is computed in fixed point with `w` fractional bits. Series
//! partial sums are accumulated with floors, so each sum is a lower bound
//! and the matching upper bound adds an explicit error term in ulps.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;
use super::Rational;
use crate::error::{Error, Result};

/// Largest working precision tried before giving up.
const MAX_WORKING_BITS: u64 = 1 << 16;

/// Lower bound for `atanh(num/den) * 2^w` and the ulp error bound.
///
/// Requires `0 <= num/den <= 1/3`, which makes the series terms shrink by
/// at least a factor of 9.
fn atanh_fixed(num: &BigInt, den: &BigInt, w: u64) -> (BigInt, BigInt) {
    if num.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let num2 = num * num;
    let den2 = den * den;
    let mut pw: BigInt = (num << w) / den;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !pw.is_zero() {
        sum += &pw / BigInt::from(2 * k + 1);
        pw = (&pw * &num2) / &den2;
        k += 1;
    }
    // Each floor of pw costs at most one ulp and the error is contracted by
    // later multiplications; each division adds one more ulp; the tail after
    // pw reaches zero is below two ulps.
    (sum, BigInt::from(5 * k + 10))
}

/// Lower and upper bounds for `ln 2 * 2^w`.
fn ln2_fixed(w: u64) -> (BigInt, BigInt) {
    let (s, e) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    let lo = &s << 1u32;
    let hi = &lo + (&e << 1u32);
    (lo, hi)
}

/// Bound on `log x * 2^w` in direction `dir` for a positive dyadic `x`.
fn log_fixed(x: &Dyadic, w: u64, dir: Round) -> BigInt {
    if x.is_one() {
        return BigInt::zero();
    }
    // Round the argument in the same direction so monotonicity keeps the
    // bound valid while bounding mantissa growth.
    let x = x.round((w + 16) as u32, dir);
    let k = x.log2_floor().expect("log of zero");
    // r = x / 2^k in [1, 2) and z = (r-1)/(r+1) in [0, 1/3).
    let bits = x.mantissa().bits();
    let half = BigInt::one() << (bits - 1);
    let num = x.mantissa() - &half;
    let den = x.mantissa() + &half;
    let (s, e) = atanh_fixed(&num, &den, w);
    let (l2lo, l2hi) = ln2_fixed(w);
    let kk = BigInt::from(k);
    match dir {
        Round::Down => {
            let l2 = if k >= 0 { &l2lo } else { &l2hi };
            &kk * l2 + (&s << 1u32)
        }
        Round::Up => {
            let l2 = if k >= 0 { &l2hi } else { &l2lo };
            &kk * l2 + ((&s + &e) << 1u32)
        }
    }
}

fn log_at(x: &Interval, w: u64) -> Interval {
    let lo = Dyadic::new(log_fixed(x.lo(), w, Round::Down), -(w as i64));
    let hi = Dyadic::new(log_fixed(x.hi(), w, Round::Up), -(w as i64));
    Interval::new(lo, hi)
}

/// Enclosure of `log` over `x`.
///
/// The result has width at most `width(x)/x.lo + 2^(1-prec)`; `log 1` is
/// returned exactly.
pub fn log_enclosure(x: &Interval, prec: u32) -> Result<Interval> {
    if x.lo().sign() != Ordering::Greater {
        return Err(Error::Domain(format!("log of interval with lower end {}", x.lo())));
    }
    if x.is_point() && x.lo().is_one() {
        return Ok(Interval::zero());
    }
    let k = x.hi().log2_floor().unwrap().abs().max(x.lo().log2_floor().unwrap().abs()) as u64;
    let allowed = x.width().to_rational() / x.lo().to_rational()
        + Dyadic::pow2(1 - prec as i64).to_rational();
    let mut w = prec as u64 + 16 + (64 - k.leading_zeros() as u64);
    loop {
        let r = log_at(x, w);
        if r.width().to_rational() <= allowed {
            return Ok(r);
        }
        w *= 2;
        if w > MAX_WORKING_BITS {
            return Err(Error::Precision(format!("log enclosure at {prec} bits")));
        }
    }
}

/// Enclosure of `acosh` over `x`, evaluated as `log(x + sqrt(x^2 - 1))` at
/// both endpoints.
pub fn acosh_enclosure(x: &Interval, prec: u32) -> Result<Interval> {
    if x.lo() < &Dyadic::one() {
        return Err(Error::Domain(format!("acosh of interval with lower end {}", x.lo())));
    }
    let sq = x.square();
    let one = Dyadic::one();
    let m = Interval::new(sq.lo() - &one, sq.hi() - &one);
    acosh_parts(x, &m, prec)
}

/// `acosh(sqrt(c))` from enclosures of `c` and `c - 1` supplied separately,
/// which keeps full relative precision when `c` is close to 1.
pub fn acosh_from_cosh_sq(c: &Interval, c_minus_1: &Interval, prec: u32) -> Result<Interval> {
    if c_minus_1.hi().sign() == Ordering::Less || c.hi() < &Dyadic::one() {
        return Err(Error::Domain("cosh^2 below 1".into()));
    }
    let zero = Dyadic::zero();
    let one = Dyadic::one();
    let c = c.max_with(&one);
    let cm1 = c_minus_1.max_with(&zero);
    let w = prec + 24;
    let x = c.sqrt(w)?;
    acosh_parts(&x, &cm1, prec)
}

/// `log(x + sqrt(m))` where `m` encloses `x^2 - 1`.
fn acosh_parts(x: &Interval, m: &Interval, prec: u32) -> Result<Interval> {
    let zero = Dyadic::zero();
    let m = m.max_with(&zero);
    if x.is_point() && x.lo().is_one() {
        return Ok(Interval::zero());
    }
    let w = prec + 24;
    let s = m.sqrt(w)?;
    let a = (x + &s).round_out(w);
    let a = a.max_with(&Dyadic::one());
    let r = log_enclosure(&a, prec + 2)?;
    Ok(r.max_with(&zero))
}

/// Enclosure of the rational `r` rounded outward to `prec` bits.
pub fn rational_enclosure(r: &Rational, prec: u32) -> Interval {
    Interval::from_rational(r, prec)
}

/// Interval `sqrt` helper for nonnegative enclosures.
pub fn sqrt_enclosure(x: &Interval, prec: u32) -> Result<Interval> {
    if x.hi().sign() == Ordering::Less {
        return Err(Error::Domain("sqrt of negative interval".into()));
    }
    x.max_with(&Dyadic::zero()).sqrt(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> Rational {
        crate::arith::parse_rational(s).unwrap()
    }

    fn contains(iv: &Interval, v: f64, tol: f64) -> bool {
        iv.lo().to_f64() - tol <= v && v <= iv.hi().to_f64() + tol
    }

    #[test]
    fn log_of_one_is_exact_zero() {
        assert_eq!(log_enclosure(&Interval::one(), 10).unwrap(), Interval::zero());
        assert_eq!(acosh_enclosure(&Interval::one(), 10).unwrap(), Interval::zero());
    }

    #[test]
    fn log_two() {
        let r = log_enclosure(&Interval::from_int(2), 40).unwrap();
        assert!(r.contains_rational(&dec("0.69314718055994530941")));
        assert!(r.width() <= Dyadic::pow2(-39));
    }

    #[test]
    fn log_small_and_large() {
        let r = log_enclosure(&Interval::point(Dyadic::pow2(-100)), 60).unwrap();
        assert!(contains(&r, -100.0 * std::f64::consts::LN_2, 1e-12));
        let r = log_enclosure(&Interval::from_int(1_000_000), 60).unwrap();
        assert!(contains(&r, (1e6f64).ln(), 1e-12));
    }

    #[test]
    fn log_lehmer_interval() {
        let x = Interval::from_rational(&dec("1.176280818"), 64)
            .hull(&Interval::from_rational(&dec("1.176280819"), 64));
        let r = log_enclosure(&x, 40).unwrap();
        assert!(r.contains_rational(&dec("0.1623576118")));
    }

    #[test]
    fn acosh_examples() {
        let r = acosh_enclosure(&Interval::from_rational(&dec("2.0938363"), 64), 40).unwrap();
        assert!(contains(&r, 1.3695149607, 1e-9));
        let r = acosh_enclosure(&Interval::from_rational(&dec("1.0371567"), 64), 40).unwrap();
        assert!(contains(&r, 0.2717678, 1e-6));
        assert!(acosh_enclosure(&Interval::from_rational(&dec("0.5"), 10), 10).is_err());
        assert!(log_enclosure(&Interval::zero(), 10).is_err());
    }

    #[test]
    fn acosh_near_one_keeps_precision() {
        // c = 1 + 2^-80, so acosh(sqrt c) ~ 2^-40
        let cm1 = Interval::point(Dyadic::pow2(-80));
        let c = &Interval::one() + &cm1;
        let r = acosh_from_cosh_sq(&c, &cm1, 64).unwrap();
        assert!(r.lo().sign() == Ordering::Greater);
        assert!(r.width() <= Dyadic::pow2(-63));
        assert!(contains(&r, 2f64.powi(-40), 1e-20));
    }
}
