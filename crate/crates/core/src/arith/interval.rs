use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::dyadic::{Dyadic, Round};
use super::Rational;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation returns an interval containing the exact image of its
/// operands. Addition, subtraction and multiplication are exact on the
/// endpoints; [`Interval::round_out`] trims mantissas afterwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

/// Digits used when intervals are rendered as text.
pub const DISPLAY_DIGITS: usize = 20;

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Interval { lo, hi }
    }

    pub fn try_new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: {lo} > {hi}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(d: Dyadic) -> Self {
        Interval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Interval::point(Dyadic::from_int(v))
    }

    pub fn zero() -> Self {
        Interval::from_int(0)
    }

    pub fn one() -> Self {
        Interval::from_int(1)
    }

    /// Enclosure of a rational with about `prec` significant bits.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    /// True when `other` is a subset of `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True when `other` lies in the interior of `self`.
    pub fn strictly_encloses(&self, other: &Interval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: std::cmp::min(&self.lo, &other.lo).clone(),
            hi: std::cmp::max(&self.hi, &other.hi).clone(),
        }
    }

    /// Certified sign: `Some` when the interval excludes zero or is `[0,0]`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.sign() == Ordering::Greater {
            Some(Ordering::Greater)
        } else if self.hi.sign() == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Ordering::Greater && self.hi.sign() != Ordering::Less
    }

    /// Certified comparison; `None` when the intervals overlap (unless both
    /// are the same point).
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Outward rounding of both endpoints to `prec` significant bits.
    pub fn round_out(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.sign() != Ordering::Less {
            self.clone()
        } else if self.hi.sign() != Ordering::Greater {
            -self
        } else {
            let m = std::cmp::max(self.lo.abs(), self.hi.abs());
            Interval {
                lo: Dyadic::zero(),
                hi: m,
            }
        }
    }

    /// `[max(lo, d), max(hi, d)]`: the image of `x -> max(x, d)`.
    pub fn max_with(&self, d: &Dyadic) -> Interval {
        Interval {
            lo: std::cmp::max(&self.lo, d).clone(),
            hi: std::cmp::max(&self.hi, d).clone(),
        }
    }

    /// Image of `x -> x^2`, tight when the interval straddles zero.
    pub fn square(&self) -> Interval {
        let a = self.abs();
        Interval {
            lo: &a.lo * &a.lo,
            hi: &a.hi * &a.hi,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    pub fn recip(&self, prec: u32) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let one = Dyadic::one();
        Ok(Interval {
            lo: one.div(&self.hi, prec, Round::Down),
            hi: one.div(&self.lo, prec, Round::Up),
        })
    }

    pub fn div(&self, other: &Interval, prec: u32) -> Result<Interval> {
        let r = other.recip(prec + 8)?;
        Ok((self * &r).round_out(prec))
    }

    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.lo.sign() == Ordering::Less {
            return Err(Error::Domain(format!("sqrt of interval with lower end {}", self.lo)));
        }
        Ok(Interval {
            lo: self.lo.sqrt(prec, Round::Down),
            hi: self.hi.sqrt(prec, Round::Up),
        })
    }

    /// `"[lo,hi]"` with `digits` significant digits, rounded outward.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        format!(
            "[{},{}]",
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up)
        )
    }

    pub fn to_f64_mid(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(DISPLAY_DIGITS))
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal_string(DISPLAY_DIGITS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let a = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(3));
        let b = Interval::new(Dyadic::from_int(-5), Dyadic::from_int(1));
        let p = &a * &b;
        assert_eq!(p.lo(), &Dyadic::from_int(-15));
        assert_eq!(p.hi(), &Dyadic::from_int(10));
    }

    #[test]
    fn square_of_straddling_interval_starts_at_zero() {
        let a = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(1));
        assert_eq!(a.square(), Interval::new(Dyadic::zero(), Dyadic::from_int(4)));
    }

    #[test]
    fn division_contains_quotient() {
        let a = Interval::from_rational(&q(1, 3), 40);
        let b = Interval::from_rational(&q(-7, 5), 40);
        let c = a.div(&b, 40).unwrap();
        assert!(c.contains_rational(&q(-5, 21)));
        assert!(Interval::one().div(&Interval::new(Dyadic::from_int(-1), Dyadic::one()), 10).is_err());
    }

    #[test]
    fn decimal_string_is_outward() {
        let third = Interval::from_rational(&q(1, 3), 60);
        assert_eq!(third.to_decimal_string(4), "[0.3333,0.3334]");
        assert_eq!(Interval::from_int(2).to_decimal_string(4), "[2,2]");
    }
}
