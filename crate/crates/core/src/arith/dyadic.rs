use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// A dyadic rational `mant * 2^exp`.
///
/// Normalized so that the mantissa is odd, or zero with exponent zero; equal
/// values therefore have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

pub(crate) fn floor_shr(m: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    m.div_floor(&(BigInt::one() << k))
}

pub(crate) fn ceil_shr(m: &BigInt, k: u64) -> BigInt {
    -floor_shr(&-m, k)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0 && self.mant.is_one()
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        match self.mant.sign() {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// `floor(log2 |x|)`; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = floor_shr(&self.mant, shift as u64).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + shift) as i32)
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let m = match dir {
            Round::Down => floor_shr(&self.mant, k),
            Round::Up => ceil_shr(&self.mant, k),
        };
        Dyadic::new(m, self.exp + k as i64)
    }

    /// Round to a multiple of `2^-frac_bits` in direction `dir`.
    pub fn round_fixed(&self, frac_bits: i64, dir: Round) -> Self {
        if self.exp >= -frac_bits {
            return self.clone();
        }
        let k = (-frac_bits - self.exp) as u64;
        let m = match dir {
            Round::Down => floor_shr(&self.mant, k),
            Round::Up => ceil_shr(&self.mant, k),
        };
        Dyadic::new(m, -frac_bits)
    }

    /// Dyadic approximation of `r` with about `prec` significant bits,
    /// rounded in direction `dir`. Exact when `r` is itself dyadic and short.
    pub fn from_rational(r: &Rational, prec: u32, dir: Round) -> Self {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let den = r.denom();
        if den.is_one() || den.trailing_zeros() == Some(den.bits() - 1) {
            let k = den.bits() as i64 - 1;
            let exact = Dyadic::new(r.numer().clone(), -k);
            return exact.round(prec, dir);
        }
        let k = prec as i64 - (r.numer().bits() as i64 - den.bits() as i64) + 1;
        let scaled = if k >= 0 {
            r.numer() << k as u64
        } else {
            // k < 0 only for huge numerators; shift the denominator instead.
            r.numer().clone()
        };
        let den_scaled = if k >= 0 {
            den.clone()
        } else {
            den << (-k) as u64
        };
        let m = match dir {
            Round::Down => scaled.div_floor(&den_scaled),
            Round::Up => -((-scaled).div_floor(&den_scaled)),
        };
        Dyadic::new(m, -k)
    }

    /// Square root of a nonnegative dyadic, rounded to about `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(self.sign() != Ordering::Less, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let e = self.exp;
        let bits = self.mant.bits() as i64;
        let f = (e.div_euclid(2)).min((bits + e).div_euclid(2) - prec as i64 - 1);
        let n: BigInt = &self.mant << (e - 2 * f) as u64;
        let r = n.sqrt();
        let exact = &r * &r == n;
        let r = if exact || dir == Round::Down { r } else { r + 1 };
        Dyadic::new(r, f)
    }

    /// `self / other` rounded to about `prec` bits.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        Dyadic::from_rational(&(self.to_rational() / other.to_rational()), prec, dir)
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).mul_pow2(-1)
    }

    /// Decimal rendering with about `digits` significant digits, rounded in
    /// direction `dir`. Values that fit are printed exactly.
    pub fn to_decimal(&self, digits: usize, dir: Round) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let l2 = self.log2_floor().unwrap();
        let e10 = ((l2 as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let frac = (digits as i64 - 1 - e10).max(0) as u32;
        let scaled = self.to_rational() * Rational::from_integer(BigInt::from(10u32).pow(frac));
        let n = match dir {
            Round::Down => scaled.floor().to_integer(),
            Round::Up => scaled.ceil().to_integer(),
        };
        format_scaled(&n, frac)
    }
}

fn format_scaled(n: &BigInt, frac: u32) -> String {
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    if frac > 0 {
        let frac = frac as usize;
        if s.len() <= frac {
            s = format!("{}{}", "0".repeat(frac + 1 - s.len()), s);
        }
        let (int, fr) = s.split_at(s.len() - frac);
        let fr = fr.trim_end_matches('0');
        s = if fr.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{fr}")
        };
    }
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let s1 = self.sign();
        let s2 = other.sign();
        if s1 != s2 || s1 == Ordering::Equal {
            return s1.cmp(&s2);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.mant)
        } else {
            write!(f, "{}*2^{}", self.mant, self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization_makes_equal_values_equal() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 5), Dyadic::zero());
        assert_eq!(d(6, -1), d(3, 0));
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(d(3, -1) < d(2, 0));
        assert!(d(-3, -1) > d(-2, 0));
        assert!(d(-1, 10) < d(1, -10));
    }

    #[test]
    fn rounding_brackets_rationals() {
        let r = Rational::new(BigInt::from(1), BigInt::from(3));
        let lo = Dyadic::from_rational(&r, 20, Round::Down);
        let hi = Dyadic::from_rational(&r, 20, Round::Up);
        assert!(lo.to_rational() < r && r < hi.to_rational());
        assert!((hi - lo).log2_floor().unwrap() <= -20);
        let neg = -r.clone();
        let lo = Dyadic::from_rational(&neg, 20, Round::Down);
        assert!(lo.to_rational() < neg);
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(64, Round::Down);
        let hi = two.sqrt(64, Round::Up);
        assert!(&lo * &lo < two && &hi * &hi > two);
        assert_eq!(Dyadic::from_int(9).sqrt(10, Round::Up), Dyadic::from_int(3));
        assert_eq!(d(1, -2).sqrt(8, Round::Down), d(1, -1));
    }

    #[test]
    fn decimal_rendering_is_directed() {
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        let x = Dyadic::from_rational(&third, 80, Round::Down);
        assert_eq!(x.to_decimal(5, Round::Down), "0.33333");
        assert_eq!(x.to_decimal(5, Round::Up), "0.33334");
        assert_eq!(Dyadic::from_int(2).to_decimal(10, Round::Down), "2");
        assert_eq!(d(-5, -1).to_decimal(10, Round::Down), "-2.5");
    }
}
