use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;
use super::ring::Poly;
use super::Rational;
use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, stored from the
/// constant term upward. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

fn ordering_of(x: &BigInt) -> Ordering {
    x.cmp(&BigInt::zero())
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// From coefficients in ascending degree.
    pub fn from_i64s(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// From coefficients listed from the leading term down.
    pub fn from_descending(c: &[i64]) -> Self {
        IntPoly::new(c.iter().rev().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64s(&[1])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    /// Parses the comma-separated text format: integer coefficients from the
    /// leading term down, e.g. `"1,0,-2"` for `x^2 - 2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            let v: BigInt = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad polynomial coefficient {tok:?}")))?;
            c.push(v);
        }
        if c.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        c.reverse();
        Ok(IntPoly::new(c))
    }

    /// Inverse of [`IntPoly::parse`].
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check [`IntPoly::is_zero`]).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// `p(x) = x^deg p(1/x)`: palindromic coefficients.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        n > 0 && (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn to_rational_poly(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Primitive integer polynomial proportional to `p` (positive leading
    /// coefficient).
    pub fn from_rational_poly(p: &Poly<Rational>) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            p.coeffs()
                .iter()
                .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Quotient when `d` divides `self` exactly over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.leading();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(quot))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let g = self.to_rational_poly().gcd(&other.to_rational_poly());
        IntPoly::from_rational_poly(&g)
    }

    /// `p / gcd(p, p')` made primitive: same roots, all simple.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Square-free decomposition `p = c * prod s_i^i` (Yun). Returns the list
    /// of `(s_i, i)` with nonconstant primitive `s_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let p = self.to_rational_poly();
        let mut out = Vec::new();
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.divrem(&a).0;
        let mut c = dp.divrem(&a).0;
        let mut d = c.minus(&b.derivative());
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((IntPoly::from_rational_poly(&g), i));
            }
            b = b.divrem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.divrem(&g).0;
            d = c.minus(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Exact sign of `p(num/den)` for `den > 0`.
    fn sign_at_fraction(&self, num: &BigInt, den: &BigInt) -> Ordering {
        // den^deg * p(num/den) = sum c_i num^i den^(deg-i)
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        ordering_of(&acc)
    }

    pub fn sign_at_rational(&self, x: &Rational) -> Ordering {
        self.sign_at_fraction(x.numer(), x.denom())
    }

    pub fn sign_at_dyadic(&self, x: &Dyadic) -> Ordering {
        if x.exponent() >= 0 {
            ordering_of(&self.eval_bigint(&(x.mantissa() << x.exponent() as u64)))
        } else {
            self.sign_at_fraction(x.mantissa(), &(BigInt::one() << (-x.exponent()) as u64))
        }
    }

    /// Interval Horner evaluation, rounding outward to `prec` bits per step.
    pub fn eval_interval(&self, x: &Interval, prec: u32) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = (&(&acc * x) + &Interval::point(Dyadic::from_bigint(c.clone()))).round_out(prec);
        }
        acc
    }

    /// A power of two strictly exceeding the modulus of every complex root
    /// (Cauchy: `1 + max |a_i / a_n|`).
    pub fn root_bound(&self) -> Dyadic {
        let lc = self.leading().abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = Rational::new(c.abs(), lc.clone());
            if r > m {
                m = r;
            }
        }
        let b = (m + Rational::one()).ceil().to_integer();
        Dyadic::pow2(b.bits() as i64)
    }

    /// `x^d p(1/x)`.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_round_trip() {
        let lehmer = IntPoly::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1").unwrap();
        assert_eq!(lehmer.degree(), 10);
        assert_eq!(lehmer.to_text(), "1,1,0,-1,-1,-1,-1,-1,0,1,1");
        assert!(lehmer.is_palindromic());
        assert!(IntPoly::parse("1,x").is_err());
        assert_eq!(IntPoly::parse(" 1, 0 ,-2").unwrap(), IntPoly::from_i64s(&[-2, 0, 1]));
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = IntPoly::from_i64s(&[-1, 1]);
        let b = IntPoly::from_i64s(&[1, -1, -1, -1, 1]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(ab.gcd(&a.mul(&a)), a);
        let sq = a.mul(&a).mul(&b);
        assert_eq!(sq.squarefree_part(), ab);
    }

    #[test]
    fn yun_decomposition() {
        let a = IntPoly::from_i64s(&[-1, 1]);
        let b = IntPoly::from_i64s(&[2, 0, 1]);
        let p = a.pow(3).mul(&b).scale(&BigInt::from(6));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(b, 1), (a, 3)]);
    }

    #[test]
    fn signs_at_rationals_and_dyadics() {
        let p = IntPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(p.sign_at_rational(&Rational::new(3.into(), 2.into())), Ordering::Greater);
        assert_eq!(p.sign_at_dyadic(&Dyadic::new(BigInt::from(5), -2)), Ordering::Less);
        assert_eq!(p.sign_at_dyadic(&Dyadic::from_int(-2)), Ordering::Greater);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(IntPoly::from_descending(&[1, -1, -1, -1, 1]).to_string(), "x^4 - x^3 - x^2 - x + 1");
    }
}
