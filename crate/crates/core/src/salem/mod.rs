//! Salem numbers: detection, trace polynomials, Mahler measure and bounded
//! enumeration.

pub mod cyclotomic;
pub mod enumerate;
pub mod mahler;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::sturm::{isolate_in, refine_root};
use crate::arith::{Dyadic, IntPoly, Interval, Matrix, Rational, SturmChain};
use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic, cyclotomics_up_to_degree, is_cyclotomic_product, strip_cyclotomic};
pub use enumerate::{enumerate_salem, enumerate_shard, enumeration_shards, Shard};
pub use mahler::{mahler_measure, MahlerEnclosure};

/// Bits of precision carried by the `lambda` enclosures built here.
pub const LAMBDA_BITS: i64 = 96;

/// `p(x) = x^deg p(1/x)`.
pub fn is_reciprocal(p: &IntPoly) -> bool {
    !p.is_zero() && p.is_palindromic()
}

/// The polynomial `q` of degree `s` with `p(x) = x^s q(x + 1/x)` for a
/// reciprocal `p` of degree `2s`.
pub fn trace_polynomial(p: &IntPoly) -> Result<IntPoly> {
    if !is_reciprocal(p) {
        return Err(Error::InvalidArgument(format!("{p} is not reciprocal")));
    }
    if p.degree() % 2 == 1 {
        return Err(Error::InvalidArgument(format!("{p} has odd degree")));
    }
    let s = p.degree() / 2;
    let c = p.coeffs();
    // T_k(y) = x^k + x^-k with y = x + 1/x.
    let y = IntPoly::monomial(1);
    let mut t_prev = IntPoly::from_i64s(&[2]);
    let mut t_cur = y.clone();
    let mut q = IntPoly::new(vec![c[s].clone()]);
    for k in 1..=s {
        q = q.add(&t_cur.scale(&c[s + k]));
        let next = y.mul(&t_cur).sub(&t_prev);
        t_prev = std::mem::replace(&mut t_cur, next);
    }
    Ok(q)
}

/// Inverse of [`trace_polynomial`]: `x^s q(x + 1/x)`.
pub fn from_trace_polynomial(q: &IntPoly) -> IntPoly {
    let s = q.degree();
    let x2p1 = IntPoly::from_i64s(&[1, 0, 1]);
    let mut p = IntPoly::zero();
    for (k, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            p = p.add(&x2p1.pow(k as u32).mul(&IntPoly::monomial(s - k)).scale(c));
        }
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SalemTag {
    Salem,
    QuadraticSalem,
    NotSalem,
}

/// Outcome of [`is_salem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SalemVerdict {
    pub tag: SalemTag,
    pub reason: String,
    pub lambda: Option<Interval>,
    pub minpoly: IntPoly,
}

impl SalemVerdict {
    fn not_salem(p: &IntPoly, reason: impl Into<String>) -> Self {
        SalemVerdict {
            tag: SalemTag::NotSalem,
            reason: reason.into(),
            lambda: None,
            minpoly: p.clone(),
        }
    }

    /// True for `Salem` and `QuadraticSalem`.
    pub fn is_affirmative(&self) -> bool {
        self.tag != SalemTag::NotSalem
    }
}

/// Decides whether `p` is the minimal polynomial of a Salem number.
///
/// Irreducibility comes from the root pattern plus cyclotomic stripping:
/// with exactly one root outside the closed unit disk and no root at `+-1`,
/// every other irreducible factor has all roots on the unit circle and is
/// cyclotomic by Kronecker's theorem.
pub fn is_salem(p: &IntPoly) -> SalemVerdict {
    if p.is_zero() {
        return SalemVerdict::not_salem(p, "zero polynomial");
    }
    if !p.is_monic() {
        return SalemVerdict::not_salem(p, "not monic");
    }
    if !is_reciprocal(p) {
        return SalemVerdict::not_salem(p, "not reciprocal");
    }
    let d = p.degree();
    if d == 0 {
        return SalemVerdict::not_salem(p, "constant polynomial");
    }
    if d % 2 == 1 {
        return SalemVerdict::not_salem(p, "odd degree, so -1 is a root");
    }
    if d == 2 {
        let m = -p.coeff(1);
        return if m >= BigInt::from(3) {
            SalemVerdict {
                tag: SalemTag::QuadraticSalem,
                reason: "x^2 - mx + 1 with m >= 3".into(),
                lambda: Some(lambda_enclosure(p, LAMBDA_BITS)),
                minpoly: p.clone(),
            }
        } else if m <= BigInt::from(-3) {
            SalemVerdict::not_salem(p, "the conjugate outside the unit circle is negative")
        } else {
            SalemVerdict::not_salem(p, "all conjugates on unit circle")
        };
    }
    let s = d / 2;
    let q = trace_polynomial(p).expect("checked reciprocal of even degree");
    let pattern = RootPattern::of(&q);
    if pattern.above == 1 && pattern.inside == s - 1 {
        let (_, factors) = strip_cyclotomic(p);
        if let Some(f) = factors.first() {
            return SalemVerdict::not_salem(p, format!("reducible: cyclotomic factor {f}"));
        }
        return SalemVerdict {
            tag: SalemTag::Salem,
            reason: "one conjugate outside the unit circle, the rest on it; irreducible".into(),
            lambda: Some(lambda_enclosure(p, LAMBDA_BITS)),
            minpoly: p.clone(),
        };
    }
    SalemVerdict::not_salem(p, pattern.failure_reason())
}

/// Distinct real roots of a trace polynomial relative to `[-2, 2]`.
struct RootPattern {
    above: usize,
    inside: usize,
    below: usize,
    at_ends: usize,
    real: usize,
    squarefree_degree: usize,
}

impl RootPattern {
    fn of(q: &IntPoly) -> Self {
        let chain = SturmChain::new(q).expect("nonzero trace polynomial");
        let two = Rational::from_integer(BigInt::from(2));
        let at2 = usize::from(q.sign_at_rational(&two) == Ordering::Equal);
        let atm2 = usize::from(q.sign_at_rational(&-&two) == Ordering::Equal);
        let above = chain.count_above(&two);
        let inside = chain.count(&-&two, &two) - at2;
        let real = chain.count_all();
        RootPattern {
            above,
            inside,
            below: real - above - inside - at2 - atm2,
            at_ends: at2 + atm2,
            real,
            squarefree_degree: chain.head().degree(),
        }
    }

    fn failure_reason(&self) -> &'static str {
        if self.real == self.squarefree_degree && self.above == 0 && self.below == 0 {
            "all conjugates on unit circle"
        } else if self.above + self.below >= 2 {
            "more than one conjugate outside the unit circle"
        } else if self.real < self.squarefree_degree {
            "conjugates off both the unit circle and the real axis"
        } else if self.below == 1 {
            "the conjugate outside the unit circle is negative"
        } else if self.at_ends > 0 {
            "1 or -1 is a root"
        } else {
            "repeated conjugates"
        }
    }
}

/// Enclosure of the largest real root of `p`, assumed to exceed 1, of width
/// at most `2^-bits`.
pub fn lambda_enclosure(p: &IntPoly, bits: i64) -> Interval {
    let chain = SturmChain::new(p).expect("nonzero polynomial");
    let hi = chain.head().root_bound();
    let one = Rational::one();
    let roots = isolate_in(&chain, &Dyadic::one(), &hi, &one).expect("valid isolation range");
    let top = roots.last().expect("a root above 1");
    refine_root(chain.head(), top, bits)
}

/// A Salem number (or, for the footnote experiments, a quadratic one),
/// carried by its minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SalemNumber {
    pub minpoly: IntPoly,
    pub lambda: Interval,
    pub trace_minpoly: IntPoly,
}

impl SalemNumber {
    /// Accepts polynomials judged `Salem` or `QuadraticSalem`.
    pub fn new(p: &IntPoly) -> Result<Self> {
        let v = is_salem(p);
        match v.lambda {
            Some(lambda) => Ok(SalemNumber {
                minpoly: p.clone(),
                lambda,
                trace_minpoly: trace_polynomial(p)?,
            }),
            None => Err(Error::NotSalem(v.reason)),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        SalemNumber::new(&IntPoly::parse(text)?)
    }

    pub fn lehmer() -> Self {
        SalemNumber::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1").expect("Lehmer's polynomial is Salem")
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn is_quadratic(&self) -> bool {
        self.degree() == 2
    }

    /// A fresh enclosure of `lambda` of width at most `2^-bits`.
    pub fn lambda_at(&self, bits: i64) -> Interval {
        if self.lambda.width() <= Dyadic::pow2(-bits) {
            return self.lambda.clone();
        }
        refine_root(&self.minpoly, &self.lambda, bits)
    }

    /// Certified comparison of two Salem numbers by size.
    pub fn cmp_lambda(&self, other: &SalemNumber) -> Ordering {
        if self.minpoly == other.minpoly {
            return Ordering::Equal;
        }
        let mut bits = LAMBDA_BITS;
        loop {
            if let Some(o) = self.lambda_at(bits).compare(&other.lambda_at(bits)) {
                return o;
            }
            // Distinct minimal polynomials have no common root.
            bits *= 2;
        }
    }
}

/// Minimal-polynomial candidate of `lambda^k`: the characteristic
/// polynomial of the `k`-th power of the companion matrix (whose roots are
/// the `k`-th powers of the roots of `p`), made square-free with its
/// cyclotomic factors removed.
pub fn power_polynomial(p: &IntPoly, k: u32) -> IntPoly {
    let n = p.degree();
    let companion = Matrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -p.coeff(i)
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let mut m = Matrix::identity(n, &BigInt::one());
    for _ in 0..k {
        m = m.times(&companion);
    }
    let chi = IntPoly::new(m.charpoly().into_coeffs());
    let (rest, _) = strip_cyclotomic(&chi.squarefree_part());
    if rest.leading().is_negative() {
        rest.neg()
    } else {
        rest
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn lehmer() -> IntPoly {
        IntPoly::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1").unwrap()
    }

    #[test]
    fn reciprocity() {
        assert!(is_reciprocal(&IntPoly::from_descending(&[1, -1, -1, -1, 1])));
        assert!(!is_reciprocal(&IntPoly::from_descending(&[1, 0, 0, -2])));
        assert!(is_reciprocal(&IntPoly::from_descending(&[1, -3, 1])));
    }

    #[test]
    fn trace_polynomial_examples() {
        let p4 = IntPoly::from_descending(&[1, -1, -1, -1, 1]);
        assert_eq!(trace_polynomial(&p4).unwrap(), IntPoly::from_descending(&[1, -1, -3]));
        assert_eq!(
            trace_polynomial(&IntPoly::from_descending(&[1, -3, 1])).unwrap(),
            IntPoly::from_descending(&[1, -3])
        );
        assert_eq!(
            trace_polynomial(&lehmer()).unwrap(),
            IntPoly::from_descending(&[1, 1, -5, -5, 4, 3])
        );
        assert!(trace_polynomial(&IntPoly::from_descending(&[1, 1, 1])).is_ok());
        assert!(trace_polynomial(&IntPoly::from_descending(&[1, 1])).is_err());
        assert!(trace_polynomial(&IntPoly::from_descending(&[1, 2, 3])).is_err());
        for p in [p4, lehmer()] {
            assert_eq!(from_trace_polynomial(&trace_polynomial(&p).unwrap()), p);
        }
    }

    #[test]
    fn verdicts() {
        let v = is_salem(&lehmer());
        assert_eq!(v.tag, SalemTag::Salem);
        let lo = Interval::from_rational(&parse_rational("1.17628081825991750654").unwrap(), 80);
        let hi = Interval::from_rational(&parse_rational("1.17628081825991750655").unwrap(), 80);
        assert!(lo.hull(&hi).encloses(&v.lambda.unwrap()));
        let v = is_salem(&IntPoly::from_descending(&[1, 0, -1, 0, 1]));
        assert_eq!(v.tag, SalemTag::NotSalem);
        assert_eq!(v.reason, "all conjugates on unit circle");
        let v = is_salem(&IntPoly::from_descending(&[1, -3, 1]));
        assert_eq!(v.tag, SalemTag::QuadraticSalem);
        assert!((v.lambda.unwrap().to_f64_mid() - 2.618033988749895).abs() < 1e-14);
        assert_eq!(is_salem(&IntPoly::from_descending(&[1, 0, -1])).tag, SalemTag::NotSalem);
        // Salem root pattern times a cyclotomic factor
        let p = IntPoly::from_descending(&[1, -1, -1, -1, 1]).mul(&cyclotomic(3));
        let v = is_salem(&p);
        assert_eq!(v.tag, SalemTag::NotSalem);
        assert!(v.reason.starts_with("reducible"), "{}", v.reason);
        // Pisot-like: x^4 - 3x^3 + ... with two real roots outside
        let v = is_salem(&IntPoly::from_descending(&[1, -5, 1]).mul(&IntPoly::from_descending(&[1, -4, 1])));
        assert_eq!(v.reason, "more than one conjugate outside the unit circle");
    }

    #[test]
    fn verdict_json_shape() {
        let v = is_salem(&IntPoly::from_descending(&[1, -1, -1, -1, 1]));
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["tag"], "Salem");
        assert_eq!(j["minpoly"], "1,-1,-1,-1,1");
        assert!(j["lambda"].as_str().unwrap().starts_with("[1.72208"));
    }

    #[test]
    fn powers_of_salem_numbers_are_salem() {
        for base in [lehmer(), IntPoly::from_descending(&[1, -1, -1, -1, 1])] {
            let s = SalemNumber::new(&base).unwrap();
            for k in 2..=3 {
                let pk = power_polynomial(&base, k);
                let v = is_salem(&pk);
                assert_eq!(v.tag, SalemTag::Salem, "{pk}");
                let lk = (1..k).fold(s.lambda.clone(), |acc, _| &acc * &s.lambda);
                assert!(v.lambda.unwrap().overlaps(&lk));
            }
        }
    }

    #[test]
    fn salem_number_ordering() {
        let a = SalemNumber::lehmer();
        let b = SalemNumber::parse("1,-1,-1,-1,1").unwrap();
        assert_eq!(a.cmp_lambda(&b), Ordering::Less);
        assert!(SalemNumber::parse("1,0,-1,0,1").is_err());
    }
}
