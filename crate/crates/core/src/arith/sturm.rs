//! Sturm sequences, real-root counting and certified root isolation.

use std::cmp::Ordering;

use num_traits::Signed;

use super::dyadic::Dyadic;
use super::interval::Interval;
use super::poly::IntPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Sturm chain of the square-free part of a polynomial.
///
/// Each member is stored primitive; scaling by positive constants keeps the
/// sign pattern, and negative pseudo-remainder multipliers are compensated.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.squarefree_part();
        let mut chain = vec![p0.clone()];
        if p0.degree() == 0 {
            return Ok(SturmChain { chain });
        }
        chain.push(p0.derivative().primitive_part());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree() == 0 {
                break;
            }
            let r = neg_remainder(a, b);
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        Ok(SturmChain { chain })
    }

    /// The square-free polynomial heading the chain.
    pub fn head(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations(&self, sign_of: impl Fn(&IntPoly) -> Ordering) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for q in &self.chain {
            let s = sign_of(q);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at_rational(&self, x: &Rational) -> usize {
        self.variations(|q| q.sign_at_rational(x))
    }

    fn variations_at_dyadic(&self, x: &Dyadic) -> usize {
        self.variations(|q| q.sign_at_dyadic(x))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        self.variations(|q| {
            let lc = q.leading();
            let s = if lc.is_negative() { Ordering::Less } else { Ordering::Greater };
            if !positive && q.degree() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        })
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at_rational(a) - self.variations_at_rational(b)
    }

    /// Distinct real roots in `(a, b]` for dyadic endpoints.
    pub fn count_dyadic(&self, a: &Dyadic, b: &Dyadic) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at_dyadic(a) - self.variations_at_dyadic(b)
    }

    /// All distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &Rational) -> usize {
        self.variations_at_rational(a) - self.variations_at_infinity(true)
    }
}

/// `-rem(a, b)` up to a positive constant, made primitive.
fn neg_remainder(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let r = a.to_rational_poly().divrem(&b.to_rational_poly()).1;
    if r.is_zero() {
        return IntPoly::zero();
    }
    // from_rational_poly normalizes to a positive leading coefficient, so
    // recover the true sign of -r from its leading coefficient.
    let prim = IntPoly::from_rational_poly(&r);
    if r.leading().unwrap().is_positive() {
        prim.neg()
    } else {
        prim
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &IntPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if a >= b {
        return Err(Error::InvalidArgument("sturm_count requires a < b".into()));
    }
    Ok(SturmChain::new(p)?.count(a, b))
}

/// Pairwise-disjoint intervals of width at most `width`, each containing
/// exactly one distinct real root of `p`, covering all real roots, in
/// increasing order. A root that happens to be hit exactly is returned as a
/// point interval.
pub fn isolate_real_roots(p: &IntPoly, width: &Rational) -> Result<Vec<Interval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(Error::InvalidArgument("isolation width must be positive".into()));
    }
    let chain = SturmChain::new(p)?;
    let b = chain.head().root_bound();
    let lo = -&b;
    isolate_in(&chain, &lo, &b, width)
}

/// Isolating intervals for the roots of `chain.head()` inside `(lo, hi]`.
pub(crate) fn isolate_in(
    chain: &SturmChain,
    lo: &Dyadic,
    hi: &Dyadic,
    width: &Rational,
) -> Result<Vec<Interval>> {
    let sq = chain.head();
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let c = chain.count_dyadic(&a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 && &b.to_rational() - &a.to_rational() <= *width {
            out.push(Interval::new(a, b));
            continue;
        }
        let m = Dyadic::midpoint(&a, &b);
        if sq.sign_at_dyadic(&m) == Ordering::Equal {
            out.push(Interval::point(m.clone()));
            // Nudge both sides away from the exact root so that closed
            // neighbouring intervals stay disjoint from it.
            let mut dl = (&m - &a).mul_pow2(-1);
            while chain.count_dyadic(&(&m - &dl), &m) != 1 {
                dl = dl.mul_pow2(-1);
            }
            let mut dr = (&b - &m).mul_pow2(-1);
            while chain.count_dyadic(&m, &(&m + &dr)) != 0 {
                dr = dr.mul_pow2(-1);
            }
            stack.push((&m + &dr, b));
            stack.push((a, &m - &dl));
        } else {
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    Ok(out)
}

/// Shrinks an isolating interval of a simple root of the square-free `p`
/// by bisection until its width is at most `2^-bits`.
pub fn refine_root(p: &IntPoly, iv: &Interval, bits: i64) -> Interval {
    let target = Dyadic::pow2(-bits);
    let mut a = iv.lo().clone();
    let mut b = iv.hi().clone();
    if a == b {
        return iv.clone();
    }
    let sb = p.sign_at_dyadic(&b);
    if sb == Ordering::Equal {
        return Interval::point(b);
    }
    let sa = p.sign_at_dyadic(&a);
    if sa == Ordering::Equal {
        return Interval::point(a);
    }
    debug_assert_ne!(sa, sb, "refine_root needs a sign change");
    while &b - &a > target {
        let m = Dyadic::midpoint(&a, &b);
        let sm = p.sign_at_dyadic(&m);
        if sm == Ordering::Equal {
            return Interval::point(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Interval::new(a, b)
}
