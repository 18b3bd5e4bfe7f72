//! Bounded enumeration of Salem numbers through their trace polynomials.
//!
//! A Salem number `lambda <= bound` of degree `2s` has a trace polynomial
//! `q` of degree `s` with one root `mu = lambda + 1/lambda` in
//! `(2, bound + 1/bound]` and the others in `(-2, 2)`. All roots of `q` and,
//! by Rolle, of every derivative of `q` then lie in `I = (-2, R]`. The
//! coefficients of `q` are chosen from the top down; after fixing the top
//! `j` of them the derivative `q^(s-j)` is determined, and it must have `j`
//! distinct roots in `I`. For fixed higher coefficients the admissible
//! values of the next one form an interval, bounded through the critical
//! values of the partially determined derivative.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{from_trace_polynomial, is_salem, trace_polynomial, SalemNumber, SalemTag};
use crate::arith::sturm::isolate_in;
use crate::arith::{Dyadic, IntPoly, Rational, Round, SturmChain};
use crate::error::{Error, Result};

/// One independent slice of the search: trace degree `s` and the value of
/// the coefficient of `y^(s-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Shard {
    pub s: usize,
    pub lead: i64,
}

struct Search {
    lo: Rational,
    hi: Rational,
    two: Rational,
}

impl Search {
    fn new(bound: &Rational) -> Self {
        Search {
            lo: Rational::from_integer(BigInt::from(-2)),
            hi: bound + bound.recip(),
            two: Rational::from_integer(BigInt::from(2)),
        }
    }

    /// `q^(s-j)` for the monic partial polynomial with top coefficients
    /// `top = [a_{s-1}, ..., a_{s-j}]`.
    fn derivative_poly(s: usize, top: &[BigInt]) -> IntPoly {
        let j = top.len();
        let mut c = vec![BigInt::zero(); j + 1];
        // y^(s-i) differentiated m times: (s-i)!/(j-i)! y^(j-i)
        for i in 0..=j {
            let a = if i == 0 { BigInt::one() } else { top[i - 1].clone() };
            let f: BigInt = ((j - i + 1)..=(s - i)).map(BigInt::from).product();
            c[j - i] = a * f;
        }
        IntPoly::new(c)
    }

    fn all_roots_in_range(&self, d: &IntPoly) -> bool {
        let chain = SturmChain::new(d).expect("nonzero");
        chain.head().degree() == d.degree() && chain.count(&self.lo, &self.hi) == d.degree()
    }

    /// Integer range guaranteed to contain every admissible value of the
    /// next coefficient `a_{s-j}` (elementary symmetric bound).
    fn coefficient_box(&self, s: usize, j: usize) -> (i64, i64) {
        let r = self.hi.abs().max(self.two.clone());
        let binom: BigInt = ((s - j + 1)..=s).map(BigInt::from).product::<BigInt>()
            / (1..=j).map(BigInt::from).product::<BigInt>();
        let b = (Rational::from_integer(binom) * pow(&r, j)).ceil().to_integer();
        let b = b.to_i64().expect("coefficient box fits in i64");
        (-b, b)
    }

    /// Range of `a_{s-j}` compatible with `q^(s-j)` having all roots in
    /// `I`, widened slightly by the enclosure of its critical values.
    ///
    /// `q^(s-j) = D0 + k a` with `k = (s-j)!`. Real-rootedness forces
    /// `D0(r) + k a <= 0` at local minima `r` and `>= 0` at local maxima;
    /// roots inside `I` force `D(R) >= 0` and `(-1)^j D(-2) > 0`.
    fn coefficient_range(&self, s: usize, top: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let j = top.len() + 1;
        let (blo, bhi) = self.coefficient_box(s, j);
        let mut lo = Rational::from_integer(BigInt::from(blo));
        let mut hi = Rational::from_integer(BigInt::from(bhi));
        let k = Rational::from_integer((1..=(s - j)).map(BigInt::from).product());
        let mut t = top.to_vec();
        t.push(BigInt::zero());
        let d0 = Self::derivative_poly(s, &t);
        lo = lo.max(-d0.eval_rational(&self.hi) / &k);
        let at_m2 = -d0.eval_rational(&self.lo) / &k;
        if j % 2 == 1 {
            hi = hi.min(at_m2);
        } else {
            lo = lo.max(at_m2);
        }
        if j >= 2 {
            let dd = d0.derivative();
            let chain = SturmChain::new(&dd).expect("nonzero");
            let lo_d = Dyadic::from_int(-2);
            let hi_d = Dyadic::from_rational(&self.hi, 64, Round::Up);
            let crit = isolate_in(&chain, &lo_d, &hi_d, &Rational::new(BigInt::one(), BigInt::from(1u64 << 30))).ok()?;
            if crit.len() != j - 1 {
                return None;
            }
            // The last critical point is a local minimum; they alternate.
            for (i, r) in crit.iter().rev().enumerate() {
                let v = d0.eval_interval(r, 128);
                if i % 2 == 0 {
                    hi = hi.min(-v.lo().to_rational() / &k);
                } else {
                    lo = lo.max(-v.hi().to_rational() / &k);
                }
            }
        }
        let lo = lo.ceil().to_integer();
        let hi = hi.floor().to_integer();
        (lo <= hi).then_some((lo, hi))
    }

    /// Extends `top` by one coefficient in every admissible way.
    fn children(&self, s: usize, top: &[BigInt]) -> Vec<Vec<BigInt>> {
        let Some((lo, hi)) = self.coefficient_range(s, top) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut a = lo;
        while a <= hi {
            let mut t = top.to_vec();
            t.push(a.clone());
            if self.all_roots_in_range(&Self::derivative_poly(s, &t)) {
                out.push(t);
            }
            a += 1;
        }
        out
    }

    fn search(&self, s: usize, top: Vec<BigInt>, out: &mut Vec<SalemNumber>) {
        if top.len() == s {
            let mut c: Vec<BigInt> = top.into_iter().rev().collect();
            c.push(BigInt::one());
            let q = IntPoly::new(c);
            if self.salem_pattern(&q) {
                let p = from_trace_polynomial(&q);
                let v = is_salem(&p);
                if v.tag == SalemTag::Salem {
                    out.push(SalemNumber {
                        minpoly: p,
                        lambda: v.lambda.expect("Salem verdict carries lambda"),
                        trace_minpoly: q,
                    });
                }
            }
            return;
        }
        for child in self.children(s, &top) {
            self.search(s, child, out);
        }
    }

    /// One root in `(2, R]`, the rest in `(-2, 2)`.
    fn salem_pattern(&self, q: &IntPoly) -> bool {
        let chain = SturmChain::new(q).expect("nonzero");
        let s = q.degree();
        let at2 = q.sign_at_rational(&self.two) == std::cmp::Ordering::Equal;
        chain.count(&self.two, &self.hi) == 1 && !at2 && chain.count(&self.lo, &self.two) == s - 1
    }
}

fn pow(r: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

fn check_args(max_degree: usize, bound: &Rational) -> Result<()> {
    if max_degree < 4 {
        return Err(Error::InvalidArgument(format!(
            "max_degree must be at least 4, got {max_degree}"
        )));
    }
    if *bound <= Rational::one() {
        return Err(Error::InvalidArgument("bound must exceed 1".into()));
    }
    Ok(())
}

/// The deterministic partition of the search for `(max_degree, bound)`.
pub fn enumeration_shards(max_degree: usize, bound: &Rational) -> Result<Vec<Shard>> {
    check_args(max_degree, bound)?;
    let search = Search::new(bound);
    let mut shards = Vec::new();
    for s in 2..=max_degree / 2 {
        for top in search.children(s, &[]) {
            shards.push(Shard { s, lead: top[0].to_i64().expect("small coefficient") });
        }
    }
    Ok(shards)
}

/// Salem numbers of one shard, unsorted.
pub fn enumerate_shard(shard: Shard, bound: &Rational) -> Vec<SalemNumber> {
    let search = Search::new(bound);
    let mut out = Vec::new();
    search.search(shard.s, vec![BigInt::from(shard.lead)], &mut out);
    out
}

/// Every Salem number of degree at most `max_degree` with `lambda <= bound`,
/// each once, sorted by size.
pub fn enumerate_salem(max_degree: usize, bound: &Rational) -> Result<Vec<SalemNumber>> {
    let shards = enumeration_shards(max_degree, bound)?;
    let mut all: Vec<SalemNumber> = shards
        .par_iter()
        .flat_map_iter(|&sh| enumerate_shard(sh, bound))
        .collect();
    all.sort_by(|a, b| a.cmp_lambda(b));
    debug_assert!(all.iter().all(|x| trace_polynomial(&x.minpoly).ok().as_ref() == Some(&x.trace_minpoly)));
    Ok(all)
}
