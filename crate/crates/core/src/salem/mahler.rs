//! Certified Mahler measure through complex root inclusion disks.
//!
//! Roots are approximated by Aberth iteration (first in `f64`, then in
//! dyadic arithmetic at doubling precision). Each approximation `z` is
//! certified by the Newton inclusion disk of radius `n |f(z)/f'(z)|`, which
//! always contains a root; once the `n` disks are pairwise disjoint each
//! holds exactly one root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{Dyadic, IntPoly, Interval, Rational, Round};
use crate::error::{Error, Result};

use super::cyclotomic::strip_cyclotomic;

/// Certified enclosure of a Mahler measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MahlerEnclosure {
    pub value: Interval,
}

const MAX_BITS: u32 = 1 << 13;

/// Enclosure of `prod max(1, |root|)` (times the leading coefficient) over
/// all complex roots of `p`, of relative width about `2^-prec`.
pub fn mahler_measure(p: &IntPoly, prec: u32) -> Result<MahlerEnclosure> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // M(x^k f) = M(f).
    let shift = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let p = IntPoly::new(p.coeffs()[shift..].to_vec());
    let content = p.content();
    let mut value = Interval::point(Dyadic::from_bigint(content));
    for (factor, mult) in p.squarefree_decomposition() {
        let (rest, _) = strip_cyclotomic(&factor);
        let m = squarefree_measure(&rest, prec + 8)?;
        for _ in 0..mult {
            value = (&value * &m).round_out(prec + 16);
        }
    }
    Ok(MahlerEnclosure { value })
}

fn squarefree_measure(r: &IntPoly, prec: u32) -> Result<Interval> {
    match r.degree() {
        0 => Ok(Interval::point(Dyadic::from_bigint(r.coeffs()[0].abs()))),
        1 => {
            let m = std::cmp::max(r.coeffs()[0].abs(), r.coeffs()[1].abs());
            Ok(Interval::point(Dyadic::from_bigint(m)))
        }
        _ => {
            let moduli = certified_root_moduli(r, prec)?;
            let one = Dyadic::one();
            let mut v = Interval::point(Dyadic::from_bigint(r.leading().abs()));
            for m in &moduli {
                v = (&v * &m.max_with(&one)).round_out(prec + 16);
            }
            Ok(v)
        }
    }
}

/// Enclosures of `|root|` for every root of the square-free `r`, each of
/// width at most about `2^-prec` times the root bound.
pub fn certified_root_moduli(r: &IntPoly, prec: u32) -> Result<Vec<Interval>> {
    let n = r.degree();
    let mut z: Vec<CDyadic> = aberth_f64(r)
        .into_iter()
        .map(|c| CDyadic::from_f64(c.re, c.im))
        .collect();
    let dr = r.derivative();
    let mut w = 64u32.max(prec + 32);
    let mut iters = 200;
    loop {
        aberth_dyadic(r, &dr, &mut z, w, iters);
        if let Some(disks) = certify(r, &dr, &z, w) {
            let target = Dyadic::pow2(-(prec as i64));
            if disks.iter().all(|d| d.radius <= target) {
                return Ok(disks.into_iter().map(|d| d.modulus(w)).collect());
            }
        }
        w *= 2;
        iters = 20 + n;
        if w > MAX_BITS {
            return Err(Error::Precision(format!("root certification for {r}")));
        }
    }
}

fn aberth_f64(r: &IntPoly) -> Vec<Complex64> {
    let c = r.to_f64_coeffs();
    let n = r.degree();
    let lc = c[n];
    let a: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let radius = 1.0 + a[..n].iter().fold(0.0f64, |m, x| m.max(x.abs())).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    if !radius.is_finite() {
        return z;
    }
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for k in 0..n {
            let (f, df) = horner_f64(&a, z[k]);
            if f == Complex64::zero() {
                continue;
            }
            let ratio = f / df;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::one() / (z[k] - z[j]))
                .sum();
            let corr = ratio / (Complex64::one() - ratio * s);
            if corr.is_finite() {
                z[k] -= corr;
                worst = worst.max(corr.norm() / (1.0 + z[k].norm()));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn horner_f64(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::zero();
    let mut df = Complex64::zero();
    for c in a.iter().rev() {
        df = df * z + f;
        f = f * z + c;
    }
    (f, df)
}

/// Complex number with dyadic parts.
#[derive(Clone, Debug, PartialEq)]
struct CDyadic {
    re: Dyadic,
    im: Dyadic,
}

impl CDyadic {
    fn zero() -> Self {
        CDyadic { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    fn from_f64(re: f64, im: f64) -> Self {
        let conv = |x: f64| {
            if x.is_finite() {
                Dyadic::from_rational(&Rational::from_float(x).unwrap_or_else(Rational::zero), 64, Round::Down)
            } else {
                Dyadic::zero()
            }
        };
        CDyadic { re: conv(re), im: conv(im) }
    }

    fn add(&self, o: &Self) -> Self {
        CDyadic { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Self) -> Self {
        CDyadic { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Self) -> Self {
        CDyadic {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    fn norm_sq(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn round(&self, w: u32) -> Self {
        CDyadic { re: self.re.round(w, Round::Down), im: self.im.round(w, Round::Down) }
    }

    /// Approximate quotient, `None` when the divisor vanishes.
    fn div(&self, o: &Self, w: u32) -> Option<Self> {
        let d = o.norm_sq();
        if d.is_zero() {
            return None;
        }
        let num = CDyadic { re: o.re.clone(), im: -&o.im };
        let n = self.mul(&num);
        Some(CDyadic { re: n.re.div(&d, w, Round::Down), im: n.im.div(&d, w, Round::Down) })
    }

    /// `floor(log2)` of the larger component magnitude.
    fn log2_size(&self) -> Option<i64> {
        match (self.re.log2_floor(), self.im.log2_floor()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

fn eval_c(p: &IntPoly, z: &CDyadic) -> CDyadic {
    let mut acc = CDyadic::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re = &acc.re + &Dyadic::from_bigint(c.clone());
    }
    acc
}

fn aberth_dyadic(p: &IntPoly, dp: &IntPoly, z: &mut [CDyadic], w: u32, max_iter: usize) {
    let n = z.len();
    let one = CDyadic { re: Dyadic::one(), im: Dyadic::zero() };
    for zk in z.iter_mut() {
        *zk = zk.round(w);
    }
    for _ in 0..max_iter {
        let mut converged = true;
        for k in 0..n {
            let f = eval_c(p, &z[k]).round(w);
            if f.is_zero() {
                continue;
            }
            let df = eval_c(dp, &z[k]).round(w);
            let Some(ratio) = f.div(&df, w) else { continue };
            let mut s = CDyadic::zero();
            for j in 0..n {
                if j != k {
                    if let Some(t) = one.div(&z[k].sub(&z[j]), w) {
                        s = s.add(&t);
                    }
                }
            }
            let denom = one.sub(&ratio.mul(&s)).round(w);
            let Some(corr) = ratio.div(&denom, w) else { continue };
            z[k] = z[k].sub(&corr).round(w);
            let scale = z[k].log2_size().unwrap_or(0).max(0);
            if corr.log2_size().is_some_and(|e| e > scale - w as i64 + 8) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
}

struct Disk {
    center: CDyadic,
    radius: Dyadic,
}

impl Disk {
    fn modulus(&self, w: u32) -> Interval {
        let n2 = self.center.norm_sq();
        let lo = &n2.sqrt(w, Round::Down) - &self.radius;
        let hi = &n2.sqrt(w, Round::Up) + &self.radius;
        let lo = std::cmp::max(lo, Dyadic::zero());
        Interval::new(lo, hi)
    }
}

/// Newton inclusion disks around `z`, or `None` when they are not
/// pairwise disjoint.
fn certify(p: &IntPoly, dp: &IntPoly, z: &[CDyadic], w: u32) -> Option<Vec<Disk>> {
    let n = z.len();
    let nn = Rational::from_integer(BigInt::from(n * n));
    let mut disks = Vec::with_capacity(n);
    for zk in z {
        let f = eval_c(p, zk);
        let radius = if f.is_zero() {
            Dyadic::zero()
        } else {
            let df = eval_c(dp, zk);
            if df.is_zero() {
                return None;
            }
            let r2 = &nn * f.norm_sq().to_rational() / df.norm_sq().to_rational();
            Dyadic::from_rational(&r2, w, Round::Up).sqrt(w, Round::Up)
        };
        disks.push(Disk { center: zk.clone(), radius });
    }
    for i in 0..n {
        for j in i + 1..n {
            let d2 = disks[i].center.sub(&disks[j].center).norm_sq();
            let rs = &disks[i].radius + &disks[j].radius;
            if d2.cmp(&(&rs * &rs)) != Ordering::Greater {
                return None;
            }
        }
    }
    Some(disks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salem::cyclotomic::cyclotomic;

    #[test]
    fn linear_and_cyclotomic() {
        let m = mahler_measure(&IntPoly::from_descending(&[1, -2]), 40).unwrap();
        assert_eq!(m.value, Interval::from_int(2));
        for k in [1, 5, 12, 30] {
            assert_eq!(mahler_measure(&cyclotomic(k), 40).unwrap().value, Interval::one());
        }
    }

    #[test]
    fn lehmer_measure_is_lambda() {
        let lehmer = IntPoly::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1").unwrap();
        let m = mahler_measure(&lehmer, 60).unwrap().value;
        let near = |d: &str| Interval::from_rational(&crate::arith::parse_rational(d).unwrap(), 80);
        assert!(m.overlaps(&near("1.17628081825991750654").hull(&near("1.17628081825991750655"))));
        assert!(m.width() < Dyadic::pow2(-50));
    }

    #[test]
    fn repeated_and_non_monic_factors() {
        // 2 (x - 3)^2 (x^2 + x + 1): measure 2 * 9
        let p = IntPoly::from_descending(&[1, -3])
            .pow(2)
            .mul(&cyclotomic(3))
            .scale(&BigInt::from(2));
        assert_eq!(mahler_measure(&p, 30).unwrap().value, Interval::from_int(18));
        // 3x^2 - 1: roots +-1/sqrt3 inside the disk, measure 3
        let q = IntPoly::from_descending(&[3, 0, -1]);
        assert!(mahler_measure(&q, 30).unwrap().value.contains(&Dyadic::from_int(3)));
    }

    #[test]
    fn complex_roots_outside_disk() {
        // x^2 + 2: two roots of modulus sqrt2, measure 2
        let p = IntPoly::from_descending(&[1, 0, 2]);
        let m = mahler_measure(&p, 50).unwrap().value;
        assert!(m.contains(&Dyadic::from_int(2)));
        assert!(m.width() < Dyadic::pow2(-45));
    }
}
