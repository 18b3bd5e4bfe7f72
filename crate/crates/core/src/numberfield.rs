//! Totally real number fields `Q(mu)` in the power basis of a generator.
//!
//! Elements are rational coefficient vectors reduced modulo the monic
//! minimal polynomial of the generator. Real embeddings are carried as
//! disjoint isolating intervals of its roots, sorted by value, with the
//! identity embedding flagged by index.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::arith::{
    isolate_real_roots, rational_text, refine_root, Dyadic, Field, IntPoly, Interval, Matrix,
    Poly, Rational, Ring,
};
use crate::error::{Error, Result};
use crate::salem::SalemNumber;

/// Root enclosure width kept on every field.
const ROOT_BITS: i64 = 160;

#[derive(Debug)]
struct FieldCore {
    minpoly: IntPoly,
    degree: usize,
    /// Reductions of `mu^d, ..., mu^(2d-2)` in the power basis.
    powers: Vec<Vec<Rational>>,
}

impl FieldCore {
    fn new(minpoly: IntPoly) -> Self {
        let d = minpoly.degree();
        let mut powers: Vec<Vec<Rational>> = Vec::new();
        if d > 0 {
            // mu^d = -(c_0 + ... + c_{d-1} mu^{d-1})
            let mut cur: Vec<Rational> = minpoly.coeffs()[..d]
                .iter()
                .map(|c| Rational::from_integer(-c))
                .collect();
            for _ in 0..d.saturating_sub(1) {
                powers.push(cur.clone());
                // multiply by mu
                let top = cur[d - 1].clone();
                let mut next = vec![Rational::zero(); d];
                next[1..d].clone_from_slice(&cur[..(d - 1)]);
                for (n, p) in next.iter_mut().zip(&powers[0]) {
                    *n += &top * p;
                }
                cur = next;
            }
        }
        FieldCore { minpoly, degree: d, powers }
    }
}

/// A totally real field with ordered, certified real embeddings.
#[derive(Clone, Debug)]
pub struct NumberField {
    core: Arc<FieldCore>,
    roots: Vec<Interval>,
    identity: usize,
}

/// Index of a real embedding in [`NumberField::embeddings`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Embedding(pub usize);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.core.minpoly == other.core.minpoly && self.identity == other.identity
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// The field generated by a root of the monic irreducible `minpoly`,
    /// which must have only real roots; `identity` indexes the roots in
    /// increasing order.
    pub fn totally_real(minpoly: &IntPoly, identity: usize) -> Result<Self> {
        if minpoly.degree() == 0 || !minpoly.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "generator polynomial {minpoly} must be monic of positive degree"
            )));
        }
        let roots = isolated_roots(minpoly)?;
        if identity >= roots.len() {
            return Err(Error::InvalidArgument(format!("no embedding with index {identity}")));
        }
        if let Some(f) = real_factor(minpoly, &roots) {
            return Err(Error::Reducible(format!("{minpoly} has the factor {f}")));
        }
        Ok(NumberField { core: Arc::new(FieldCore::new(minpoly.clone())), roots, identity })
    }

    /// `Q(sqrt 2)` with the identity embedding `sqrt 2 -> +1.4142...`.
    pub fn sqrt2() -> Self {
        NumberField::totally_real(&IntPoly::from_descending(&[1, 0, -2]), 1)
            .expect("y^2 - 2 is irreducible and totally real")
    }

    /// `Q` presented as `Q(c)` for the integer `c`.
    pub fn rationals_at(c: i64) -> Self {
        NumberField::totally_real(&IntPoly::from_descending(&[1, -c]), 0).expect("linear polynomial")
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.core.minpoly
    }

    pub fn degree(&self) -> usize {
        self.core.degree
    }

    pub fn embeddings(&self) -> impl Iterator<Item = Embedding> {
        (0..self.roots.len()).map(Embedding)
    }

    pub fn identity(&self) -> Embedding {
        Embedding(self.identity)
    }

    pub fn non_identity(&self) -> impl Iterator<Item = Embedding> + '_ {
        self.embeddings().filter(move |e| e.0 != self.identity)
    }

    /// Enclosure of the generator's image under `sigma`.
    pub fn root(&self, sigma: Embedding) -> &Interval {
        &self.roots[sigma.0]
    }

    pub fn same_field(&self, a: &FieldElement) -> bool {
        Arc::ptr_eq(&self.core, &a.core) || self.core.minpoly == a.core.minpoly
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> FieldElement {
        FieldElement::reduce(&self.core, coeffs)
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        self.element(vec![r])
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ints(&self, c: &[i64]) -> FieldElement {
        self.element(c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The generator `mu`.
    pub fn generator(&self) -> FieldElement {
        self.element(vec![Rational::zero(), Rational::one()])
    }

    /// Enclosure of `sigma(a)` of width at most `2^(1-prec)`.
    pub fn embed(&self, a: &FieldElement, sigma: Embedding, prec: u32) -> Interval {
        debug_assert!(self.same_field(a));
        let (num, den) = a.integer_numerator();
        if num.degree() == 0 || num.is_zero() {
            let r = Rational::new(num.coeff(0), den);
            return Interval::from_rational(&r, prec + 2);
        }
        let target = Dyadic::pow2(1 - prec as i64);
        let dd = Interval::point(Dyadic::from_bigint(den.clone()));
        let mut root = self.roots[sigma.0].clone();
        let mut work = prec + 32;
        loop {
            let v = num.eval_interval(&root, work + 32);
            let r = v.div(&dd, work).expect("positive denominator");
            if r.width() <= target {
                return r;
            }
            work *= 2;
            root = refine_root(&self.core.minpoly, &root, work as i64);
        }
    }

    /// Exact sign of `sigma(a)`.
    pub fn sign_at(&self, a: &FieldElement, sigma: Embedding) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        let mut prec = 32;
        loop {
            if let Some(s) = self.embed(a, sigma, prec).sign() {
                if s != Ordering::Equal {
                    return s;
                }
            }
            prec *= 2;
        }
    }

    /// Exact comparison `sigma(a)` versus `sigma(b)`.
    pub fn compare_at(&self, a: &FieldElement, b: &FieldElement, sigma: Embedding) -> Ordering {
        self.sign_at(&(a - b), sigma)
    }

    pub fn is_totally_positive(&self, a: &FieldElement) -> bool {
        self.embeddings().all(|s| self.sign_at(a, s) == Ordering::Greater)
    }
}

/// Isolating intervals of all roots, which must all be real and simple.
fn isolated_roots(p: &IntPoly) -> Result<Vec<Interval>> {
    if !p.is_squarefree() {
        return Err(Error::Reducible(format!("{p} has repeated roots")));
    }
    let width = Rational::new(BigInt::one(), BigInt::one() << 8);
    let roots = isolate_real_roots(p, &width)?;
    if roots.len() != p.degree() {
        return Err(Error::Domain(format!("{p} is not totally real")));
    }
    Ok(roots.iter().map(|r| refine_root(p, r, ROOT_BITS)).collect())
}

/// A nontrivial monic integer factor of a totally real `p`, if any.
///
/// Any factor of degree `k <= deg/2` is the product of `y - r` over some
/// `k` roots, so its coefficients are enclosed by interval products over
/// subsets of root enclosures; an integer candidate is confirmed by exact
/// division.
fn real_factor(p: &IntPoly, roots: &[Interval]) -> Option<IntPoly> {
    let d = p.degree();
    let mut roots = roots.to_vec();
    for k in 1..=d / 2 {
        for subset in subsets(d, k) {
            let mut bits = ROOT_BITS;
            loop {
                let coeffs = subset_product(&subset.iter().map(|&i| roots[i].clone()).collect::<Vec<_>>());
                match integer_candidate(&coeffs) {
                    Candidate::None => break,
                    Candidate::Unique(c) => {
                        let f = IntPoly::new(c);
                        if p.div_exact(&f).is_some() {
                            return Some(f);
                        }
                        break;
                    }
                    Candidate::Wide => {
                        bits *= 2;
                        roots = roots.iter().map(|r| refine_root(p, r, bits)).collect();
                    }
                }
            }
        }
    }
    None
}

enum Candidate {
    None,
    Unique(Vec<BigInt>),
    Wide,
}

fn integer_candidate(coeffs: &[Interval]) -> Candidate {
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let lo = c.lo().to_rational().ceil().to_integer();
        let hi = c.hi().to_rational().floor().to_integer();
        match lo.cmp(&hi) {
            Ordering::Greater => return Candidate::None,
            Ordering::Equal => out.push(lo),
            Ordering::Less => return Candidate::Wide,
        }
    }
    Candidate::Unique(out)
}

/// Ascending coefficient enclosures of `prod (y - r)`.
fn subset_product(roots: &[Interval]) -> Vec<Interval> {
    let mut c = vec![Interval::one()];
    for r in roots {
        let mut next = vec![Interval::zero(); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = &next[i + 1] + ci;
            next[i] = &next[i] - &(ci * r);
        }
        c = next.into_iter().map(|x| x.round_out(256)).collect();
    }
    c
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `Q(mu)` for `mu = lambda + 1/lambda`, with the root above 2 as the
/// identity embedding, together with `mu`. A quadratic Salem number gives
/// the degenerate field `Q` with `mu` rational.
pub fn field_from_salem(s: &SalemNumber) -> Result<(NumberField, FieldElement)> {
    let q = &s.trace_minpoly;
    let roots = isolated_roots(q)?;
    let two = Dyadic::from_int(2);
    let identity = roots
        .iter()
        .position(|r| r.lo() > &two)
        .ok_or_else(|| Error::NotSalem("no trace root above 2".into()))?;
    let field = NumberField::totally_real(q, identity)?;
    let mu = field.generator();
    Ok((field, mu))
}

/// An element of a [`NumberField`] in the power basis.
#[derive(Clone)]
pub struct FieldElement {
    core: Arc<FieldCore>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    fn reduce(core: &Arc<FieldCore>, mut c: Vec<Rational>) -> Self {
        let d = core.degree;
        if c.len() > d {
            for i in (d..c.len()).rev() {
                let top = std::mem::replace(&mut c[i], Rational::zero());
                if top.is_zero() {
                    continue;
                }
                // mu^i = mu^(i-d) * mu^d
                let shift = i - d;
                for (j, pj) in core.powers.first().into_iter().flatten().enumerate() {
                    c[shift + j] += &top * pj;
                }
                if core.powers.is_empty() {
                    // degree 1: mu = -c_0
                    let mu = Rational::from_integer(-core.minpoly.coeff(0));
                    c[shift] += top * mu;
                }
            }
            c.truncate(d);
        }
        c.resize(d, Rational::zero());
        FieldElement { core: core.clone(), coeffs: c }
    }

    /// Power-basis coefficients `c_0, ..., c_{d-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.core.minpoly
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one()) && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }

    /// In the order `Z[mu]`: all power-basis coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `(N, D)` with `self = N(mu) / D`, `N` integral and `D > 0`.
    pub fn integer_numerator(&self) -> (IntPoly, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (IntPoly::new(num), den)
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.core, &other.core) || self.core.minpoly == other.core.minpoly,
            "elements of different fields"
        );
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field_as(other)?;
        Ok(self + other)
    }

    pub fn same_field_as(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.core, &other.core) || self.core.minpoly == other.core.minpoly {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Exact quotient; division by zero is an error.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field_as(other)?;
        let inv = other.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.core.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.core.powers[k]) {
                *o += c * p;
            }
        }
        FieldElement { core: self.core.clone(), coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement { core: self.core.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn as_poly(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.clone())
    }

    /// Matrix of multiplication by `self` on the power basis (columns are
    /// the images of `1, mu, ..., mu^{d-1}`).
    pub fn mult_matrix(&self) -> Matrix<Rational> {
        let d = self.core.degree;
        let mut cols = Vec::with_capacity(d);
        let mut basis = FieldElement::reduce(&self.core, vec![Rational::one()]);
        let mu = FieldElement::reduce(&self.core, vec![Rational::zero(), Rational::one()]);
        for _ in 0..d {
            cols.push((self * &basis).coeffs);
            basis = &basis * &mu;
        }
        Matrix::from_fn(d, d, |i, j| cols[j][i].clone())
    }

    /// Exact field trace to `Q`.
    pub fn trace(&self) -> Rational {
        self.mult_matrix().trace()
    }

    /// Exact field norm to `Q`.
    pub fn norm(&self) -> Rational {
        self.mult_matrix().det()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.core, &other.core) || self.core.minpoly == other.core.minpoly)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
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
            let t = rational_text(&a);
            match i {
                0 => f.write_str(&t)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{t}*")?;
                    }
                    if i == 1 {
                        f.write_str("mu")?;
                    } else {
                        write!(f, "mu^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rational_text(c))?;
        }
        seq.end()
    }
}

impl Serialize for NumberField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NumberField", 3)?;
        st.serialize_field("minpoly", &self.core.minpoly)?;
        st.serialize_field("embeddings", &self.roots)?;
        st.serialize_field("identity_index", &self.identity)?;
        st.end()
    }
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement { core: self.core.clone(), coeffs: vec![Rational::zero(); self.core.degree] }
    }

    fn one_like(&self) -> Self {
        FieldElement::reduce(&self.core, vec![Rational::one()])
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn from_int_like(&self, v: i64) -> Self {
        FieldElement::reduce(&self.core, vec![Rational::from_integer(BigInt::from(v))])
    }
}

impl Field for FieldElement {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.core.minpoly.to_rational_poly();
        let (g, s, _) = self.as_poly().ext_gcd(&m);
        // g is a nonzero constant since the minimal polynomial is irreducible.
        let g0 = g.coeffs()[0].clone();
        debug_assert_eq!(g.degree(), Some(0));
        let c: Vec<Rational> = s.coeffs().iter().map(|c| c / &g0).collect();
        Some(FieldElement::reduce(&self.core, c))
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            core: self.core.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            core: self.core.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.mul_impl(rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { core: self.core.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn salem4_field() -> (NumberField, FieldElement) {
        field_from_salem(&SalemNumber::parse("1,-1,-1,-1,1").unwrap()).unwrap()
    }

    fn near(iv: &Interval, v: f64) -> bool {
        (iv.to_f64_mid() - v).abs() < 1e-6
    }

    #[test]
    fn arithmetic_examples() {
        let k = NumberField::sqrt2();
        let r2 = k.generator();
        assert_eq!(&r2 * &r2, k.from_int(2));
        let (f, mu) = salem4_field();
        assert_eq!(&mu * &mu, &mu + &f.from_int(3));
        let inv = f.one().checked_div(&mu).unwrap();
        let third = parse_rational("1/3").unwrap();
        assert_eq!(inv, (&mu - &f.one()).scale(&third));
        assert_eq!(f.one().checked_div(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn embeddings_of_salem_fields() {
        let (f, mu) = salem4_field();
        assert_eq!(f.degree(), 2);
        assert!(near(&f.embed(&mu, f.identity(), 40), 2.302776));
        let other = f.non_identity().next().unwrap();
        assert!(near(&f.embed(&mu, other, 40), -1.302776));
        let (f, mu) = field_from_salem(&SalemNumber::lehmer()).unwrap();
        assert_eq!(f.embeddings().count(), 5);
        assert!(near(&f.embed(&mu, f.identity(), 40), 2.026418));
        let two = f.from_int(2);
        for s in f.non_identity() {
            assert_eq!(f.sign_at(&(&mu - &two), s), Ordering::Less);
            assert_eq!(f.sign_at(&(&mu + &two), s), Ordering::Greater);
        }
        assert_eq!(f.sign_at(&(&mu - &two), f.identity()), Ordering::Greater);
        assert_eq!(f.sign_at(&f.zero(), f.identity()), Ordering::Equal);
    }

    #[test]
    fn quadratic_salem_collapses_to_q() {
        let (f, mu) = field_from_salem(&SalemNumber::parse("1,-3,1").unwrap()).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(mu.as_rational(), Some(parse_rational("3").unwrap()));
        assert_eq!(&mu * &mu, f.from_int(9));
    }

    #[test]
    fn embed_width_and_conjugate() {
        let k = NumberField::sqrt2();
        let conj = k.non_identity().next().unwrap();
        let e = k.embed(&k.generator(), conj, 100);
        assert!(near(&e, -std::f64::consts::SQRT_2));
        assert!(e.width() <= Dyadic::pow2(-99));
        assert_eq!(k.embed(&k.one(), conj, 10), Interval::one());
    }

    #[test]
    fn integrality() {
        let (f, mu) = salem4_field();
        assert!(mu.is_integral());
        assert!(!mu.scale(&parse_rational("1/2").unwrap()).is_integral());
        let e = &f.one() - &(&mu * &mu);
        assert_eq!(e, f.from_ints(&[-2, -1]));
        assert!(e.is_integral());
    }

    #[test]
    fn trace_and_norm() {
        let (_, mu) = field_from_salem(&SalemNumber::lehmer()).unwrap();
        // y^5 + y^4 - 5y^3 - ...: trace of mu is -1
        assert_eq!(mu.trace(), parse_rational("-1").unwrap());
        assert_eq!(mu.norm(), parse_rational("-3").unwrap());
    }

    #[test]
    fn reducible_generators_are_rejected() {
        let p = IntPoly::from_descending(&[1, 0, -1]);
        assert!(matches!(NumberField::totally_real(&p, 0), Err(Error::Reducible(_))));
        let p = IntPoly::from_descending(&[1, 0, -5, 0, 4]);
        assert!(matches!(NumberField::totally_real(&p, 0), Err(Error::Reducible(_))));
        let p = IntPoly::from_descending(&[1, 0, 1]);
        assert!(NumberField::totally_real(&p, 0).is_err());
    }

    #[test]
    fn json_shapes() {
        let (f, mu) = salem4_field();
        let j = serde_json::to_value(mu.scale(&parse_rational("1/2").unwrap())).unwrap();
        assert_eq!(j, serde_json::json!(["0", "1/2"]));
        let j = serde_json::to_value(&f).unwrap();
        assert_eq!(j["minpoly"], "1,-1,-3");
        assert_eq!(j["identity_index"], 1);
        assert_eq!(j["embeddings"].as_array().unwrap().len(), 2);
    }
}
