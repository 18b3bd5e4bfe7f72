//! Minimal commutative-ring abstraction shared by integer, rational and
//! number-field linear algebra.
//!
//! Elements produce their own zero and one (`zero_like`, `one_like`) because
//! number-field elements carry their field with them and there is no global
//! context to ask.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_int_like(&self, v: i64) -> Self;
}

pub trait Field: Ring {
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
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
        BigInt::from(v)
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
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
        Rational::from_integer(BigInt::from(v))
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &R) -> Self {
        Poly::new(vec![r.negated(), r.one_like()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn negated(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    pub fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = match self.coeffs.first() {
            Some(c) => Poly::constant(c.one_like()),
            None => return if k == 0 { panic!("0^0 for polynomials") } else { Poly::zero() },
        };
        for _ in 0..k {
            out = out.times(self);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&c.from_int_like(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<R>) -> Matrix<R> {
        let n = m.rows();
        let one = m.get(0, 0).one_like();
        let mut acc = Matrix::zeros(n, n, &one.zero_like());
        let id = Matrix::identity(n, &one);
        for c in self.coeffs.iter().rev() {
            acc = acc.times(m).plus(&id.scale(c));
        }
        acc
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.leading().unwrap().inverse().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let zero = inv.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].times(&inv);
            if !c.is_zero_elem() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].minus(&c.times(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = match self.coeffs.first().or(other.coeffs.first()) {
            Some(c) => Poly::constant(c.one_like()),
            None => return (Poly::zero(), Poly::zero(), Poly::zero()),
        };
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.minus(&q.times(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.minus(&q.times(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.leading().unwrap().inverse().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Exact quotient, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, zero: &R) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
        }
    }

    pub fn identity(n: usize, one: &R) -> Self {
        let zero = one.zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn times(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let zero = self.data[0].zero_like();
        let mut out = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero_elem() {
                        acc = acc.plus(&a.times(rhs.get(k, j)));
                    }
                }
                out.push(acc);
            }
        }
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        }
    }

    pub fn times_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc = acc.plus(&a.times(x));
                }
                acc
            })
            .collect()
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        *a == a.one_like()
                    } else {
                        a.is_zero_elem()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> R {
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.plus(self.get(i, i));
        }
        acc
    }

    /// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free
    /// algorithm; valid over any commutative ring.
    pub fn charpoly(&self) -> Poly<R> {
        assert_eq!(self.rows, self.cols, "charpoly of non-square matrix");
        let n = self.rows;
        assert!(n > 0, "charpoly of empty matrix");
        let one = self.data[0].one_like();
        let zero = one.zero_like();
        // v holds coefficients from the leading term down.
        let mut v = vec![one.clone(), self.get(0, 0).negated()];
        for r in 1..n {
            let mut t = Vec::with_capacity(r + 2);
            t.push(one.clone());
            t.push(self.get(r, r).negated());
            let mut w: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let mut s = zero.clone();
                for (j, wj) in w.iter().enumerate() {
                    s = s.plus(&self.get(r, j).times(wj));
                }
                t.push(s.negated());
                w = (0..r)
                    .map(|i| {
                        let mut acc = zero.clone();
                        for (j, wj) in w.iter().enumerate() {
                            acc = acc.plus(&self.get(i, j).times(wj));
                        }
                        acc
                    })
                    .collect();
            }
            let mut nv = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut acc = zero.clone();
                for (j, vj) in v.iter().enumerate().take(i + 1) {
                    acc = acc.plus(&t[i - j].times(vj));
                }
                nv.push(acc);
            }
            v = nv;
        }
        v.reverse();
        Poly::new(v)
    }
}

impl<F: Field> Matrix<F> {
    /// Basis of the right null space `{u : A u = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero_elem()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = a.get(r, c).inverse().unwrap();
            for j in 0..cols {
                let v = a.get(r, j).times(&inv);
                a.set(r, j, v);
            }
            for i in 0..rows {
                if i != r && !a.get(i, c).is_zero_elem() {
                    let f = a.get(i, c).clone();
                    for j in 0..cols {
                        let v = a.get(i, j).minus(&f.times(a.get(r, j)));
                        a.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let zero = self.data[0].zero_like();
        let one = zero.one_like();
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut u = vec![zero.clone(); cols];
            u[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                u[pc] = a.get(row, free).negated();
            }
            basis.push(u);
        }
        basis
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.data[0].one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero_elem()) else {
                return det.zero_like();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = det.negated();
            }
            let piv = a.get(c, c).clone();
            det = det.times(&piv);
            let inv = piv.inverse().unwrap();
            for i in c + 1..n {
                if a.get(i, c).is_zero_elem() {
                    continue;
                }
                let f = a.get(i, c).times(&inv);
                for j in c..n {
                    let v = a.get(i, j).minus(&f.times(a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let one = self.data[0].one_like();
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                one.clone()
            } else {
                one.zero_like()
            }
        });
        for c in 0..n {
            let p = (c..n).find(|&i| !aug.get(i, c).is_zero_elem())?;
            if p != c {
                for j in 0..2 * n {
                    aug.data.swap(p * 2 * n + j, c * 2 * n + j);
                }
            }
            let inv = aug.get(c, c).inverse().unwrap();
            for j in 0..2 * n {
                let v = aug.get(c, j).times(&inv);
                aug.set(c, j, v);
            }
            for i in 0..n {
                if i != c && !aug.get(i, c).is_zero_elem() {
                    let f = aug.get(i, c).clone();
                    for j in 0..2 * n {
                        let v = aug.get(i, j).minus(&f.times(aug.get(c, j)));
                        aug.set(i, j, v);
                    }
                }
            }
        }
        Some(Matrix::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    fn ip(c: &[i64]) -> Poly<BigInt> {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    #[test]
    fn berkowitz_small_cases() {
        assert_eq!(zi(&[&[5]]).charpoly(), ip(&[-5, 1]));
        assert_eq!(zi(&[&[1, 2], &[3, 4]]).charpoly(), ip(&[-2, -5, 1]));
        // companion matrix of x^3 - 2x + 7
        let c = zi(&[&[0, 0, -7], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(c.charpoly(), ip(&[7, -2, 0, 1]));
    }

    #[test]
    fn cayley_hamilton_on_integer_matrix() {
        let a = zi(&[&[2, -1, 0, 3], &[1, 0, 4, -2], &[0, 5, 1, 1], &[-3, 2, 2, 0]]);
        let p = a.charpoly();
        assert!(p.eval_matrix(&a).entries().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rational_gcd_and_division() {
        let a = qp(&[-1, 0, 1]); // x^2 - 1
        let b = qp(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), qp(&[1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.times(&a).plus(&t.times(&b)), g);
        let sq = qp(&[1, 2, 1]).times(&qp(&[-2, 0, 1]));
        assert_eq!(sq.squarefree_part(), qp(&[1, 1]).times(&qp(&[-2, 0, 1])));
    }

    #[test]
    fn determinant_and_inverse_agree() {
        let a = zi(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).map(|x| Rational::from_integer(x.clone()));
        assert_eq!(a.det(), Rational::from_integer(BigInt::from(18)));
        let inv = a.inverse().unwrap();
        assert!(a.times(&inv).is_identity());
        let ns = zi(&[&[1, 2, 3], &[2, 4, 6]]).map(|x| Rational::from_integer(x.clone())).nullspace();
        assert_eq!(ns.len(), 2);
    }
}
