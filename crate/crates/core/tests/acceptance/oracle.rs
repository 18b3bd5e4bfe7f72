//! Independent high-precision reference computations.
//!
//! Nothing here calls into the library's root isolation or transcendental
//! code: roots come from Aberth iteration in `f64` polished by Newton steps
//! in `astro-float`, and `log`/`acosh` come from `astro-float` directly.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use salem_systole::arith::{parse_rational, Rational};

/// Working precision in bits (about 125 decimal digits).
pub const P: usize = 416;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Oracle {
    cc: Consts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Salem,
    QuadraticSalem,
    NotSalem,
}

/// Complex number with `astro-float` parts.
#[derive(Clone)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle { cc: Consts::new().expect("constant cache") }
    }

    pub fn int(&mut self, v: &BigInt) -> BigFloat {
        BigFloat::parse(&v.to_string(), Radix::Dec, P, RM, &mut self.cc)
    }

    pub fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = self.int(r.numer());
        let d = self.int(r.denom());
        n.div(&d, P, RM)
    }

    /// Decimal expansion of `x` read back as an exact rational.
    pub fn read_back(&mut self, x: &BigFloat) -> Rational {
        let s = x.format(Radix::Dec, RM, &mut self.cc).expect("finite value");
        parse_rational(&s).expect("decimal output parses")
    }

    pub fn ln(&mut self, x: &Rational) -> Rational {
        let v = self.rational(x).ln(P, RM, &mut self.cc);
        self.read_back(&v)
    }

    pub fn acosh(&mut self, x: &Rational) -> Rational {
        let v = self.rational(x).acosh(P, RM, &mut self.cc);
        self.read_back(&v)
    }

    /// Largest real root of a monic integer polynomial (ascending
    /// coefficients) known to be the only root above 1, by bisection.
    pub fn root_above_one(&mut self, coeffs: &[i64]) -> BigFloat {
        let bound: i64 = 1 + coeffs.iter().map(|c| c.abs()).max().unwrap_or(0);
        let mut lo = BigFloat::from_i64(1, P);
        let mut hi = BigFloat::from_i64(bound, P);
        let half = BigFloat::from_f64(0.5, P);
        let cs: Vec<BigFloat> = coeffs.iter().map(|&c| BigFloat::from_i64(c, P)).collect();
        for _ in 0..P + 8 {
            let mid = lo.add(&hi, P, RM).mul(&half, P, RM);
            let v = cs.iter().rev().fold(BigFloat::from_i64(0, P), |acc, c| acc.mul(&mid, P, RM).add(c, P, RM));
            if v.is_positive() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    /// `log` of the root above 1.
    pub fn log_root(&mut self, coeffs: &[i64]) -> Rational {
        let r = self.root_above_one(coeffs);
        let v = r.ln(P, RM, &mut self.cc);
        self.read_back(&v)
    }

    pub fn root_above_one_rational(&mut self, coeffs: &[i64]) -> Rational {
        let r = self.root_above_one(coeffs);
        self.read_back(&r)
    }

    /// Numerical Salem classification of an integer polynomial (ascending
    /// coefficients) from its complex roots.
    ///
    /// Salem: monic, squarefree, reciprocal up to root pattern, one real
    /// root above 1, one below 1 in modulus, the rest on the unit circle and
    /// none of them a root of unity. Degree 2 with two real roots off the
    /// circle is `QuadraticSalem`.
    pub fn classify(&mut self, coeffs: &[i64]) -> Kind {
        let d = coeffs.len() - 1;
        if d < 2 || coeffs[d] != 1 || !squarefree(coeffs) {
            return Kind::NotSalem;
        }
        let roots = self.roots(coeffs);
        let tol = BigFloat::from_f64(1e-60, P);
        let one = BigFloat::from_i64(1, P);
        let mut outside = Vec::new();
        let mut inside = 0;
        let mut on_circle = Vec::new();
        for z in &roots {
            let m2 = z.re.mul(&z.re, P, RM).add(&z.im.mul(&z.im, P, RM), P, RM);
            let diff = m2.sub(&one, P, RM);
            if diff.abs().cmp(&tol) == Some(-1) {
                on_circle.push(z.clone());
            } else if diff.is_positive() {
                outside.push(z.clone());
            } else {
                inside += 1;
            }
        }
        if outside.len() != 1 || inside != 1 {
            return Kind::NotSalem;
        }
        let z = &outside[0];
        if z.im.abs().cmp(&tol) != Some(-1) || !z.re.is_positive() {
            return Kind::NotSalem;
        }
        if d == 2 {
            return Kind::QuadraticSalem;
        }
        // Roots of unity of degree <= 6 have order at most 18.
        for w in &on_circle {
            let mut pw = w.clone();
            for _ in 1..=18 {
                let dr = pw.re.sub(&one, P, RM);
                let dist = dr.mul(&dr, P, RM).add(&pw.im.mul(&pw.im, P, RM), P, RM);
                if dist.cmp(&tol) == Some(-1) {
                    return Kind::NotSalem;
                }
                pw = cmul(&pw, w);
            }
        }
        Kind::Salem
    }

    /// All complex roots of a squarefree polynomial to about `P` bits.
    fn roots(&mut self, coeffs: &[i64]) -> Vec<Cx> {
        let approx = aberth(&coeffs.iter().map(|&c| c as f64).collect::<Vec<_>>());
        let cs: Vec<BigFloat> = coeffs.iter().map(|&c| BigFloat::from_i64(c, P)).collect();
        approx
            .into_iter()
            .map(|z0| {
                let mut z = Cx { re: BigFloat::from_f64(z0.re, P), im: BigFloat::from_f64(z0.im, P) };
                for _ in 0..12 {
                    let (v, dv) = horner(&cs, &z);
                    z = csub(&z, &cdiv(&v, &dv));
                }
                z
            })
            .collect()
    }
}

/// Roots of a polynomial with ascending `f64` coefficients.
pub fn aberth(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let lead = c[d];
    let radius = 1.0 + c[..d].iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius.min(3.0), 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Mahler measure of a polynomial from `f64` roots.
pub fn mahler_f64(c: &[f64]) -> f64 {
    aberth(c).iter().map(|z| z.norm().max(1.0)).product::<f64>() * c[c.len() - 1].abs()
}

fn cmul(a: &Cx, b: &Cx) -> Cx {
    Cx {
        re: a.re.mul(&b.re, P, RM).sub(&a.im.mul(&b.im, P, RM), P, RM),
        im: a.re.mul(&b.im, P, RM).add(&a.im.mul(&b.re, P, RM), P, RM),
    }
}

fn csub(a: &Cx, b: &Cx) -> Cx {
    Cx { re: a.re.sub(&b.re, P, RM), im: a.im.sub(&b.im, P, RM) }
}

fn cdiv(a: &Cx, b: &Cx) -> Cx {
    let den = b.re.mul(&b.re, P, RM).add(&b.im.mul(&b.im, P, RM), P, RM);
    let conj = Cx { re: b.re.clone(), im: b.im.neg() };
    let num = cmul(a, &conj);
    Cx { re: num.re.div(&den, P, RM), im: num.im.div(&den, P, RM) }
}

fn horner(cs: &[BigFloat], z: &Cx) -> (Cx, Cx) {
    let zero = || Cx { re: BigFloat::from_i64(0, P), im: BigFloat::from_i64(0, P) };
    let mut p = zero();
    let mut dp = zero();
    for c in cs.iter().rev() {
        dp = cmul(&dp, z);
        dp = Cx { re: dp.re.add(&p.re, P, RM), im: dp.im.add(&p.im, P, RM) };
        p = cmul(&p, z);
        p = Cx { re: p.re.add(c, P, RM), im: p.im.clone() };
    }
    (p, dp)
}

/// `gcd(p, p') = 1` over the rationals.
fn squarefree(coeffs: &[i64]) -> bool {
    let p: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
    let dp: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i as i64)))
        .collect();
    let mut a = trim(p);
    let mut b = trim(dp);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let q = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Coefficients of `x^d p(1/x)` equal those of `p`.
pub fn is_reciprocal(c: &[i64]) -> bool {
    c.iter().eq(c.iter().rev())
}
