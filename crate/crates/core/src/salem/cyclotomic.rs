//! Cyclotomic polynomials and cyclotomic-factor stripping.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::IntPoly;

/// Euler's totient.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// All `Phi_m` with `phi(m) <= max_degree`, in increasing `m`.
///
/// `phi(m) >= sqrt(m/2)` bounds the search by `m <= 2 max_degree^2`.
pub fn cyclotomics_up_to_degree(max_degree: usize) -> Vec<(u64, IntPoly)> {
    let limit = 2 * (max_degree as u64).pow(2).max(1);
    let mut table: Vec<Option<IntPoly>> = vec![None; limit as usize + 1];
    let mut out = Vec::new();
    for m in 1..=limit {
        if euler_phi(m) as usize > max_degree {
            continue;
        }
        // Every divisor d of m has phi(d) <= phi(m), so it is already tabled.
        let mut poly = x_pow_minus_one(m as usize);
        for d in 1..m {
            if m % d == 0 {
                let f = table[d as usize].as_ref().expect("divisor tabled");
                poly = poly.div_exact(f).expect("cyclotomic divides x^m - 1");
            }
        }
        table[m as usize] = Some(poly.clone());
        out.push((m, poly));
    }
    out
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut poly = x_pow_minus_one(m as usize);
    for d in 1..m {
        if m % d == 0 {
            poly = poly.div_exact(&cyclotomic(d)).expect("cyclotomic divides x^m - 1");
        }
    }
    poly
}

fn x_pow_minus_one(m: usize) -> IntPoly {
    let mut c = vec![BigInt::zero(); m + 1];
    c[0] = -BigInt::one();
    c[m] = BigInt::one();
    IntPoly::new(c)
}

/// Splits off every cyclotomic factor of `p`.
///
/// Returns `(rest, factors)` with `rest * prod(factors) == p`; factors are
/// listed with multiplicity in increasing index order and `rest` has no
/// cyclotomic factor.
pub fn strip_cyclotomic(p: &IntPoly) -> (IntPoly, Vec<IntPoly>) {
    let mut rest = p.clone();
    let mut factors = Vec::new();
    if p.is_zero() {
        return (rest, factors);
    }
    for (_, phi) in cyclotomics_up_to_degree(p.degree()) {
        if phi.degree() > rest.degree() {
            continue;
        }
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            factors.push(phi.clone());
            if rest.degree() < phi.degree() {
                break;
            }
        }
    }
    (rest, factors)
}

/// True when `p` is a product of cyclotomic polynomials (up to sign).
pub fn is_cyclotomic_product(p: &IntPoly) -> bool {
    let (rest, _) = strip_cyclotomic(p);
    rest.degree() == 0 && !rest.is_zero() && rest.coeffs()[0].magnitude().is_one()
}
