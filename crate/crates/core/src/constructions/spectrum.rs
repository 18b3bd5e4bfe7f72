//! Exponential lengths of loxodromic elements and the Salem test on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Interval, Poly, Rational};
use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicSpace, Isometry, IsometryTag};
use crate::salem::{is_salem, strip_cyclotomic, SalemTag, SalemVerdict};

use super::harvest::GeneratorSet;

/// Reason given when the stripping route cannot certify irreducibility.
pub const UNDETERMINED: &str = "undetermined irreducibility";

/// Salem test on the exponential length of a loxodromic `m`.
///
/// The norm to `Q` of the characteristic polynomial is made squarefree and
/// stripped of cyclotomic factors. For an integral element of an admissible
/// (or rational) form, every conjugate of `m` other than the identity one
/// has all eigenvalues on the unit circle, so by Kronecker's theorem what
/// remains is the minimal polynomial of the spectral radius. Otherwise a
/// negative verdict is reported as undetermined.
pub fn exp_length_salem_check(space: &HyperbolicSpace, m: &Isometry, prec: u32) -> Result<SalemVerdict> {
    let class = space.classify(m, prec)?;
    if class.tag != IsometryTag::Loxodromic {
        return Err(Error::NotLoxodromic(format!("{:?} element", class.tag)));
    }
    let k = space.field();
    let sf = space.norm_charpoly(m).squarefree_part();
    let (p, _) = strip_cyclotomic(&sf);
    let chi = m.charpoly();
    let pk = Poly::new(p.coeffs().iter().map(|c| k.from_rational(Rational::from_integer(c.clone()))).collect());
    let shares_root = chi.gcd(&pk).degree().is_some_and(|d| d > 0);
    let rho = class.spectral_radius.expect("loxodromic class carries its spectral radius");
    let vanishes = vanishes_near(&p, &rho) || vanishes_near(&p, &-rho.clone());
    let verdict = is_salem(&p);
    let theory = m.is_integral() && (space.is_admissible() || k.degree() == 1);
    if verdict.is_affirmative() || (theory && vanishes && shares_root) {
        return Ok(verdict);
    }
    Ok(SalemVerdict { tag: SalemTag::NotSalem, reason: UNDETERMINED.into(), lambda: None, minpoly: p })
}

fn vanishes_near(p: &crate::arith::IntPoly, iv: &Interval) -> bool {
    match crate::arith::SturmChain::new(p) {
        Ok(chain) => chain.count_dyadic(iv.lo(), iv.hi()) > 0 || p.sign_at_dyadic(iv.lo()) == std::cmp::Ordering::Equal,
        Err(_) => false,
    }
}

/// One sampled word and what was learned about it.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub word: String,
    pub length: usize,
    pub tag: IsometryTag,
    pub translation_length: Option<Interval>,
    pub verdict: Option<SalemVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub seed: u64,
    pub word_bound: usize,
    pub count: usize,
    pub generators: usize,
    pub loxodromic: usize,
    pub salem: usize,
    pub quadratic_salem: usize,
    pub not_salem: usize,
    pub undetermined: usize,
    pub entries: Vec<SpectrumEntry>,
}

/// Random words with no letter repeated twice in a row, of length
/// uniform in `1..=max_len`.
pub fn random_words(generators: usize, max_len: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if generators == 0 || max_len == 0 {
        return vec![Vec::new(); count];
    }
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let mut w: Vec<usize> = Vec::with_capacity(len);
            while w.len() < len {
                let g = rng.gen_range(0..generators);
                if generators > 1 && w.last() == Some(&g) {
                    continue;
                }
                w.push(g);
            }
            w
        })
        .collect()
}

/// Classifies `count` random words of length at most `max_len` and runs
/// the Salem test on every loxodromic one.
pub fn spectrum_sample(
    space: &HyperbolicSpace,
    gens: &GeneratorSet,
    max_len: usize,
    count: usize,
    seed: u64,
    prec: u32,
) -> Result<SpectrumReport> {
    let words = random_words(gens.len(), max_len, count, seed);
    let entries: Vec<SpectrumEntry> = words
        .par_iter()
        .map(|w| {
            let m = gens.word(space, w);
            let class = space.classify(&m, prec)?;
            let verdict = if class.tag == IsometryTag::Loxodromic {
                Some(exp_length_salem_check(space, &m, prec)?)
            } else {
                None
            };
            Ok(SpectrumEntry {
                word: gens.word_label(w),
                length: w.len(),
                tag: class.tag,
                translation_length: class.translation_length,
                verdict,
            })
        })
        .collect::<Result<_>>()?;
    let mut report = SpectrumReport {
        seed,
        word_bound: max_len,
        count,
        generators: gens.len(),
        loxodromic: 0,
        salem: 0,
        quadratic_salem: 0,
        not_salem: 0,
        undetermined: 0,
        entries: Vec::new(),
    };
    for e in &entries {
        if let Some(v) = &e.verdict {
            report.loxodromic += 1;
            match v.tag {
                SalemTag::Salem => report.salem += 1,
                SalemTag::QuadraticSalem => report.quadratic_salem += 1,
                SalemTag::NotSalem if v.reason == UNDETERMINED => report.undetermined += 1,
                SalemTag::NotSalem => report.not_salem += 1,
            }
        }
    }
    report.entries = entries;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;
    use crate::constructions::build_thm2;
    use crate::salem::{power_polynomial, SalemNumber};

    #[test]
    fn product_of_taus_is_salem() {
        let inst = build_thm2(&SalemNumber::parse("1,-1,-1,-1,1").unwrap(), 3, 64).unwrap();
        let prod = inst.tau1.compose(&inst.tau2);
        let v = exp_length_salem_check(&inst.space, &prod, 64).unwrap();
        assert_eq!(v.tag, SalemTag::Salem);
        assert_eq!(v.minpoly, IntPoly::from_descending(&[1, -1, -1, -1, 1]));
        let sq = prod.compose(&prod);
        let v = exp_length_salem_check(&inst.space, &sq, 64).unwrap();
        assert_eq!(v.tag, SalemTag::Salem);
        assert_eq!(v.minpoly, power_polynomial(&IntPoly::from_descending(&[1, -1, -1, -1, 1]), 2));
        assert!(matches!(exp_length_salem_check(&inst.space, &inst.tau1, 64), Err(Error::NotLoxodromic(_))));
    }

    #[test]
    fn words_are_reproducible_and_reduced() {
        let a = random_words(5, 6, 50, 7);
        assert_eq!(a, random_words(5, 6, 50, 7));
        assert_ne!(a, random_words(5, 6, 50, 8));
        for w in &a {
            assert!(!w.is_empty() && w.len() <= 6);
            assert!(w.windows(2).all(|p| p[0] != p[1]));
        }
    }
}
