//! Reduction of integral isometries modulo a rational prime and the
//! empirical separation probe on principal congruence subgroups.
//!
//! The level is the ideal `p Z[mu]`, so reduction is coefficientwise on the
//! power basis into `(Z/p)[t]/(m(t))` with `m` the generator's minimal
//! polynomial reduced mod `p`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::Interval;
use crate::constructions::{GeneratorSet, Thm1Instance, Thm2Instance};
use crate::error::{Error, Result};
use crate::hyperbolic::{Hyperplane, HyperbolicSpace, Isometry, IsometryTag, RelationTag};
use crate::numberfield::{FieldElement, NumberField};
use crate::salem::is_cyclotomic_product;

/// `Z[mu] / p Z[mu]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    p: u64,
    /// Ascending coefficients of the monic minimal polynomial mod `p`.
    reduced_minpoly: Vec<u64>,
}

/// A residue class, `degree` coefficients mod `p`.
pub type Residue = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueMatrix {
    n: usize,
    entries: Vec<Residue>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl ResidueRing {
    pub fn new(field: &NumberField, p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!("{p} is not a prime below 2^32")));
        }
        let pb = BigInt::from(p);
        let reduced_minpoly = field
            .minpoly()
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect();
        Ok(ResidueRing { p, reduced_minpoly })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.reduced_minpoly.len() - 1
    }

    pub fn reduced_minpoly(&self) -> &[u64] {
        &self.reduced_minpoly
    }

    pub fn zero(&self) -> Residue {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Residue {
        let mut r = self.zero();
        r[0] = 1;
        r
    }

    /// Coefficientwise reduction of an element of `Z[mu]`.
    pub fn reduce(&self, a: &FieldElement) -> Result<Residue> {
        if !a.is_integral() {
            return Err(Error::NotIntegral(a.to_string()));
        }
        let pb = BigInt::from(self.p);
        Ok(a.coeffs()
            .iter()
            .map(|c| c.to_integer().mod_floor(&pb).to_u64().expect("reduced"))
            .collect())
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        let d = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // t^d = -(m_0 + ... + m_{d-1} t^{d-1})
        for k in (d..prod.len()).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, m) in self.reduced_minpoly[..d].iter().enumerate() {
                let sub = top * m % p;
                prod[k - d + i] = (prod[k - d + i] + p - sub) % p;
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn identity_matrix(&self, n: usize) -> ResidueMatrix {
        ResidueMatrix {
            n,
            entries: (0..n * n).map(|i| if i / n == i % n { self.one() } else { self.zero() }).collect(),
        }
    }

    pub fn mat_mul(&self, a: &ResidueMatrix, b: &ResidueMatrix) -> ResidueMatrix {
        let n = a.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.zero();
                for k in 0..n {
                    let x = &a.entries[i * n + k];
                    let y = &b.entries[k * n + j];
                    if x.iter().all(|c| *c == 0) || y.iter().all(|c| *c == 0) {
                        continue;
                    }
                    acc = self.add(&acc, &self.mul(x, y));
                }
                entries.push(acc);
            }
        }
        ResidueMatrix { n, entries }
    }
}

impl ResidueMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Residue {
        &self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(idx, e)| {
            let diag = idx / self.n == idx % self.n;
            e.iter().enumerate().all(|(i, c)| *c == u64::from(diag && i == 0))
        })
    }
}

impl Serialize for ResidueMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for i in 0..self.n {
            seq.serialize_element(&self.entries[i * self.n..(i + 1) * self.n])?;
        }
        seq.end()
    }
}

/// Entrywise reduction of an integral isometry.
pub fn reduce_mod(m: &Isometry, ring: &ResidueRing) -> Result<ResidueMatrix> {
    let mat = m.matrix();
    let entries = mat.entries().iter().map(|e| ring.reduce(e)).collect::<Result<_>>()?;
    Ok(ResidueMatrix { n: mat.rows(), entries })
}

/// Membership in the principal congruence subgroup of level `p`.
pub fn in_congruence(m: &Isometry, ring: &ResidueRing) -> Result<bool> {
    Ok(reduce_mod(m, ring)?.is_identity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TorsionScreen {
    Torsion,
    InfiniteOrder,
    Unknown,
}

/// Finite order when the characteristic polynomial is a product of
/// cyclotomic factors and the element is semisimple; infinite order when
/// loxodromic.
pub fn is_torsion_screen(space: &HyperbolicSpace, m: &Isometry) -> TorsionScreen {
    let Ok(class) = space.classify(m, 64) else {
        return TorsionScreen::Unknown;
    };
    match class.tag {
        IsometryTag::Loxodromic => TorsionScreen::InfiniteOrder,
        IsometryTag::Elliptic if is_cyclotomic_product(&space.norm_charpoly(m)) => TorsionScreen::Torsion,
        _ => TorsionScreen::Unknown,
    }
}

/// The geometric data the probe needs from a construction.
#[derive(Clone, Debug)]
pub struct ProbeTarget {
    pub space: HyperbolicSpace,
    pub h1: Hyperplane,
    pub h2: Hyperplane,
    /// Exact `cosh^2 dist(H_1, H_2)`.
    pub base_cosh_sq: FieldElement,
}

impl From<&Thm2Instance> for ProbeTarget {
    fn from(inst: &Thm2Instance) -> Self {
        ProbeTarget {
            space: inst.space.clone(),
            h1: inst.h1.clone(),
            h2: inst.h2.clone(),
            base_cosh_sq: inst.relation.cosh_sq.clone().expect("ultraparallel mirrors"),
        }
    }
}

impl From<&Thm1Instance> for ProbeTarget {
    fn from(inst: &Thm1Instance) -> Self {
        let space = inst.form.space.clone();
        let h2 = space.image(&inst.g, &inst.form.h1);
        ProbeTarget { space, h1: inst.form.h1.clone(), h2, base_cosh_sq: inst.cosh_sq.clone() }
    }
}

/// One congruence member found by the probe.
#[derive(Clone, Debug, Serialize)]
pub struct MemberRecord {
    pub word: String,
    pub torsion: TorsionScreen,
    /// `gamma H_i = H_i` for `i = 1, 2`.
    pub fixes: [bool; 2],
    /// For fixed mirrors: whether `gamma` keeps each side.
    pub side_preserving: [Option<bool>; 2],
    /// `dist(H_1, gamma H_2) - dist(H_1, H_2)`.
    pub cross_margin: Interval,
    /// `dist(H_i, gamma H_i) - dist(H_1, H_2)` for moved mirrors.
    pub self_margins: [Option<Interval>; 2],
    /// The word evaluates to the identity matrix.
    pub trivial: bool,
    pub violation: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub p: u64,
    pub word_bound: usize,
    pub sampled: bool,
    pub words_examined: usize,
    pub congruence_members: usize,
    pub min_margin: Option<Interval>,
    pub violations: Vec<String>,
    pub torsion_found: Vec<String>,
    pub members: Vec<MemberRecord>,
    /// Set on the last report of an escalation that ran out of primes.
    pub unresolved: bool,
}

/// Reduced words (no letter twice in a row) of length at most `bound`.
pub fn ball_size(generators: usize, bound: usize) -> u128 {
    let g = generators as u128;
    let mut total = 1u128;
    let mut layer = 1u128;
    for l in 1..=bound {
        layer = if l == 1 { g } else { layer.saturating_mul(g.saturating_sub(1)) };
        total = total.saturating_add(layer);
    }
    total
}

/// Words of length `<= bound` whose residue product is the identity,
/// together with the number of words examined. The whole ball is walked
/// when it has at most `budget` words; otherwise `budget` words are
/// sampled from `seed`.
pub fn congruence_words(
    gens: &GeneratorSet,
    ring: &ResidueRing,
    dim: usize,
    bound: usize,
    budget: usize,
    seed: u64,
) -> Result<(Vec<Vec<usize>>, usize, bool)> {
    let residues: Vec<ResidueMatrix> =
        gens.members.iter().map(|g| reduce_mod(&g.isometry, ring)).collect::<Result<_>>()?;
    let total = ball_size(gens.len(), bound);
    if total <= budget as u128 {
        let id = ring.identity_matrix(dim);
        let mut members = vec![Vec::new()];
        let branches: Vec<Vec<Vec<usize>>> = (0..gens.len())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                if bound > 0 {
                    let mut word = vec![first];
                    let m = ring.mat_mul(&id, &residues[first]);
                    walk(ring, &residues, bound, &mut word, &m, &mut out);
                }
                out
            })
            .collect();
        members.extend(branches.into_iter().flatten());
        return Ok((members, total as usize, false));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = Vec::new();
    for _ in 0..budget {
        let len = rng.gen_range(0..=bound);
        let mut w: Vec<usize> = Vec::with_capacity(len);
        while w.len() < len {
            let g = rng.gen_range(0..gens.len());
            if gens.len() > 1 && w.last() == Some(&g) {
                continue;
            }
            w.push(g);
        }
        let m = w.iter().fold(ring.identity_matrix(dim), |acc, &i| ring.mat_mul(&acc, &residues[i]));
        if m.is_identity() {
            members.push(w);
        }
    }
    Ok((members, budget, true))
}

fn walk(
    ring: &ResidueRing,
    residues: &[ResidueMatrix],
    bound: usize,
    word: &mut Vec<usize>,
    m: &ResidueMatrix,
    out: &mut Vec<Vec<usize>>,
) {
    if m.is_identity() {
        out.push(word.clone());
    }
    if word.len() == bound {
        return;
    }
    let last = *word.last().expect("nonempty word");
    for (i, r) in residues.iter().enumerate() {
        if i == last {
            continue;
        }
        word.push(i);
        walk(ring, residues, bound, word, &ring.mat_mul(m, r), out);
        word.pop();
    }
}

/// Walks (or samples) the ball of radius `bound`, keeps the words in the
/// level-`p` congruence subgroup and checks the separation inequalities on
/// each of them exactly.
pub fn separation_probe(
    target: &ProbeTarget,
    gens: &GeneratorSet,
    p: u64,
    bound: usize,
    budget: usize,
    seed: u64,
    prec: u32,
) -> Result<ProbeReport> {
    let space = &target.space;
    let ring = ResidueRing::new(space.field(), p)?;
    let (words, examined, sampled) = congruence_words(gens, &ring, space.dim(), bound, budget, seed)?;
    let records: Vec<(MemberRecord, FieldElement)> = words
        .par_iter()
        .map(|w| examine(target, gens, w, prec))
        .collect::<Result<_>>()?;
    let mut report = ProbeReport {
        p,
        word_bound: bound,
        sampled,
        words_examined: examined,
        congruence_members: records.len(),
        min_margin: None,
        violations: Vec::new(),
        torsion_found: Vec::new(),
        members: Vec::new(),
        unresolved: false,
    };
    let mut best: Option<FieldElement> = None;
    for (rec, c) in &records {
        if rec.violation {
            report.violations.push(rec.word.clone());
        }
        if rec.torsion == TorsionScreen::Torsion && !rec.trivial {
            report.torsion_found.push(rec.word.clone());
        }
        let smaller = match &best {
            None => true,
            Some(b) => space.field().compare_at(c, b, space.field().identity()) == Ordering::Less,
        };
        if smaller {
            best = Some(c.clone());
        }
    }
    if let Some(c) = best {
        report.min_margin = Some(margin(target, &c, prec));
    }
    report.members = records.into_iter().map(|(r, _)| r).collect();
    Ok(report)
}

/// Runs the probe at `p` and at following primes while violations remain,
/// trying at most `max_primes` primes.
#[allow(clippy::too_many_arguments)]
pub fn separation_probe_escalating(
    target: &ProbeTarget,
    gens: &GeneratorSet,
    p: u64,
    bound: usize,
    budget: usize,
    seed: u64,
    prec: u32,
    max_primes: usize,
) -> Result<Vec<ProbeReport>> {
    let mut reports = Vec::new();
    let mut q = p;
    for _ in 0..max_primes.max(1) {
        let r = separation_probe(target, gens, q, bound, budget, seed, prec)?;
        let clean = r.violations.is_empty();
        reports.push(r);
        if clean {
            return Ok(reports);
        }
        q = next_prime(q);
    }
    if let Some(last) = reports.last_mut() {
        last.unresolved = true;
    }
    Ok(reports)
}

pub fn next_prime(p: u64) -> u64 {
    (p + 1..).find(|&q| is_prime(q)).expect("primes are unbounded")
}

/// `cosh^2` as a margin against the base distance: `acosh(sqrt c) - d0`,
/// with distance zero for `c <= 1`.
fn margin(target: &ProbeTarget, c: &FieldElement, prec: u32) -> Interval {
    let k = target.space.field();
    if c == &target.base_cosh_sq {
        return Interval::zero();
    }
    let base = target.space.acosh_sqrt(&target.base_cosh_sq, prec);
    let d = if k.sign_at(&(c - &k.one()), k.identity()) == Ordering::Greater {
        target.space.acosh_sqrt(c, prec)
    } else {
        Interval::zero()
    };
    &d - &base
}

/// The record for one member and the smallest `cosh^2` among its margins
/// (zero standing for crossing mirrors).
fn examine(target: &ProbeTarget, gens: &GeneratorSet, word: &[usize], prec: u32) -> Result<(MemberRecord, FieldElement)> {
    let space = &target.space;
    let k = space.field();
    let gamma = gens.word(space, word);
    let trivial = gamma.is_identity();
    let torsion = if trivial { TorsionScreen::Torsion } else { is_torsion_screen(space, &gamma) };
    let hs = [&target.h1, &target.h2];
    let effective = |a: &Hyperplane, b: &Hyperplane| -> FieldElement {
        let rel = space.hyperplane_relation(a, b, 16);
        match rel.tag {
            RelationTag::Ultraparallel => rel.cosh_sq.expect("ultraparallel"),
            _ => k.zero(),
        }
    };
    let mut fixes = [false; 2];
    let mut side = [None, None];
    let mut selfm = [None, None];
    let mut worst = effective(&target.h1, &space.image(&gamma, &target.h2));
    let cross = worst.clone();
    for (i, h) in hs.iter().enumerate() {
        let img = space.image(&gamma, h);
        if let Some(scale) = proportion(h.normal(), img.normal()) {
            fixes[i] = true;
            side[i] = Some(k.sign_at(&scale, k.identity()) == Ordering::Greater);
        } else {
            let c = effective(h, &img);
            selfm[i] = Some(margin(target, &c, prec));
            if k.compare_at(&c, &worst, k.identity()) == Ordering::Less {
                worst = c;
            }
        }
    }
    let below = |c: &FieldElement| k.compare_at(c, &target.base_cosh_sq, k.identity()) == Ordering::Less;
    let violation = below(&worst) || (torsion == TorsionScreen::Torsion && !trivial);
    let rec = MemberRecord {
        word: gens.word_label(word),
        torsion,
        fixes,
        side_preserving: side,
        cross_margin: margin(target, &cross, prec),
        self_margins: selfm,
        trivial,
        violation,
    };
    Ok((rec, worst))
}

/// `Some(c)` with `v = c u` when the normals are proportional.
fn proportion(u: &[FieldElement], v: &[FieldElement]) -> Option<FieldElement> {
    let i = u.iter().position(|x| !x.is_zero())?;
    let c = v[i].checked_div(&u[i]).ok()?;
    u.iter().zip(v).all(|(a, b)| &(&c * a) == b).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_thm2, harvest_generators};
    use crate::salem::SalemNumber;

    fn setup(n: usize) -> (Thm2Instance, GeneratorSet) {
        let inst = build_thm2(&SalemNumber::parse("1,-1,-1,-1,1").unwrap(), n, 64).unwrap();
        let named = vec![("tau1".to_string(), inst.tau1.clone()), ("tau2".to_string(), inst.tau2.clone())];
        let gens = harvest_generators(&inst.space, &named, 1);
        (inst, gens)
    }

    #[test]
    fn residue_ring_mod_two() {
        let (inst, _) = setup(2);
        let ring = ResidueRing::new(inst.space.field(), 2).unwrap();
        assert_eq!(ring.reduced_minpoly(), &[1, 1, 1]);
        let r = reduce_mod(&inst.tau1, &ring).unwrap();
        assert_eq!(r.get(0, 0), &vec![1, 0]);
        assert_eq!(r.get(0, 2), &vec![0, 1]);
        assert!(ResidueRing::new(inst.space.field(), 4).is_err());
    }

    #[test]
    fn membership_examples() {
        let (inst, _) = setup(2);
        let ring = ResidueRing::new(inst.space.field(), 3).unwrap();
        assert!(in_congruence(&inst.space.identity(), &ring).unwrap());
        assert!(!in_congruence(&inst.tau1, &ring).unwrap());
        let prod = inst.tau1.compose(&inst.tau2);
        assert_eq!(
            reduce_mod(&prod, &ring).unwrap(),
            ring.mat_mul(&reduce_mod(&inst.tau1, &ring).unwrap(), &reduce_mod(&inst.tau2, &ring).unwrap())
        );
    }

    #[test]
    fn non_integral_is_rejected() {
        let (inst, _) = setup(2);
        let k = inst.space.field();
        let ring = ResidueRing::new(k, 5).unwrap();
        let half = k.from_rational(crate::arith::parse_rational("1/2").unwrap());
        assert!(matches!(ring.reduce(&half), Err(Error::NotIntegral(_))));
        assert!(Error::NotIntegral("x".into()).to_string().contains("not in the order"));
    }

    #[test]
    fn torsion_screen() {
        let (inst, _) = setup(2);
        assert_eq!(is_torsion_screen(&inst.space, &inst.tau1), TorsionScreen::Torsion);
        assert_eq!(is_torsion_screen(&inst.space, &inst.space.identity()), TorsionScreen::Torsion);
        assert_eq!(is_torsion_screen(&inst.space, &inst.tau1.compose(&inst.tau2)), TorsionScreen::InfiniteOrder);
    }

    #[test]
    fn vacuous_probe() {
        let (inst, gens) = setup(2);
        let target = ProbeTarget::from(&inst);
        let r = separation_probe(&target, &gens, 5, 0, 1000, 0, 64).unwrap();
        assert_eq!(r.words_examined, 1);
        assert_eq!(r.congruence_members, 1);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn small_probe_is_well_formed() {
        let (inst, gens) = setup(2);
        let target = ProbeTarget::from(&inst);
        let r = separation_probe(&target, &gens, 5, 3, 1_000_000, 0, 64).unwrap();
        assert_eq!(r.words_examined as u128, ball_size(gens.len(), 3));
        let ring = ResidueRing::new(inst.space.field(), 5).unwrap();
        let (words, _, _) = congruence_words(&gens, &ring, 3, 3, 1_000_000, 0).unwrap();
        for w in &words {
            assert!(in_congruence(&gens.word(&inst.space, w), &ring).unwrap());
        }
        assert_eq!(r.members.iter().filter(|m| m.violation).count(), r.violations.len());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ball_size(3, 0), 1);
        assert_eq!(ball_size(3, 2), 1 + 3 + 6);
    }
}
