//! Hyperboloid-model geometry for a form of signature `(n, 1)`.
//!
//! The model is `{f = -1}` on the sheet containing a fixed timelike
//! reference vector. Hyperplanes are carried by spacelike normals,
//! isometries by exact matrices over the field, and distances between
//! hyperplanes by the exact value of `cosh^2` with an interval `acosh`
//! attached for reporting.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::arith::sturm::isolate_in;
use crate::arith::{
    acosh_from_cosh_sq, log_enclosure, refine_root, Dyadic, Field, IntPoly, Interval, Matrix,
    Poly, Rational, Ring, SturmChain,
};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::quadform::{serialize_matrix, GramMatrix, Vector};
use crate::salem::cyclotomics_up_to_degree;

/// Refinement cap for certifying real eigenvalues outside the unit circle.
const MAX_CLASSIFY_BITS: i64 = 4096;

/// A hyperplane `{x : <x, u> = 0}` given by a spacelike normal `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Vector,
}

impl Hyperplane {
    pub fn normal(&self) -> &[FieldElement] {
        &self.normal
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Hyperplane", 1)?;
        st.serialize_field("normal", &self.normal)?;
        st.end()
    }
}

/// A form-preserving linear map with its sheet behaviour.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    matrix: Matrix<FieldElement>,
    sheet_preserving: bool,
}

impl Isometry {
    pub fn matrix(&self) -> &Matrix<FieldElement> {
        &self.matrix
    }

    pub fn is_sheet_preserving(&self) -> bool {
        self.sheet_preserving
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `self * other`, acting as `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: self.matrix.times(&other.matrix),
            sheet_preserving: self.sheet_preserving == other.sheet_preserving,
        }
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            matrix: self.matrix.inverse().expect("isometries are invertible"),
            sheet_preserving: self.sheet_preserving,
        }
    }

    pub fn pow(&self, k: u32) -> Isometry {
        let one = self.matrix.get(0, 0).one_like();
        let mut acc = Isometry { matrix: Matrix::identity(self.dim(), &one), sheet_preserving: true };
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vector {
        self.matrix.times_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Every entry lies in the order `Z[mu]`.
    pub fn is_integral(&self) -> bool {
        self.matrix.entries().iter().all(|e| e.is_integral())
    }

    /// Characteristic polynomial over the field.
    pub fn charpoly(&self) -> Poly<FieldElement> {
        self.matrix.charpoly()
    }
}

impl Serialize for Isometry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct M<'a>(&'a Matrix<FieldElement>);
        impl Serialize for M<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_matrix(self.0, s)
            }
        }
        let mut st = s.serialize_struct("Isometry", 2)?;
        st.serialize_field("matrix", &M(&self.matrix))?;
        st.serialize_field("sheet_preserving", &self.sheet_preserving)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationTag {
    Equal,
    Intersecting,
    Tangent,
    Ultraparallel,
}

/// Relative position of two hyperplanes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperplaneRelation {
    pub tag: RelationTag,
    /// `cosh^2` of the distance, for ultraparallel pairs.
    pub cosh_sq: Option<FieldElement>,
    pub dist: Option<Interval>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsometryTag {
    Elliptic,
    Parabolic,
    Loxodromic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsometryClass {
    pub tag: IsometryTag,
    /// Enclosure of the eigenvalue of largest modulus (loxodromic only).
    pub spectral_radius: Option<Interval>,
    /// `log` of the spectral radius.
    pub translation_length: Option<Interval>,
    /// Squarefree part of the characteristic polynomial with its
    /// cyclotomic factors removed; vanishes at the spectral radius.
    pub dominant_factor: Option<Poly<FieldElement>>,
}

impl Serialize for IsometryClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IsometryClass", 4)?;
        st.serialize_field("tag", &self.tag)?;
        st.serialize_field("spectral_radius", &self.spectral_radius)?;
        st.serialize_field("translation_length", &self.translation_length)?;
        st.serialize_field("dominant_factor", &self.dominant_factor.as_ref().map(PolyJson))?;
        st.end()
    }
}

/// Serializes a polynomial over the field as its ascending coefficients.
pub struct PolyJson<'a>(pub &'a Poly<FieldElement>);

impl Serialize for PolyJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.coeffs().len()))?;
        for c in self.0.coeffs() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// A form with a designated timelike reference vector fixing the sheet.
#[derive(Clone, Debug)]
pub struct HyperbolicSpace {
    gram: GramMatrix,
    reference: Vector,
    admissible: bool,
}

impl HyperbolicSpace {
    pub fn new(gram: GramMatrix, reference: Vector) -> Result<Self> {
        let f = gram.norm(&reference)?;
        if gram.field().sign_at(&f, gram.field().identity()) != Ordering::Less {
            return Err(Error::Causality("timelike"));
        }
        let admissible = gram.is_admissible();
        Ok(HyperbolicSpace { gram, reference, admissible })
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn field(&self) -> &NumberField {
        self.gram.field()
    }

    pub fn reference(&self) -> &[FieldElement] {
        &self.reference
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    fn sign_id(&self, a: &FieldElement) -> Ordering {
        self.field().sign_at(a, self.field().identity())
    }

    pub fn is_spacelike(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(self.sign_id(&self.gram.norm(v)?) == Ordering::Greater)
    }

    pub fn hyperplane(&self, normal: Vector) -> Result<Hyperplane> {
        if !self.is_spacelike(&normal)? {
            return Err(Error::Causality("spacelike"));
        }
        Ok(Hyperplane { normal })
    }

    pub fn identity(&self) -> Isometry {
        Isometry { matrix: Matrix::identity(self.dim(), &self.field().one()), sheet_preserving: true }
    }

    /// Wraps `m` after checking `m^T G m = G` exactly.
    pub fn isometry(&self, m: Matrix<FieldElement>) -> Result<Isometry> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(Error::DimensionMismatch("isometry matrix".into()));
        }
        if !self.preserves_form(&m) {
            return Err(Error::NotIsometry);
        }
        let sheet_preserving = self.preserves_sheet_with(&m, &self.reference)?;
        Ok(Isometry { matrix: m, sheet_preserving })
    }

    pub fn preserves_form(&self, m: &Matrix<FieldElement>) -> bool {
        &m.transpose().times(self.gram.matrix()).times(m) == self.gram.matrix()
    }

    /// Whether `m` keeps the reference vector in its time cone.
    pub fn preserves_sheet(&self, m: &Matrix<FieldElement>) -> bool {
        self.preserves_sheet_with(m, &self.reference).expect("reference vector is timelike")
    }

    /// Sheet test against an explicit timelike `v0`: `<m v0, v0> < 0`.
    pub fn preserves_sheet_with(&self, m: &Matrix<FieldElement>, v0: &[FieldElement]) -> Result<bool> {
        if self.sign_id(&self.gram.norm(v0)?) != Ordering::Less {
            return Err(Error::Causality("timelike"));
        }
        let img = m.times_vec(v0);
        Ok(self.sign_id(&self.gram.inner(&img, v0)?) == Ordering::Less)
    }

    /// The reflection `x -> x - 2 <x, v> / f(v) v` in a spacelike `v`.
    pub fn reflection_in(&self, v: &[FieldElement]) -> Result<Isometry> {
        let fv = self.gram.norm(v)?;
        if self.sign_id(&fv) != Ordering::Greater {
            return Err(Error::Causality("spacelike"));
        }
        self.reflection_nonisotropic(v)
    }

    /// The same reflection formula for any `v` with `f(v) != 0`; timelike
    /// `v` gives a map exchanging the two sheets.
    pub fn reflection_nonisotropic(&self, v: &[FieldElement]) -> Result<Isometry> {
        let fv = self.gram.norm(v)?;
        if fv.is_zero() {
            return Err(Error::Causality("non-isotropic"));
        }
        let gv = self.gram.matrix().times_vec(v);
        let c = fv.inverse().expect("f(v) is nonzero");
        let two_c = &c + &c;
        let m = Matrix::from_fn(self.dim(), self.dim(), |i, j| {
            let t = &two_c * &(&v[i] * &gv[j]);
            if i == j {
                &self.field().one() - &t
            } else {
                -t
            }
        });
        let sheet_preserving = self.preserves_sheet(&m);
        Ok(Isometry { matrix: m, sheet_preserving })
    }

    /// The normal of a reflection's mirror: the solution of `(r + I) u = 0`,
    /// scaled so its last nonzero coordinate is 1.
    pub fn fixed_hyperplane(&self, r: &Isometry) -> Result<Hyperplane> {
        let one = self.field().one();
        let id = Matrix::identity(self.dim(), &one);
        if !r.matrix.times(&r.matrix).is_identity() {
            return Err(Error::NotReflection("not an involution".into()));
        }
        let kernel = r.matrix.plus(&id).nullspace();
        if kernel.len() != 1 {
            return Err(Error::NotReflection(format!("-1 eigenspace of dimension {}", kernel.len())));
        }
        let u = &kernel[0];
        let last = u.iter().rev().find(|c| !c.is_zero()).expect("nonzero kernel vector");
        let inv = last.inverse().expect("nonzero");
        let normal: Vector = u.iter().map(|c| c * &inv).collect();
        if !self.is_spacelike(&normal)? {
            return Err(Error::NotReflection("mirror normal is not spacelike".into()));
        }
        Ok(Hyperplane { normal })
    }

    /// `g H`, with normal `g u`.
    pub fn image(&self, g: &Isometry, h: &Hyperplane) -> Hyperplane {
        Hyperplane { normal: g.apply(&h.normal) }
    }

    /// Exact `<u, v>^2 / (f(u) f(v))`.
    pub fn cosh_sq(&self, hu: &Hyperplane, hv: &Hyperplane) -> FieldElement {
        let uv = self.gram.inner(&hu.normal, &hv.normal).expect("same dimension");
        let fu = self.gram.norm(&hu.normal).expect("same dimension");
        let fv = self.gram.norm(&hv.normal).expect("same dimension");
        (&uv * &uv).checked_div(&(&fu * &fv)).expect("spacelike normals")
    }

    /// Exact position of two hyperplanes, with the distance enclosed to
    /// width `2^(1-prec)` when they are ultraparallel.
    pub fn hyperplane_relation(&self, hu: &Hyperplane, hv: &Hyperplane, prec: u32) -> HyperplaneRelation {
        if proportional(&hu.normal, &hv.normal) {
            return HyperplaneRelation { tag: RelationTag::Equal, cosh_sq: None, dist: None };
        }
        let c = self.cosh_sq(hu, hv);
        let cm1 = &c - &self.field().one();
        match self.sign_id(&cm1) {
            Ordering::Less => HyperplaneRelation { tag: RelationTag::Intersecting, cosh_sq: None, dist: None },
            Ordering::Equal => HyperplaneRelation { tag: RelationTag::Tangent, cosh_sq: None, dist: None },
            Ordering::Greater => {
                let dist = self.acosh_sqrt(&c, prec);
                HyperplaneRelation { tag: RelationTag::Ultraparallel, cosh_sq: Some(c), dist: Some(dist) }
            }
        }
    }

    /// Enclosure of `acosh(sqrt(sigma_id(c)))` for `c > 1`, of width at most
    /// `2^(1-prec)`.
    pub fn acosh_sqrt(&self, c: &FieldElement, prec: u32) -> Interval {
        let k = self.field();
        let cm1 = c - &k.one();
        let target = Dyadic::pow2(1 - prec as i64);
        let mut w = prec + 16;
        loop {
            let ci = k.embed(c, k.identity(), w);
            let mi = k.embed(&cm1, k.identity(), w);
            if mi.lo().sign() == Ordering::Greater {
                let d = acosh_from_cosh_sq(&ci, &mi, prec + 2).expect("cosh^2 above 1");
                if d.width() <= target {
                    return d;
                }
            }
            w *= 2;
        }
    }

    /// Restriction-of-scalars characteristic polynomial over `Q`, the
    /// product of `sigma(charpoly(M))` over all embeddings, made primitive.
    pub fn norm_charpoly(&self, m: &Isometry) -> IntPoly {
        norm_charpoly(&m.matrix)
    }

    /// Elliptic, parabolic or loxodromic, with the translation length of a
    /// loxodromic element enclosed to `prec` bits.
    pub fn classify(&self, m: &Isometry, prec: u32) -> Result<IsometryClass> {
        let chi = m.charpoly();
        let k = self.field();
        let big = norm_charpoly(&m.matrix);
        let mut p = big.squarefree_part();
        for r in [IntPoly::from_descending(&[1, -1]), IntPoly::from_descending(&[1, 1])] {
            if let Some(q) = p.div_exact(&r) {
                p = q;
            }
        }
        let mut roots = Vec::new();
        if p.degree() > 0 {
            let chain = SturmChain::new(&p)?;
            let b = p.root_bound();
            let width = Rational::new(BigInt::from(1), BigInt::from(256));
            for r in isolate_in(&chain, &-(&b + &Dyadic::one()), &b, &width)? {
                if let Some(r) = self.outside_unit_root(&p, &chi, r)? {
                    roots.push(r);
                }
            }
        }
        if let Some(r) = roots.iter().max_by(|a, b| a.abs().hi().cmp(b.abs().hi())) {
            let rho = refine_root(&p, r, prec as i64 + 16).abs();
            let tl = log_enclosure(&rho, prec)?;
            let mut dominant = chi.squarefree_part().monic();
            let deg = dominant.degree().unwrap_or(0);
            for (_, phi) in cyclotomics_up_to_degree(deg) {
                let phik = Poly::new(phi.coeffs().iter().map(|c| k.from_rational(Rational::from_integer(c.clone()))).collect());
                if let Some(q) = dominant.div_exact(&phik) {
                    dominant = q;
                }
            }
            return Ok(IsometryClass {
                tag: IsometryTag::Loxodromic,
                spectral_radius: Some(rho),
                translation_length: Some(tl),
                dominant_factor: Some(dominant),
            });
        }
        let sf = chi.squarefree_part();
        let tag = if sf.eval_matrix(&m.matrix).entries().iter().all(|e| e.is_zero()) {
            IsometryTag::Elliptic
        } else {
            IsometryTag::Parabolic
        };
        Ok(IsometryClass { tag, spectral_radius: None, translation_length: None, dominant_factor: None })
    }

    /// Refines a real root of the norm polynomial `p` until it is certified
    /// off the unit circle and attributed to (or excluded from) the identity
    /// conjugate of `chi`. For admissible forms the other conjugates of `M`
    /// preserve definite forms, so every such root belongs to the identity.
    fn outside_unit_root(&self, p: &IntPoly, chi: &Poly<FieldElement>, r: Interval) -> Result<Option<Interval>> {
        let k = self.field();
        let one = Dyadic::one();
        let mut bits = 16;
        let mut r = r;
        loop {
            let a = r.abs();
            if a.hi() < &one {
                return Ok(None);
            }
            if a.lo() > &one {
                break;
            }
            bits *= 2;
            r = refine_root(p, &r, bits);
        }
        if k.degree() == 1 || self.admissible {
            return Ok(Some(r));
        }
        while bits <= MAX_CLASSIFY_BITS {
            let w = bits as u32 + 32;
            let at = |sigma| {
                let mut acc = Interval::zero();
                for c in chi.coeffs().iter().rev() {
                    acc = (&(&acc * &r) + &k.embed(c, sigma, w)).round_out(w);
                }
                acc
            };
            if !at(k.identity()).contains_zero() {
                return Ok(None);
            }
            if k.non_identity().all(|s| !at(s).contains_zero()) {
                return Ok(Some(r));
            }
            bits *= 2;
            r = refine_root(p, &r, bits);
        }
        Err(Error::Precision("eigenvalue attribution undecided".into()))
    }
}

fn proportional(u: &[FieldElement], v: &[FieldElement]) -> bool {
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| (&u[i] * &v[j]) == (&u[j] * &v[i])))
}

/// Characteristic polynomial over `Q` of the matrix viewed as a
/// `Q`-linear map, made primitive.
pub fn norm_charpoly(m: &Matrix<FieldElement>) -> IntPoly {
    let n = m.rows();
    let d = m.get(0, 0).coeffs().len();
    let blocks: Vec<Matrix<Rational>> = m.entries().iter().map(|e| e.mult_matrix()).collect();
    let big = Matrix::from_fn(n * d, n * d, |i, j| blocks[(i / d) * n + j / d].get(i % d, j % d).clone());
    if big.entries().iter().all(|c| c.is_integer()) {
        let bi = big.map(|c| c.to_integer());
        IntPoly::new(bi.charpoly().into_coeffs())
    } else {
        IntPoly::from_rational_poly(&big.charpoly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;
    use crate::numberfield::field_from_salem;
    use crate::salem::SalemNumber;

    fn thm2_space(poly: &str, n: usize) -> (HyperbolicSpace, FieldElement) {
        let (k, mu) = field_from_salem(&SalemNumber::parse(poly).unwrap()).unwrap();
        let corner = mu.scale(&parse_rational("1/2").unwrap());
        let m = Matrix::from_fn(n + 1, n + 1, |i, j| {
            if i == j {
                k.one()
            } else if (i == 0 && j == n) || (i == n && j == 0) {
                corner.clone()
            } else {
                k.zero()
            }
        });
        let g = GramMatrix::new(&k, m).unwrap();
        let mut v0 = g.basis_vector(0);
        v0[n] = -k.one();
        (HyperbolicSpace::new(g, v0).unwrap(), mu)
    }

    fn thm1_space(n: usize) -> HyperbolicSpace {
        let k = NumberField::sqrt2();
        let mut d = vec![k.one(); n];
        d.push(-k.generator());
        let g = GramMatrix::diagonal(&k, &d).unwrap();
        let v0 = g.basis_vector(n);
        HyperbolicSpace::new(g, v0).unwrap()
    }

    fn u2(space: &HyperbolicSpace, mu: &FieldElement) -> Vector {
        let k = space.field();
        let n = space.dim() - 1;
        let mut u = vec![k.zero(); n + 1];
        u[0] = -(&k.one() + mu);
        u[n] = k.one();
        u
    }

    #[test]
    fn thm1_reflection_is_diagonal() {
        let s = thm1_space(3);
        let r = s.reflection_in(&s.gram().basis_vector(0)).unwrap();
        let k = s.field();
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (0, 0) => k.from_int(-1),
                    _ if i == j => k.one(),
                    _ => k.zero(),
                };
                assert_eq!(r.matrix().get(i, j), &want);
            }
        }
        assert!(r.is_sheet_preserving());
        let h = s.fixed_hyperplane(&r).unwrap();
        assert_eq!(h.normal(), &s.gram().basis_vector(0)[..]);
    }

    #[test]
    fn thm2_reflections_match_display() {
        let n = 3;
        let (s, mu) = thm2_space("1,-1,-1,-1,1", n);
        let k = s.field().clone();
        let t1 = s.reflection_in(&s.gram().basis_vector(0)).unwrap();
        let t2 = s.reflection_in(&u2(&s, &mu)).unwrap();
        assert_eq!(t1.matrix().get(0, 0), &k.from_int(-1));
        assert_eq!(t1.matrix().get(0, n), &-mu.clone());
        assert_eq!(t1.matrix().get(n, n), &k.one());
        assert_eq!(t2.matrix().get(0, 0), &-mu.clone());
        assert_eq!(t2.matrix().get(n, 0), &k.one());
        assert_eq!(t2.matrix().get(0, n), &(&k.one() - &(&mu * &mu)));
        assert_eq!(t2.matrix().get(n, n), &mu);
        for t in [&t1, &t2] {
            assert!(t.matrix().times(t.matrix()).is_identity());
            assert!(s.preserves_form(t.matrix()));
            assert!(t.is_sheet_preserving());
            assert!(t.is_integral());
        }
        assert_eq!(s.fixed_hyperplane(&t2).unwrap().normal(), &u2(&s, &mu)[..]);
        assert_eq!(s.fixed_hyperplane(&t1).unwrap().normal(), &s.gram().basis_vector(0)[..]);
    }

    #[test]
    fn thm2_relation_is_exact() {
        let (s, mu) = thm2_space("1,-1,-1,-1,1", 3);
        let k = s.field();
        let h1 = s.hyperplane(s.gram().basis_vector(0)).unwrap();
        let h2 = s.hyperplane(u2(&s, &mu)).unwrap();
        let rel = s.hyperplane_relation(&h1, &h2, 64);
        assert_eq!(rel.tag, RelationTag::Ultraparallel);
        let want = (&mu + &k.from_int(2)).scale(&parse_rational("1/4").unwrap());
        assert_eq!(rel.cosh_sq.as_ref(), Some(&want));
        let d = rel.dist.unwrap();
        assert!(d.contains_rational(&parse_rational("0.271767536248934774946318200310").unwrap()));
        assert!(d.width() <= Dyadic::pow2(-63));
        assert_eq!(s.hyperplane_relation(&h1, &h1, 64).tag, RelationTag::Equal);
    }

    #[test]
    fn orthogonal_mirrors_intersect() {
        let s = thm1_space(2);
        let h1 = s.hyperplane(s.gram().basis_vector(0)).unwrap();
        let h2 = s.hyperplane(s.gram().basis_vector(1)).unwrap();
        assert_eq!(s.hyperplane_relation(&h1, &h2, 64).tag, RelationTag::Intersecting);
        assert!(s.hyperplane(s.gram().basis_vector(2)).is_err());
    }

    #[test]
    fn sheet_tests() {
        let (s, _) = thm2_space("1,-1,-1,-1,1", 3);
        let k = s.field();
        let id = Matrix::identity(4, &k.one());
        assert!(s.preserves_sheet(&id));
        assert!(!s.preserves_sheet(&id.scale(&k.from_int(-1))));
        let e1 = s.gram().basis_vector(0);
        assert!(s.preserves_sheet_with(&id, &e1).is_err());
    }

    #[test]
    fn classification() {
        let n = 2;
        let (s, mu) = thm2_space("1,-1,-1,-1,1", n);
        let k = s.field().clone();
        let t1 = s.reflection_in(&s.gram().basis_vector(0)).unwrap();
        let t2 = s.reflection_in(&u2(&s, &mu)).unwrap();
        let prod = t1.compose(&t2);
        let want = Matrix::from_rows(vec![
            vec![k.zero(), k.zero(), k.from_int(-1)],
            vec![k.zero(), k.one(), k.zero()],
            vec![k.one(), k.zero(), mu.clone()],
        ]);
        assert_eq!(prod.matrix(), &want);
        assert_eq!(s.classify(&t1, 64).unwrap().tag, IsometryTag::Elliptic);
        assert_eq!(s.classify(&s.identity(), 64).unwrap().tag, IsometryTag::Elliptic);
        let c = s.classify(&prod, 64).unwrap();
        assert_eq!(c.tag, IsometryTag::Loxodromic);
        let tl = c.translation_length.unwrap();
        assert!((tl.to_f64_mid() - 1.722084f64.ln()).abs() < 1e-6);
        let f = c.dominant_factor.unwrap();
        assert_eq!(f.coeffs(), &[k.one(), -mu.clone(), k.one()]);
    }

    #[test]
    fn parabolic_element() {
        // Reflections in tangent mirrors of x^2 + y^2 - z^2 compose to a
        // parabolic element.
        let q = NumberField::rationals_at(0);
        let g = GramMatrix::diagonal(&q, &[q.one(), q.one(), q.from_int(-1)]).unwrap();
        let s = HyperbolicSpace::new(g, vec![q.zero(), q.zero(), q.one()]).unwrap();
        let r1 = s.reflection_in(&[q.one(), q.zero(), q.zero()]).unwrap();
        let r2 = s.reflection_in(&[q.one(), q.one(), q.one()]).unwrap();
        let h1 = s.fixed_hyperplane(&r1).unwrap();
        let h2 = s.fixed_hyperplane(&r2).unwrap();
        assert_eq!(s.hyperplane_relation(&h1, &h2, 32).tag, RelationTag::Tangent);
        assert_eq!(s.classify(&r1.compose(&r2), 32).unwrap().tag, IsometryTag::Parabolic);
    }

    #[test]
    fn norm_charpoly_of_product() {
        let (s, mu) = thm2_space("1,-1,-1,-1,1", 2);
        let t1 = s.reflection_in(&s.gram().basis_vector(0)).unwrap();
        let t2 = s.reflection_in(&u2(&s, &mu)).unwrap();
        let n = s.norm_charpoly(&t1.compose(&t2));
        let want = IntPoly::from_descending(&[1, -1, -1, -1, 1]).mul(&IntPoly::from_descending(&[1, -1]).pow(2));
        assert_eq!(n, want);
    }
}
