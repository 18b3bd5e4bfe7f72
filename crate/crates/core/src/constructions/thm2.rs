//! Two reflections at distance `log(lambda)/2` for a Salem number `lambda`.
//!
//! Over `k = Q(mu)`, `mu = lambda + 1/lambda`, the form has ones on the
//! diagonal and `mu/2` in the two corners. The reflections in `e_1` and in
//! `(-(1+mu), 0, ..., 0, 1)` are integral over `Z[mu]`, their mirrors have
//! `cosh^2 dist = (mu + 2)/4`, and their product has characteristic
//! polynomial `(x^2 - mu x + 1)(x - 1)^(n-1)`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{log_enclosure, Interval, Matrix, Poly, Rational};
use crate::error::{Error, Result};
use crate::hyperbolic::{Hyperplane, HyperbolicSpace, HyperplaneRelation, Isometry, RelationTag};
use crate::numberfield::{field_from_salem, FieldElement, NumberField};
use crate::quadform::{GramMatrix, Vector};
use crate::salem::SalemNumber;

#[derive(Clone, Debug)]
pub struct Thm2Instance {
    pub salem: SalemNumber,
    pub n: usize,
    pub mu: FieldElement,
    pub space: HyperbolicSpace,
    pub tau1: Isometry,
    pub tau2: Isometry,
    pub h1: Hyperplane,
    pub h2: Hyperplane,
    pub relation: HyperplaneRelation,
    /// `2 dist(H_1, H_2)`, enclosing `log(lambda)`.
    pub designed_systole: Interval,
    pub checks: Thm2Checks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm2Checks {
    pub form_preserved: bool,
    /// False for the degenerate field `Q` of a quadratic Salem number.
    pub admissible: bool,
    pub sheet_preserving: bool,
    pub charpoly_identity: bool,
    pub cosh_sq_identity: bool,
    pub tau_integral: bool,
    pub tau_entries: bool,
    pub systole_encloses_log_lambda: bool,
}

impl Thm2Checks {
    /// Every check except admissibility, which fails by design over `Q`.
    pub fn exact_identities(&self) -> bool {
        self.form_preserved
            && self.sheet_preserving
            && self.charpoly_identity
            && self.cosh_sq_identity
            && self.tau_integral
            && self.tau_entries
            && self.systole_encloses_log_lambda
    }
}

/// The Gram matrix with `mu/2` in the corners.
pub fn thm2_gram(k: &NumberField, mu: &FieldElement, n: usize) -> Result<GramMatrix> {
    let corner = mu.scale(&Rational::new(1.into(), 2.into()));
    let m = Matrix::from_fn(n + 1, n + 1, |i, j| {
        if i == j {
            k.one()
        } else if (i == 0 && j == n) || (i == n && j == 0) {
            corner.clone()
        } else {
            k.zero()
        }
    });
    GramMatrix::new(k, m)
}

/// Normal `(-(1+mu), 0, ..., 0, 1)` of the second mirror.
pub fn second_normal(k: &NumberField, mu: &FieldElement, n: usize) -> Vector {
    let mut u = vec![k.zero(); n + 1];
    u[0] = -(&k.one() + mu);
    u[n] = k.one();
    u
}

/// The two reflections written out entrywise.
pub fn displayed_taus(k: &NumberField, mu: &FieldElement, n: usize) -> (Matrix<FieldElement>, Matrix<FieldElement>) {
    let block = |corner: [FieldElement; 4]| {
        let [a, b, c, d] = corner;
        Matrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
            (0, 0) => a.clone(),
            (0, j) if j == n => b.clone(),
            (i, 0) if i == n => c.clone(),
            (i, j) if i == n && j == n => d.clone(),
            (i, j) if i == j => k.one(),
            _ => k.zero(),
        })
    };
    let t1 = block([k.from_int(-1), -mu.clone(), k.zero(), k.one()]);
    let t2 = block([-mu.clone(), &k.one() - &(mu * mu), k.one(), mu.clone()]);
    (t1, t2)
}

/// `(x^2 - mu x + 1)(x - 1)^(n-1)` over `k`.
pub fn expected_charpoly(k: &NumberField, mu: &FieldElement, n: usize) -> Poly<FieldElement> {
    let quad = Poly::new(vec![k.one(), -mu.clone(), k.one()]);
    let lin = Poly::new(vec![k.from_int(-1), k.one()]);
    quad.times(&lin.pow(n as u32 - 1))
}

/// Builds and verifies the instance. Quadratic Salem numbers are admitted
/// with the field collapsed to `Q` and `admissible = false`.
pub fn build_thm2(s: &SalemNumber, n: usize, prec: u32) -> Result<Thm2Instance> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension {n}; need n >= 2")));
    }
    let (k, mu) = field_from_salem(s)?;
    let gram = thm2_gram(&k, &mu, n)?;
    let mut v0 = gram.basis_vector(0);
    v0[n] = k.from_int(-1);
    let e1 = gram.basis_vector(0);
    let u2 = second_normal(&k, &mu, n);
    let space = HyperbolicSpace::new(gram, v0)?;
    let admissible = space.is_admissible();
    if !admissible && !s.is_quadratic() {
        return Err(Error::NotAdmissible(format!("form over the trace field of {}", s.minpoly)));
    }
    let tau1 = space.reflection_in(&e1)?;
    let tau2 = space.reflection_in(&u2)?;
    let h1 = space.hyperplane(e1)?;
    let h2 = space.hyperplane(u2)?;
    let relation = space.hyperplane_relation(&h1, &h2, prec);
    let want_c = (&mu + &k.from_int(2)).scale(&Rational::new(1.into(), 4.into()));
    let dist = relation
        .dist
        .clone()
        .ok_or_else(|| Error::NotSalem("mirrors are not ultraparallel".into()))?;
    let designed_systole = dist.mul_pow2(1);
    let log_lambda = log_enclosure(&s.lambda_at(prec as i64 + 32), prec + 8)?;
    let (d1, d2) = displayed_taus(&k, &mu, n);
    let product = tau1.compose(&tau2);
    let checks = Thm2Checks {
        form_preserved: space.preserves_form(tau1.matrix()) && space.preserves_form(tau2.matrix()),
        admissible,
        sheet_preserving: tau1.is_sheet_preserving() && tau2.is_sheet_preserving(),
        charpoly_identity: product.charpoly() == expected_charpoly(&k, &mu, n),
        cosh_sq_identity: relation.tag == RelationTag::Ultraparallel && relation.cosh_sq.as_ref() == Some(&want_c),
        tau_integral: tau1.is_integral() && tau2.is_integral(),
        tau_entries: tau1.matrix() == &d1 && tau2.matrix() == &d2,
        systole_encloses_log_lambda: designed_systole.overlaps(&log_lambda),
    };
    Ok(Thm2Instance {
        salem: s.clone(),
        n,
        mu,
        space,
        tau1,
        tau2,
        h1,
        h2,
        relation,
        designed_systole,
        checks,
    })
}

impl Serialize for Thm2Instance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Thm2Instance", 12)?;
        st.serialize_field("construction", "thm2")?;
        st.serialize_field("salem", &self.salem)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("field", self.space.field())?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("form", self.space.gram())?;
        st.serialize_field("tau1", &self.tau1)?;
        st.serialize_field("tau2", &self.tau2)?;
        st.serialize_field("cosh_sq", &self.relation.cosh_sq)?;
        st.serialize_field("dist", &self.relation.dist)?;
        st.serialize_field("designed_systole", &self.designed_systole)?;
        st.serialize_field("checks", &self.checks)?;
        st.end()
    }
}
