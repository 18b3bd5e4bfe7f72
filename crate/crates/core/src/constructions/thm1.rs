//! Prescribed hyperplane distances over `Q(sqrt 2)`.
//!
//! The form is `x_1^2 + ... + x_n^2 - sqrt2 x_{n+1}^2` and `H_1 = {x_1 = 0}`.
//! Rotations of the `(x_1, x_{n+1})`-plane are parametrized rationally
//! through the conic `a^2 - sqrt2 b^2 = 1` from the point `(1, 0)`, and
//! `cosh dist(H_1, g H_1) = a(t)` is strictly increasing in `t` on
//! `[0, 2^(-1/4))`, so a target distance is reached by bisection over `t`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{rational_text, Dyadic, Interval, Matrix, Rational};
use crate::error::{Error, Result};
use crate::hyperbolic::{Hyperplane, HyperbolicSpace, Isometry};
use crate::numberfield::{FieldElement, NumberField};
use crate::quadform::GramMatrix;

/// Largest working precision tried before the search gives up.
const MAX_SEARCH_BITS: u32 = 1 << 14;
/// Bisection steps before the search gives up.
const MAX_SEARCH_STEPS: usize = 20_000;

/// The form over `Q(sqrt 2)` with its mirror `H_1` and reference `e_{n+1}`.
#[derive(Clone, Debug)]
pub struct Thm1Form {
    pub space: HyperbolicSpace,
    pub h1: Hyperplane,
}

pub fn build_thm1_form(n: usize) -> Result<Thm1Form> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension {n}; need n >= 2")));
    }
    let k = NumberField::sqrt2();
    let mut diag = vec![k.one(); n];
    diag.push(-k.generator());
    let gram = GramMatrix::diagonal(&k, &diag)?;
    let reference = gram.basis_vector(n);
    let e1 = gram.basis_vector(0);
    let space = HyperbolicSpace::new(gram, reference)?;
    let h1 = space.hyperplane(e1)?;
    Ok(Thm1Form { space, h1 })
}

/// `(a, b)` with `a = (1 + sqrt2 t^2) / (1 - sqrt2 t^2)` and
/// `b = 2t / (1 - sqrt2 t^2)`.
pub fn rotation_coefficients(k: &NumberField, t: &FieldElement) -> Result<(FieldElement, FieldElement)> {
    let r2t2 = &k.generator() * &(t * t);
    let den = &k.one() - &r2t2;
    if den.is_zero() {
        return Err(Error::Domain("pole of the rotation parameter: 1 - sqrt2 t^2 = 0".into()));
    }
    let a = (&k.one() + &r2t2).checked_div(&den)?;
    let b = (t + t).checked_div(&den)?;
    Ok((a, b))
}

/// The rotation of the `(x_1, x_{n+1})`-plane with columns `(a, b)` and
/// `(sqrt2 b, a)`, fixing the middle coordinates.
pub fn rotation_param(form: &Thm1Form, t: &FieldElement) -> Result<Isometry> {
    let k = form.space.field();
    let (a, b) = rotation_coefficients(k, t)?;
    let d = form.space.dim();
    let n = d - 1;
    let sb = &k.generator() * &b;
    let m = Matrix::from_fn(d, d, |i, j| match (i, j) {
        (0, 0) => a.clone(),
        (i, 0) if i == n => b.clone(),
        (0, j) if j == n => sb.clone(),
        (i, j) if i == n && j == n => a.clone(),
        (i, j) if i == j => k.one(),
        _ => k.zero(),
    });
    form.space.isometry(m)
}

/// A certified solution of the distance problem.
#[derive(Clone, Debug)]
pub struct Thm1Instance {
    pub n: usize,
    pub length: Rational,
    pub eps: Rational,
    pub form: Thm1Form,
    pub t: Rational,
    pub g: Isometry,
    /// Exact `cosh^2 dist(H_1, g H_1)`.
    pub cosh_sq: FieldElement,
    /// Enclosure of `dist(H_1, g H_1)`.
    pub certificate: Interval,
    pub designed_systole: Interval,
    pub checks: Thm1Checks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm1Checks {
    pub form_preserved: bool,
    pub admissible: bool,
    pub sheet_preserving: bool,
    pub within_tolerance: bool,
}

impl Thm1Checks {
    pub fn all(&self) -> bool {
        self.form_preserved && self.admissible && self.sheet_preserving && self.within_tolerance
    }
}

/// Searches `t` so that `dist(H_1, g H_1)` is certified to lie strictly
/// inside `(L/2 - eps/2, L/2 + eps/2)`.
pub fn thm1_search(length: &Rational, eps: &Rational, n: usize) -> Result<Thm1Instance> {
    if !length.is_positive() || !eps.is_positive() {
        return Err(Error::InvalidArgument("length and eps must be positive".into()));
    }
    let form = build_thm1_form(n)?;
    let k = form.space.field().clone();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let lo_target = (length - eps) * &half;
    let hi_target = (length + eps) * &half;

    // Bits needed so an enclosure can fit inside the target window.
    let eps_bits = (eps.denom().bits() as i64 - eps.numer().bits() as i64).max(0) as u32;
    let start_bits = 64.max(eps_bits + 24);

    // 0.84^4 < 1/2 < 0.841^4 bracket the pole 2^(-1/4).
    let mut hi_t = Rational::new(BigInt::from(84), BigInt::from(100));
    let mut pole = Rational::new(BigInt::from(841), BigInt::from(1000));
    let mut lo_t = Rational::zero();
    let fourth_below_half = |t: &Rational| {
        let t2 = t * t;
        &t2 * &t2 < half
    };
    debug_assert!(fourth_below_half(&hi_t) && !fourth_below_half(&pole));

    let mut bits = start_bits;
    let mut steps = 0usize;
    // Grow the upper end until it overshoots the target.
    loop {
        match probe(&form, &k, &hi_t, &lo_target, &hi_target, &mut bits)? {
            Probe::TooLarge => break,
            Probe::Inside(inst) => return finish(form, length, eps, hi_t, inst),
            Probe::TooSmall => {
                lo_t = hi_t.clone();
                let mid = (&hi_t + &pole) * &half;
                if fourth_below_half(&mid) {
                    hi_t = mid;
                } else {
                    pole = mid;
                }
            }
        }
        steps += 1;
        if steps > MAX_SEARCH_STEPS {
            return Err(Error::SearchExhausted("upper bracket not found".into()));
        }
    }
    loop {
        let mid = (&lo_t + &hi_t) * &half;
        match probe(&form, &k, &mid, &lo_target, &hi_target, &mut bits)? {
            Probe::Inside(inst) => return finish(form, length, eps, mid, inst),
            Probe::TooSmall => lo_t = mid,
            Probe::TooLarge => hi_t = mid,
        }
        steps += 1;
        if steps > MAX_SEARCH_STEPS {
            return Err(Error::SearchExhausted(format!("no certificate after {steps} bisection steps")));
        }
    }
}

struct Found {
    g: Isometry,
    cosh_sq: FieldElement,
    dist: Interval,
}

enum Probe {
    TooSmall,
    TooLarge,
    Inside(Found),
}

fn probe(
    form: &Thm1Form,
    k: &NumberField,
    t: &Rational,
    lo_target: &Rational,
    hi_target: &Rational,
    bits: &mut u32,
) -> Result<Probe> {
    let g = rotation_param(form, &k.from_rational(t.clone()))?;
    let gh = form.space.image(&g, &form.h1);
    let c = form.space.cosh_sq(&form.h1, &gh);
    if (&c - &k.one()).is_zero() {
        return Ok(Probe::TooSmall);
    }
    let mid = (lo_target + hi_target) / Rational::from_integer(BigInt::from(2));
    loop {
        let d = form.space.acosh_sqrt(&c, *bits);
        let lo = d.lo().to_rational();
        let hi = d.hi().to_rational();
        if &lo > lo_target && &hi < hi_target {
            return Ok(Probe::Inside(Found { g, cosh_sq: c, dist: d }));
        }
        if hi < mid {
            return Ok(Probe::TooSmall);
        }
        if lo > mid {
            return Ok(Probe::TooLarge);
        }
        if *bits >= MAX_SEARCH_BITS {
            return Err(Error::SearchExhausted(format!("undecidable at {bits} bits")));
        }
        *bits *= 2;
    }
}

fn finish(form: Thm1Form, length: &Rational, eps: &Rational, t: Rational, found: Found) -> Result<Thm1Instance> {
    let n = form.space.dim() - 1;
    let checks = Thm1Checks {
        form_preserved: form.space.preserves_form(found.g.matrix()),
        admissible: form.space.is_admissible(),
        sheet_preserving: found.g.is_sheet_preserving(),
        within_tolerance: false,
    };
    let designed_systole = found.dist.mul_pow2(1);
    let mut inst = Thm1Instance {
        n,
        length: length.clone(),
        eps: eps.clone(),
        form,
        t,
        g: found.g,
        cosh_sq: found.cosh_sq,
        certificate: found.dist,
        designed_systole,
        checks,
    };
    inst.checks.within_tolerance = inst.certificate_inside_window();
    Ok(inst)
}

impl Thm1Instance {
    /// Re-derives the certificate condition from the stored enclosure.
    pub fn certificate_inside_window(&self) -> bool {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let lo = (&self.length - &self.eps) * &half;
        let hi = (&self.length + &self.eps) * &half;
        self.certificate.lo().to_rational() > lo && self.certificate.hi().to_rational() < hi
    }

    pub fn certificate_width(&self) -> Dyadic {
        self.certificate.width()
    }
}

impl Serialize for Thm1Instance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Thm1Instance", 12)?;
        st.serialize_field("construction", "thm1")?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("length", &rational_text(&self.length))?;
        st.serialize_field("eps", &rational_text(&self.eps))?;
        st.serialize_field("field", self.form.space.field())?;
        st.serialize_field("form", self.form.space.gram())?;
        st.serialize_field("t", &rational_text(&self.t))?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("cosh_sq", &self.cosh_sq)?;
        st.serialize_field("dist", &self.certificate)?;
        st.serialize_field("designed_systole", &self.designed_systole)?;
        st.serialize_field("checks", &self.checks)?;
        st.end()
    }
}
