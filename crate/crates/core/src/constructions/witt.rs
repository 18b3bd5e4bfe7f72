//! Isometries carrying one vector to another of the same norm.

use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicSpace, Isometry};
use crate::numberfield::FieldElement;
use crate::quadform::Vector;

/// An isometry `g` of the form with `g v = w`, as a product of at most two
/// reflections: `sigma_{v-w}` when `f(v - w) != 0`, else
/// `sigma_w sigma_{v+w}`.
pub fn witt_transporter(space: &HyperbolicSpace, v: &[FieldElement], w: &[FieldElement]) -> Result<Isometry> {
    let g = space.gram();
    let fv = g.norm(v)?;
    let fw = g.norm(w)?;
    if fv.is_zero() {
        return Err(Error::InvalidArgument("f(v) = 0".into()));
    }
    if fv != fw {
        return Err(Error::InvalidArgument("f(v) != f(w)".into()));
    }
    if v == w {
        return Ok(space.identity());
    }
    let diff: Vector = v.iter().zip(w).map(|(a, b)| a - b).collect();
    if !g.norm(&diff)?.is_zero() {
        return space.reflection_nonisotropic(&diff);
    }
    // f(v+w) + f(v-w) = 4 f(v) != 0
    let sum: Vector = v.iter().zip(w).map(|(a, b)| a + b).collect();
    let s1 = space.reflection_nonisotropic(&sum)?;
    let s2 = space.reflection_nonisotropic(w)?;
    Ok(s2.compose(&s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_thm1_form;

    #[test]
    fn swaps_basis_vectors() {
        let f = build_thm1_form(3).unwrap();
        let g = f.space.gram();
        let e1 = g.basis_vector(0);
        let e2 = g.basis_vector(1);
        let t = witt_transporter(&f.space, &e1, &e2).unwrap();
        assert_eq!(t.apply(&e1), e2);
        assert_eq!(t.apply(&e2), e1);
        assert!(witt_transporter(&f.space, &e1, &e1).unwrap().is_identity());
    }

    #[test]
    fn negation_and_norm_mismatch() {
        let f = build_thm1_form(2).unwrap();
        let k = f.space.field().clone();
        let g = f.space.gram();
        let v = vec![k.from_int(2), k.one(), k.one()];
        let w: Vector = v.iter().map(|x| -x).collect();
        assert_eq!(witt_transporter(&f.space, &v, &w).unwrap().apply(&v), w);
        let v = vec![k.one(), k.zero(), k.zero()];
        let w = vec![k.zero(), k.one(), k.one()];
        assert_ne!(g.norm(&v).unwrap(), g.norm(&w).unwrap());
        assert!(witt_transporter(&f.space, &v, &w).is_err());
    }

    #[test]
    fn isotropic_difference() {
        // x^2 + y^2 + z^2 - w^2 with v = e1, w = (1,1,0,1): v - w is isotropic.
        use crate::numberfield::NumberField;
        use crate::quadform::GramMatrix;
        let q = NumberField::rationals_at(0);
        let g = GramMatrix::diagonal(&q, &[q.one(), q.one(), q.one(), q.from_int(-1)]).unwrap();
        let s = HyperbolicSpace::new(g.clone(), g.basis_vector(3)).unwrap();
        let v = vec![q.one(), q.zero(), q.zero(), q.zero()];
        let w = vec![q.one(), q.one(), q.zero(), q.one()];
        let diff: Vector = v.iter().zip(&w).map(|(a, b)| a - b).collect();
        assert!(g.norm(&diff).unwrap().is_zero());
        let t = witt_transporter(&s, &v, &w).unwrap();
        assert_eq!(t.apply(&v), w);
        assert!(s.preserves_form(t.matrix()));
    }
}
