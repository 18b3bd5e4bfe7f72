//! Property tests for the algebraic and geometric invariants.

use std::cmp::Ordering;
use std::sync::OnceLock;

use proptest::prelude::*;

use salem_systole::arith::{ratio, Interval, Matrix, Rational};
use salem_systole::congruence::{in_congruence, reduce_mod, ResidueRing};
use salem_systole::constructions::{
    build_thm1_form, build_thm2, harvest_generators, rotation_coefficients, witt_transporter, GeneratorSet,
    Thm2Instance,
};
use salem_systole::numberfield::{field_from_salem, FieldElement, NumberField};
use salem_systole::quadform::Vector;
use salem_systole::salem::SalemNumber;

/// Q(mu) for the degree-4 Salem number, mu^2 = mu + 3.
fn salem_field() -> &'static (NumberField, FieldElement) {
    static F: OnceLock<(NumberField, FieldElement)> = OnceLock::new();
    F.get_or_init(|| field_from_salem(&SalemNumber::parse("1,-1,-1,-1,1").unwrap()).unwrap())
}

struct Fixture {
    inst: Thm2Instance,
    gens: GeneratorSet,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let inst = build_thm2(&SalemNumber::parse("1,-1,-1,-1,1").unwrap(), 3, 64).unwrap();
        let named = vec![("tau1".to_string(), inst.tau1.clone()), ("tau2".to_string(), inst.tau2.clone())];
        let gens = harvest_generators(&inst.space, &named, 1);
        Fixture { inst, gens }
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn element() -> impl Strategy<Value = FieldElement> {
    (rational(), rational()).prop_map(|(a, b)| salem_field().0.element(vec![a, b]))
}

fn word(len: usize) -> impl Strategy<Value = Vec<usize>> {
    let g = fixture().gens.len();
    prop::collection::vec(0..g, 1..=len)
}

proptest! {
    #[test]
    fn field_ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            let q = a.checked_div(&b).unwrap();
            prop_assert_eq!(&q * &b, a);
        }
    }

    #[test]
    fn embeddings_are_homomorphisms(a in element(), b in element()) {
        let k = &salem_field().0;
        for s in k.embeddings() {
            let ea = k.embed(&a, s, 80);
            let eb = k.embed(&b, s, 80);
            prop_assert!(k.embed(&(&a * &b), s, 80).overlaps(&(&ea * &eb)));
            prop_assert!(k.embed(&(&a + &b), s, 80).overlaps(&(&ea + &eb)));
        }
    }

    #[test]
    fn trace_and_norm_match_embeddings(a in element()) {
        let k = &salem_field().0;
        let images: Vec<Interval> = k.embeddings().map(|s| k.embed(&a, s, 80)).collect();
        let sum = images.iter().fold(Interval::zero(), |x, y| &x + y);
        let prod = images.iter().fold(Interval::one(), |x, y| &x * y);
        prop_assert!(sum.contains_rational(&a.trace()));
        prop_assert!(prod.contains_rational(&a.norm()));
    }

    #[test]
    fn signature_is_a_congruence_invariant(entries in prop::collection::vec(-2i64..=2, 16)) {
        let f = &fixture().inst.space;
        let k = f.field();
        let p = Matrix::from_fn(4, 4, |i, j| k.from_int(entries[4 * i + j] + if i == j { 5 } else { 0 }));
        let g = f.gram().congruent(&p).unwrap();
        for s in k.embeddings() {
            prop_assert_eq!(g.signature_at(s), f.gram().signature_at(s));
        }
    }

    #[test]
    fn isometry_invariants(w in word(6)) {
        let fx = fixture();
        let space = &fx.inst.space;
        let m = fx.gens.word(space, &w);
        prop_assert!(space.preserves_form(m.matrix()));
        prop_assert!(m.compose(&m.inverse()).is_identity());
        let h1 = &fx.inst.h1;
        let h2 = &fx.inst.h2;
        prop_assert_eq!(
            space.cosh_sq(&space.image(&m, h1), &space.image(&m, h2)),
            space.cosh_sq(h1, h2)
        );
        prop_assert_eq!(m.is_sheet_preserving(), space.preserves_sheet(m.matrix()));
    }

    #[test]
    fn reflections_are_involutions(v in prop::collection::vec((-3i64..=3, -3i64..=3), 4)) {
        let space = &fixture().inst.space;
        let k = space.field();
        let v: Vector = v.iter().map(|&(a, b)| k.from_ints(&[a, b])).collect();
        if space.gram().norm(&v).unwrap().is_zero() {
            return Ok(());
        }
        let r = space.reflection_nonisotropic(&v).unwrap();
        prop_assert!(r.compose(&r).is_identity());
        prop_assert!(space.preserves_form(r.matrix()));
        let minus: Vector = v.iter().map(|x| -x).collect();
        prop_assert_eq!(r.apply(&v), minus);
    }

    #[test]
    fn witt_transporter_is_exact(x in prop::collection::vec(-4i64..=4, 3), y in prop::collection::vec(-4i64..=4, 2)) {
        // e1 + x and a coordinate permutation of it have the same norm.
        let f = build_thm1_form(3).unwrap();
        let k = f.space.field();
        let v: Vector = vec![k.from_int(x[0]), k.from_int(x[1]), k.from_int(x[2]), k.from_ints(&[y[0], y[1]])];
        let w: Vector = vec![v[2].clone(), v[0].clone(), -&v[1], v[3].clone()];
        match witt_transporter(&f.space, &v, &w) {
            Ok(g) => {
                prop_assert_eq!(g.apply(&v), w);
                prop_assert!(f.space.preserves_form(g.matrix()));
            }
            Err(_) => prop_assert!(f.space.gram().norm(&v).unwrap().is_zero()),
        }
    }

    #[test]
    fn rotation_parameter_is_monotone(n1 in 0i64..840, n2 in 0i64..840) {
        prop_assume!(n1 != n2);
        let k = NumberField::sqrt2();
        let t = |n: i64| k.from_rational(ratio(n, 1000));
        let (a1, _) = rotation_coefficients(&k, &t(n1)).unwrap();
        let (a2, _) = rotation_coefficients(&k, &t(n2)).unwrap();
        prop_assert_eq!(k.compare_at(&a1, &a2, k.identity()), n1.cmp(&n2));
        prop_assert!(k.compare_at(&a1, &k.one(), k.identity()) != Ordering::Less);
    }

    #[test]
    fn reduction_is_a_homomorphism(a in word(4), b in word(4), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let fx = fixture();
        let space = &fx.inst.space;
        let ring = ResidueRing::new(space.field(), p).unwrap();
        let ma = fx.gens.word(space, &a);
        let mb = fx.gens.word(space, &b);
        let prod = ma.compose(&mb);
        prop_assert_eq!(
            reduce_mod(&prod, &ring).unwrap(),
            ring.mat_mul(&reduce_mod(&ma, &ring).unwrap(), &reduce_mod(&mb, &ring).unwrap())
        );
        if in_congruence(&ma, &ring).unwrap() && in_congruence(&mb, &ring).unwrap() {
            prop_assert!(in_congruence(&prod, &ring).unwrap());
            prop_assert!(in_congruence(&ma.inverse(), &ring).unwrap());
        }
    }

    #[test]
    fn interval_operations_contain_exact_results(a in rational(), b in rational(), prec in 8u32..80) {
        let ia = Interval::from_rational(&a, prec);
        let ib = Interval::from_rational(&b, prec);
        prop_assert!(ia.contains_rational(&a));
        prop_assert!((&ia + &ib).contains_rational(&(&a + &b)));
        prop_assert!((&ia - &ib).contains_rational(&(&a - &b)));
        prop_assert!((&ia * &ib).contains_rational(&(&a * &b)));
        if !ib.contains_zero() {
            prop_assert!(ia.div(&ib, prec).unwrap().contains_rational(&(&a / &b)));
        }
    }
}
