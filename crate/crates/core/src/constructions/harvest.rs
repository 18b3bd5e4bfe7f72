//! Finite samples of integral reflections preserving a form.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::hyperbolic::{HyperbolicSpace, Isometry};
use crate::numberfield::FieldElement;
use crate::quadform::Vector;

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub isometry: Isometry,
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Generator", 2)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("isometry", &self.isometry)?;
        st.end()
    }
}

/// Integral isometries, each its own inverse, without duplicates.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GeneratorSet {
    pub members: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &Isometry {
        &self.members[i].isometry
    }

    /// Adds `m` unless it is the identity, a duplicate or not integral.
    pub fn push(&mut self, label: impl Into<String>, m: Isometry) -> bool {
        if m.is_identity() || !m.is_integral() || self.members.iter().any(|g| g.isometry == m) {
            return false;
        }
        self.members.push(Generator { label: label.into(), isometry: m });
        true
    }

    /// Product of the letters of `word`, leftmost acting last.
    pub fn word(&self, space: &HyperbolicSpace, word: &[usize]) -> Isometry {
        word.iter().fold(space.identity(), |acc, &i| acc.compose(self.get(i)))
    }

    /// Word labels joined by `*`.
    pub fn word_label(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter().map(|&i| self.members[i].label.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// Collects, in order: the `named` isometries, sign changes and
/// transpositions of the middle coordinates `x_2 .. x_n`, and reflections
/// `sigma_v` that are integral, for spacelike `v` supported on
/// `x_1, x_2, x_{n+1}` with entries `a + b mu`, `|a|, |b| <= height`.
pub fn harvest_generators(space: &HyperbolicSpace, named: &[(String, Isometry)], height: u32) -> GeneratorSet {
    let mut set = GeneratorSet::default();
    for (label, m) in named {
        set.push(label.clone(), m.clone());
    }
    let k = space.field();
    let d = space.dim();
    let n = d - 1;
    for i in 1..n {
        let e = space.gram().basis_vector(i);
        if let Ok(r) = space.reflection_in(&e) {
            set.push(format!("flip({})", i + 1), r);
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            let mut v = space.gram().basis_vector(i);
            v[j] = k.from_int(-1);
            if let Ok(r) = space.reflection_in(&v) {
                set.push(format!("swap({},{})", i + 1, j + 1), r);
            }
        }
    }
    let h = height as i64;
    let entries: Vec<FieldElement> = if k.degree() == 1 {
        (-h..=h).map(|a| k.from_int(a)).collect()
    } else {
        (-h..=h).flat_map(|a| (-h..=h).map(move |b| (a, b))).map(|(a, b)| k.from_ints(&[a, b])).collect()
    };
    let support = [0, 1, n];
    let found: Vec<Vec<(Vector, Isometry)>> = entries
        .par_iter()
        .map(|x0| {
            let mut out = Vec::new();
            for x1 in &entries {
                for xn in &entries {
                    let mut v = vec![k.zero(); d];
                    v[support[0]] = x0.clone();
                    v[support[1]] = x1.clone();
                    v[support[2]] = xn.clone();
                    if !leading_positive(&v) {
                        continue;
                    }
                    if let Ok(r) = space.reflection_in(&v) {
                        if r.is_integral() {
                            out.push((v, r));
                        }
                    }
                }
            }
            out
        })
        .collect();
    for (v, r) in found.into_iter().flatten() {
        set.push(format!("refl{}", vector_label(&v)), r);
    }
    set
}

/// One representative of `{v, -v}`: the first nonzero power-basis
/// coefficient is positive.
fn leading_positive(v: &[FieldElement]) -> bool {
    v.iter()
        .flat_map(|x| x.coeffs())
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_positive())
}

fn vector_label(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_thm1_form, build_thm2};
    use crate::salem::SalemNumber;

    #[test]
    fn thm2_harvest_contains_taus() {
        let inst = build_thm2(&SalemNumber::parse("1,-1,-1,-1,1").unwrap(), 3, 64).unwrap();
        let named = vec![("tau1".to_string(), inst.tau1.clone()), ("tau2".to_string(), inst.tau2.clone())];
        let set = harvest_generators(&inst.space, &named, 1);
        assert!(set.members.iter().any(|g| g.isometry == inst.tau1));
        assert!(set.members.iter().any(|g| g.isometry == inst.tau2));
        for g in &set.members {
            assert!(inst.space.preserves_form(g.isometry.matrix()));
            assert!(g.isometry.matrix().times(g.isometry.matrix()).is_identity());
            assert!(g.isometry.is_integral());
        }
        assert!(set.len() > 4);
    }

    #[test]
    fn thm1_harvest_has_middle_symmetries() {
        let f = build_thm1_form(3).unwrap();
        let set = harvest_generators(&f.space, &[], 1);
        let labels: Vec<&str> = set.members.iter().map(|g| g.label.as_str()).collect();
        assert!(labels.contains(&"swap(2,3)"));
        assert!(labels.contains(&"flip(2)"));
        assert!(labels.contains(&"flip(3)"));
    }
}
