//! Quadratic forms over totally real fields.

use std::cmp::Ordering;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::{Field, Matrix, Ring};
use crate::error::{Error, Result};
use crate::numberfield::{Embedding, FieldElement, NumberField};

/// A column vector over the field.
pub type Vector = Vec<FieldElement>;

/// Nondegenerate symmetric Gram matrix of a form in `n + 1` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    field: NumberField,
    matrix: Matrix<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
}

impl Signature {
    pub fn new(positives: usize, negatives: usize) -> Self {
        Signature { positives, negatives }
    }
}

impl GramMatrix {
    pub fn new(field: &NumberField, matrix: Matrix<FieldElement>) -> Result<Self> {
        let d = matrix.rows();
        if matrix.cols() != d {
            return Err(Error::DimensionMismatch(format!("{}x{} Gram matrix", d, matrix.cols())));
        }
        if d < 3 {
            return Err(Error::InvalidArgument(format!("form in {d} variables; need n >= 2")));
        }
        if matrix.entries().iter().any(|e| !field.same_field(e)) {
            return Err(Error::FieldMismatch);
        }
        if !matrix.is_symmetric() {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        if matrix.det().is_zero() {
            return Err(Error::InvalidArgument("Gram matrix is degenerate".into()));
        }
        Ok(GramMatrix { field: field.clone(), matrix })
    }

    /// Diagonal form with the given entries.
    pub fn diagonal(field: &NumberField, diag: &[FieldElement]) -> Result<Self> {
        let zero = field.zero();
        let m = Matrix::from_fn(diag.len(), diag.len(), |i, j| if i == j { diag[i].clone() } else { zero.clone() });
        GramMatrix::new(field, m)
    }

    /// Number of variables, `n + 1`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix<FieldElement> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        self.matrix.get(i, j)
    }

    pub fn det(&self) -> FieldElement {
        self.matrix.det()
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a form in {} variables",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// The bilinear form `u^T G v`.
    pub fn inner(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
        self.check_len(u)?;
        self.check_len(v)?;
        let gv = self.matrix.times_vec(v);
        let mut acc = self.field.zero();
        for (a, b) in u.iter().zip(&gv) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        Ok(acc)
    }

    /// The form itself, `f(v) = <v, v>`.
    pub fn norm(&self, v: &[FieldElement]) -> Result<FieldElement> {
        self.inner(v, v)
    }

    /// The `i`-th standard basis vector.
    pub fn basis_vector(&self, i: usize) -> Vector {
        (0..self.dim()).map(|j| if i == j { self.field.one() } else { self.field.zero() }).collect()
    }

    /// `P^T G P`.
    pub fn congruent(&self, p: &Matrix<FieldElement>) -> Result<GramMatrix> {
        if p.rows() != self.dim() || p.cols() != self.dim() {
            return Err(Error::DimensionMismatch("change of basis".into()));
        }
        GramMatrix::new(&self.field, p.transpose().times(&self.matrix).times(p))
    }

    /// Exact diagonal of a congruence diagonalization `G = L D L^T`, with
    /// symmetric pivoting when a diagonal entry vanishes.
    pub fn diagonalize(&self) -> Vec<FieldElement> {
        let n = self.dim();
        let mut a = self.matrix.to_rows();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // e_k <- e_k + e_j gives the pivot 2 a_kj + a_jj = 2 a_kj.
                    for i in 0..n {
                        let t = &a[k][i] + &a[j][i];
                        a[k][i] = t;
                    }
                    for row in a.iter_mut() {
                        let t = &row[k] + &row[j];
                        row[k] = t;
                    }
                } else {
                    out.push(a[k][k].clone());
                    continue;
                }
            }
            let piv_inv = a[k][k].inverse().expect("nonzero pivot");
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] * &piv_inv;
                for j in k..n {
                    let t = &a[i][j] - &(&f * &a[k][j]);
                    a[i][j] = t;
                }
            }
            for i in k + 1..n {
                a[k][i] = a[k][i].zero_like();
                a[i][k] = a[i][k].zero_like();
            }
            out.push(a[k][k].clone());
        }
        out
    }

    /// Exact signature of `sigma(G)`.
    pub fn signature_at(&self, sigma: Embedding) -> Signature {
        self.signature_of(&self.diagonalize(), sigma)
    }

    fn signature_of(&self, diag: &[FieldElement], sigma: Embedding) -> Signature {
        let mut s = Signature::new(0, 0);
        for d in diag {
            match self.field.sign_at(d, sigma) {
                Ordering::Greater => s.positives += 1,
                Ordering::Less => s.negatives += 1,
                Ordering::Equal => {}
            }
        }
        s
    }

    /// Signature `(n, 1)` at the identity, definite at every other
    /// embedding of a totally real field of degree at least 2.
    pub fn is_admissible(&self) -> bool {
        let n = self.dim() - 1;
        if self.field.degree() < 2 {
            return false;
        }
        let diag = self.diagonalize();
        self.signature_of(&diag, self.field.identity()) == Signature::new(n, 1)
            && self
                .field
                .non_identity()
                .all(|e| self.signature_of(&diag, e) == Signature::new(n + 1, 0))
    }
}

impl Serialize for GramMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_matrix(&self.matrix, s)
    }
}

/// JSON array of rows of field elements.
pub fn serialize_matrix<S: Serializer>(m: &Matrix<FieldElement>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.rows()))?;
    for i in 0..m.rows() {
        seq.serialize_element(m.row(i))?;
    }
    seq.end()
}
