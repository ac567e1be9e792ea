//! Trace pairings and the quotient by negligible morphisms.
//!
//! `y ∈ Hom(ε, ε′)` is negligible when `tr(z ∘ y) = 0` for every
//! `z ∈ Hom(ε′, ε)`. Negligible morphisms are the kernel of the Gram matrix
//! of the trace pairing, so quotient hom spaces are Gram column spaces.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cobordism::{close_trace_diagram, compose_diagrams, tensor, Diagram, Morphism, SignSeq};
use crate::error::{Error, Result};
use crate::exactlinalg::{format_scalar, kernel, Matrix, Scalar, SpanBasis, Vector};
use crate::skein::{BasisElement, SkeinCategory, SkeinMorphism};

#[derive(Clone, Debug)]
pub struct GramReport {
    pub eps: SignSeq,
    pub eps_prime: SignSeq,
    /// Basis of `Hom(ε′, ε)`.
    pub row_basis: Vec<BasisElement>,
    /// Basis of `Hom(ε, ε′)`.
    pub col_basis: Vec<BasisElement>,
    /// `gram[i][j] = tr(row_i ∘ col_j)`.
    pub gram: Matrix,
    pub rank: usize,
    /// Negligible combinations of the column basis.
    pub kernel_basis: Vec<Vector>,
}

pub fn gram_matrix(cat: &SkeinCategory, eps: &SignSeq, eps_prime: &SignSeq) -> GramReport {
    let row_basis = cat.basis(eps_prime, eps);
    let col_basis = cat.basis(eps, eps_prime);
    let rows_lifted: Vec<Diagram> = row_basis.iter().map(|b| cat.lift_basis(b)).collect();
    let cols_lifted: Vec<Diagram> = col_basis.iter().map(|b| cat.lift_basis(b)).collect();
    let rows: Vec<Vector> = rows_lifted
        .par_iter()
        .map(|z| {
            cols_lifted
                .iter()
                .map(|y| {
                    let (c, d) = compose_diagrams(z, y, &cat.pair).expect("opposite homs compose");
                    c * close_trace_diagram(&d, &cat.pair).expect("endomorphism")
                })
                .collect()
        })
        .collect();
    let gram = Matrix::from_rows_with_cols(rows, col_basis.len()).expect("rectangular");
    let rank = gram.rank();
    let kernel_basis = kernel(&gram);
    GramReport { eps: eps.clone(), eps_prime: eps_prime.clone(), row_basis, col_basis, gram, rank, kernel_basis }
}

impl GramReport {
    /// `true` iff the combination of column basis elements is negligible.
    pub fn is_negligible(&self, v: &[Scalar]) -> bool {
        self.gram.mul_vec(v).iter().all(num_traits::Zero::is_zero)
    }

    pub fn to_json(&self, cat: &SkeinCategory) -> Value {
        let rows: Vec<Vec<String>> = self.gram.to_rows().iter().map(|r| r.iter().map(format_scalar).collect()).collect();
        let kernel: Vec<Vec<String>> = self.kernel_basis.iter().map(|k| k.iter().map(format_scalar).collect()).collect();
        json!({
            "source": self.eps.to_string(),
            "target": self.eps_prime.to_string(),
            "row_basis": self.row_basis.iter().map(|b| cat.basis_to_json(b)).collect::<Vec<_>>(),
            "col_basis": self.col_basis.iter().map(|b| cat.basis_to_json(b)).collect::<Vec<_>>(),
            "gram": rows,
            "rank": self.rank,
            "kernel": kernel,
        })
    }
}

/// `Hom(ε, ε′)` modulo negligible morphisms.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub report: GramReport,
    /// Column indices whose classes form a basis, chosen greedily.
    pub col_reps: Vec<usize>,
    /// Row indices pairing perfectly with the column representatives.
    pub row_reps: Vec<usize>,
    columns: SpanBasis,
}

pub fn quotient(cat: &SkeinCategory, eps: &SignSeq, eps_prime: &SignSeq) -> Quotient {
    let report = gram_matrix(cat, eps, eps_prime);
    let mut columns = SpanBasis::new(report.gram.rows());
    let mut col_reps = Vec::new();
    for j in 0..report.gram.cols() {
        if columns.insert(report.gram.column(j)).is_some() {
            col_reps.push(j);
        }
    }
    let mut rows = SpanBasis::new(col_reps.len());
    let mut row_reps = Vec::new();
    for i in 0..report.gram.rows() {
        let restricted: Vector = col_reps.iter().map(|&j| report.gram[(i, j)].clone()).collect();
        if rows.insert(restricted).is_some() {
            row_reps.push(i);
        }
    }
    Quotient { report, col_reps, row_reps, columns }
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.col_reps.len()
    }

    pub fn representatives(&self) -> Vec<BasisElement> {
        self.col_reps.iter().map(|&j| self.report.col_basis[j].clone()).collect()
    }

    /// The Gram matrix restricted to the representative rows and columns.
    pub fn restricted_gram(&self) -> Matrix {
        let mut m = Matrix::zeros(self.row_reps.len(), self.col_reps.len());
        for (a, &i) in self.row_reps.iter().enumerate() {
            for (b, &j) in self.col_reps.iter().enumerate() {
                m[(a, b)] = self.report.gram[(i, j)].clone();
            }
        }
        m
    }

    /// Coordinates of the class of `m` against the representatives.
    pub fn project(&self, m: &SkeinMorphism) -> Result<Vector> {
        let v = m
            .vector(&self.report.col_basis)
            .ok_or_else(|| Error::BoundaryMismatch("morphism is not in this hom space".into()))?;
        let image = self.report.gram.mul_vec(&v);
        Ok(self.columns.coordinates(&image).expect("Gram images lie in the column space"))
    }

    /// The combination of representatives with the given coordinates.
    pub fn element(&self, coords: &[Scalar]) -> SkeinMorphism {
        SkeinMorphism::from_vector(
            self.report.eps.clone(),
            self.report.eps_prime.clone(),
            &self.representatives(),
            coords,
        )
    }
}

pub fn gligible_hom_dim(cat: &SkeinCategory, eps: &SignSeq, eps_prime: &SignSeq) -> usize {
    gram_matrix(cat, eps, eps_prime).rank
}

/// The state space of `ε`: `Hom(∅, ε)` modulo negligible morphisms.
///
/// Mirror images of `Hom(∅, ε)` span `Hom(ε, ∅)`, so the rank of the pairing
/// `(x, y) ↦ α(ȳx)` is the rank of the Gram matrix of `(∅, ε)`.
#[derive(Clone, Debug)]
pub struct StateSpace {
    pub eps: SignSeq,
    pub dim: usize,
    pub representatives: Vec<BasisElement>,
    pub quotient: Quotient,
}

pub fn state_space(cat: &SkeinCategory, eps: &SignSeq) -> StateSpace {
    let q = quotient(cat, &SignSeq::empty(), eps);
    StateSpace { eps: eps.clone(), dim: q.dim(), representatives: q.representatives(), quotient: q }
}

/// Sends `+ⁿ−ⁿ+ᵐ−ᵐ` to `+ⁿ⁺ᵐ−ⁿ⁺ᵐ` keeping the order within each sign.
pub fn interleaving_permutation(n: usize, m: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(2 * (n + m));
    perm.extend(0..n);
    perm.extend((0..n).map(|k| n + m + k));
    perm.extend((0..m).map(|k| n + k));
    perm.extend((0..m).map(|k| 2 * n + m + k));
    perm
}

/// Product `A(n) ⊗ A(m) → A(n+m)` in state-space coordinates.
pub fn tca_multiply(
    cat: &SkeinCategory,
    a: &StateSpace,
    x: &[Scalar],
    b: &StateSpace,
    y: &[Scalar],
    out: &StateSpace,
) -> Result<Vector> {
    let (n, m) = (a.eps.len() / 2, b.eps.len() / 2);
    if a.eps != SignSeq::balanced(n) || b.eps != SignSeq::balanced(m) || out.eps != SignSeq::balanced(n + m) {
        return Err(Error::BoundaryMismatch("state spaces must be of the form +ⁿ−ⁿ".into()));
    }
    if x.len() != a.dim || y.len() != b.dim {
        return Err(Error::DimensionMismatch("coordinate vector length differs from state-space dimension".into()));
    }
    let xs = cat.lift(&a.quotient.element(x));
    let ys = cat.lift(&b.quotient.element(y));
    let joint = tensor(&xs, &ys);
    let perm = Diagram::permutation(joint.target(), &interleaving_permutation(n, m))?;
    let moved = crate::cobordism::compose(&Morphism::from_diagram(perm), &joint, &cat.pair)?;
    out.quotient.project(&cat.normal_form(&moved))
}
