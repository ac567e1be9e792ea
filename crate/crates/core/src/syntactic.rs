//! Syntactic ideals and the syntactic algebra of a series pair.
//!
//! For minimal representations a combination `f` of words lies in the
//! two-sided syntactic ideal of a series iff `ψ(f) = 0`, in the left ideal iff
//! `ψ(f)λ = 0` and in the right ideal iff `μψ(f) = 0`. All normal forms are
//! therefore coordinates of such images against word bases chosen greedily in
//! length-lex order.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::exactlinalg::{dot, format_scalar, zero_vector, Matrix, Scalar, SpanBasis, Vector};
use crate::recognition::{greedy_word_basis, minimize, observable_basis, reachable_basis};
use crate::series::{LinearRep, SeriesPair};
use crate::words::{Polynomial, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    TwoSided,
    Left,
    Right,
}

/// A finite-dimensional algebra given by structure constants:
/// `b_i b_j = Σ_k constants[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    pub dim: usize,
    pub constants: Vec<Vec<Vector>>,
}

impl AlgebraTable {
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (o, c) in out.iter_mut().zip(&self.constants[i][j]) {
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Functional `a ↦ form(b_i a)` when `left`, else `a ↦ form(a b_i)`.
    fn twist(&self, form: &[Scalar], i: usize, left: bool) -> Vector {
        (0..self.dim)
            .map(|j| {
                let c = if left { &self.constants[i][j] } else { &self.constants[j][i] };
                dot(form, c)
            })
            .collect()
    }

    /// The Gram matrix `form(b_i b_j)`.
    pub fn gram(&self, form: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = dot(form, &self.constants[i][j]);
            }
        }
        m
    }
}

/// True iff `ker(form)` contains no nonzero two-sided ideal.
///
/// The largest such ideal is the common kernel of the smallest set of
/// functionals that contains `form` and is closed under precomposition with
/// left and right multiplication by basis elements. The set is grown until
/// its rank stops increasing.
pub fn is_syntactic_pair(algebra: &AlgebraTable, form: &[Scalar]) -> bool {
    let d = algebra.dim;
    let mut span = SpanBasis::new(d);
    let mut frontier = Vec::new();
    if span.insert(form.to_vec()).is_some() {
        frontier.push(form.to_vec());
    }
    while let Some(f) = frontier.pop() {
        for i in 0..d {
            for left in [true, false] {
                let g = algebra.twist(&f, i, left);
                if span.insert(g.clone()).is_some() {
                    frontier.push(g);
                }
            }
        }
    }
    span.len() == d
}

/// True iff `(a, b) ↦ form(ab)` is nondegenerate.
pub fn is_frobenius_form(algebra: &AlgebraTable, form: &[Scalar]) -> bool {
    algebra.gram(form).rank() == algebra.dim
}

#[derive(Clone, Debug)]
pub struct SyntacticData {
    pub d: usize,
    pub ell: usize,
    pub r: usize,
    pub algebra_basis_words: Vec<Word>,
    pub left_basis_words: Vec<Word>,
    pub right_basis_words: Vec<Word>,
    pub structure_constants: Vec<Vec<Vector>>,
    pub unit_coords: Vector,
    pub form_bullet: Vector,
    pub form_circ: Vector,
    bullet: LinearRep,
    circ: LinearRep,
    two_sided: SpanBasis,
    left: SpanBasis,
    right: SpanBasis,
}

/// Minimizes both series and extracts bases, structure constants and forms.
pub fn syntactic_data(pair: &SeriesPair) -> SyntacticData {
    let bullet = minimize(&pair.bullet);
    let circ = minimize(&pair.circ);
    let letters = bullet.alphabet().size();

    let identity = two_sided_image(&bullet, &circ, &Word::empty());
    let algebra = greedy_word_basis(letters, identity, false, |v, s| right_multiply(&bullet, &circ, v, s));
    let left = reachable_basis(&bullet);
    let right = observable_basis(&bullet);

    let mut data = SyntacticData {
        d: algebra.words.len(),
        ell: left.words.len(),
        r: right.words.len(),
        algebra_basis_words: algebra.words,
        left_basis_words: left.words,
        right_basis_words: right.words,
        structure_constants: Vec::new(),
        unit_coords: Vec::new(),
        form_bullet: Vec::new(),
        form_circ: Vec::new(),
        bullet,
        circ,
        two_sided: algebra.span,
        left: left.span,
        right: right.span,
    };
    let words = data.algebra_basis_words.clone();
    data.structure_constants = words
        .iter()
        .map(|u| words.iter().map(|v| data.normal_form_word(&u.concat(v), Side::TwoSided)).collect())
        .collect();
    data.unit_coords = data.normal_form_word(&Word::empty(), Side::TwoSided);
    data.form_bullet = words.iter().map(|w| data.bullet.eval(w)).collect();
    data.form_circ = words.iter().map(|w| data.circ.eval(w)).collect();
    data
}

fn flatten(m: &Matrix) -> Vector {
    m.entries().to_vec()
}

fn two_sided_image(bullet: &LinearRep, circ: &LinearRep, w: &Word) -> Vector {
    let mut v = flatten(&bullet.psi_word(w));
    v.extend(flatten(&circ.psi_word(w)));
    v
}

fn right_multiply(bullet: &LinearRep, circ: &LinearRep, v: &[Scalar], s: usize) -> Vector {
    let (n1, n2) = (bullet.dim(), circ.dim());
    let block = |flat: &[Scalar], n: usize, p: &Matrix| {
        if n == 0 {
            return Vec::new();
        }
        let m = Matrix::from_rows_with_cols(flat.chunks(n).map(<[Scalar]>::to_vec).collect(), n).expect("square");
        flatten(&m.mul(p).expect("same size"))
    };
    let mut out = block(&v[..n1 * n1], n1, bullet.psi(s));
    out.extend(block(&v[n1 * n1..], n2, circ.psi(s)));
    out
}

impl SyntacticData {
    pub fn dim(&self, side: Side) -> usize {
        match side {
            Side::TwoSided => self.d,
            Side::Left => self.ell,
            Side::Right => self.r,
        }
    }

    pub fn basis_words(&self, side: Side) -> &[Word] {
        match side {
            Side::TwoSided => &self.algebra_basis_words,
            Side::Left => &self.left_basis_words,
            Side::Right => &self.right_basis_words,
        }
    }

    /// The minimized interval series.
    pub fn bullet(&self) -> &LinearRep {
        &self.bullet
    }

    /// The minimized circle series.
    pub fn circ(&self) -> &LinearRep {
        &self.circ
    }

    pub fn algebra(&self) -> AlgebraTable {
        AlgebraTable { dim: self.d, constants: self.structure_constants.clone() }
    }

    /// Coordinates of a word modulo the ideal on the given side.
    pub fn normal_form_word(&self, w: &Word, side: Side) -> Vector {
        let (span, image) = match side {
            Side::TwoSided => (&self.two_sided, two_sided_image(&self.bullet, &self.circ, w)),
            Side::Left => (&self.left, self.bullet.reach(w)),
            Side::Right => (&self.right, self.bullet.observe(w)),
        };
        span.coordinates(&image).expect("word images lie in the span of the basis images")
    }

    pub fn normal_form(&self, x: &Polynomial, side: Side) -> Vector {
        let mut out = zero_vector(self.dim(side));
        for (w, c) in x.terms() {
            for (o, y) in out.iter_mut().zip(self.normal_form_word(w, side)) {
                *o += c * y;
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let a = self.bullet.alphabet();
        let words = |ws: &[Word]| ws.iter().map(|w| a.format_word(w)).collect::<Vec<_>>();
        let vec = |v: &[Scalar]| v.iter().map(format_scalar).collect::<Vec<_>>();
        let constants: Vec<Vec<Vec<String>>> =
            self.structure_constants.iter().map(|row| row.iter().map(|c| vec(c)).collect()).collect();
        json!({
            "d": self.d,
            "ell": self.ell,
            "r": self.r,
            "algebra_basis": words(&self.algebra_basis_words),
            "left_basis": words(&self.left_basis_words),
            "right_basis": words(&self.right_basis_words),
            "structure_constants": constants,
            "unit": vec(&self.unit_coords),
            "form_bullet": vec(&self.form_bullet),
            "form_circ": vec(&self.form_circ),
        })
    }
}
