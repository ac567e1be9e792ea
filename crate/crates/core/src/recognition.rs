//! Decision procedures for recognizable series: Hankel-rank probing,
//! minimization, equivalence, symmetry and averaging.

use num_traits::{One, Zero};

use crate::exactlinalg::{dot, Matrix, Scalar, SpanBasis, Vector};
use crate::series::{rep_scale, rep_sum, LinearRep};
use crate::words::{words_up_to, Word};

/// Anything that can evaluate a series on words.
pub trait SeriesOracle {
    fn alphabet_size(&self) -> usize;
    fn value(&self, w: &Word) -> Scalar;
}

impl SeriesOracle for LinearRep {
    fn alphabet_size(&self) -> usize {
        self.alphabet().size()
    }

    fn value(&self, w: &Word) -> Scalar {
        self.eval(w)
    }
}

/// A black-box series given by a closure.
pub struct FnOracle<F> {
    pub letters: usize,
    pub eval: F,
}

impl<F: Fn(&Word) -> Scalar> SeriesOracle for FnOracle<F> {
    fn alphabet_size(&self) -> usize {
        self.letters
    }

    fn value(&self, w: &Word) -> Scalar {
        (self.eval)(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeStatus {
    Stabilized,
    ExceededCap(usize),
}

#[derive(Clone, Debug)]
pub struct HankelProbe {
    pub prefix_words: Vec<Word>,
    pub suffix_words: Vec<Word>,
    pub matrix: Matrix,
    pub rank: usize,
    pub status: ProbeStatus,
}

/// Grows the Hankel block over prefixes and suffixes of length ≤ L one whole
/// length-level at a time. Stops with `Stabilized` at the first L whose rank
/// equals the rank at L+1, or with `ExceededCap` once the rank passes `cap`.
///
/// For a series given by a representation the rank never exceeds its
/// dimension; for black-box oracles the answer is only a probe.
pub fn hankel_rank_probe(oracle: &dyn SeriesOracle, cap: usize) -> HankelProbe {
    assert!(cap >= 1, "Hankel cap must be at least 1");
    let r = oracle.alphabet_size();
    let block = |len: usize| {
        let words = words_up_to(r, len);
        let rows = words
            .iter()
            .map(|p| words.iter().map(|s| oracle.value(&p.concat(s))).collect())
            .collect();
        let m = Matrix::from_rows_with_cols(rows, words.len()).expect("square block");
        (words, m)
    };
    let (mut words, mut matrix) = block(0);
    let mut rank = matrix.rank();
    let mut len = 0;
    loop {
        if rank > cap {
            return HankelProbe {
                prefix_words: words.clone(),
                suffix_words: words,
                matrix,
                rank,
                status: ProbeStatus::ExceededCap(cap),
            };
        }
        // with no letters every level is the same block
        if r == 0 {
            break;
        }
        let (next_words, next_matrix) = block(len + 1);
        let next_rank = next_matrix.rank();
        if next_rank == rank {
            break;
        }
        words = next_words;
        matrix = next_matrix;
        rank = next_rank;
        len += 1;
    }
    HankelProbe { prefix_words: words.clone(), suffix_words: words, matrix, rank, status: ProbeStatus::Stabilized }
}

/// Length-lex-greedy spanning words for a linear action: starting from the
/// image of the empty word, candidate words of each new length are one-letter
/// extensions of the previously kept words, and a word is kept when its image
/// is independent of all images kept before it.
pub(crate) struct WordBasis {
    pub words: Vec<Word>,
    pub span: SpanBasis,
}

pub(crate) fn greedy_word_basis(
    letters: usize,
    start: Vector,
    extend_left: bool,
    step: impl Fn(&Vector, usize) -> Vector,
) -> WordBasis {
    let mut span = SpanBasis::new(start.len());
    let mut words = Vec::new();
    let mut level: Vec<(Word, Vector)> = Vec::new();
    if span.insert(start.clone()).is_some() {
        words.push(Word::empty());
        level.push((Word::empty(), start));
    }
    while !level.is_empty() {
        let mut candidates: Vec<(Word, Vector)> = Vec::new();
        for (w, v) in &level {
            for s in 0..letters {
                let nw = if extend_left { w.prepend(s) } else { w.append(s) };
                candidates.push((nw, step(v, s)));
            }
        }
        candidates.sort_by(|a, b| a.0.cmp(&b.0));
        level.clear();
        for (w, v) in candidates {
            if span.insert(v.clone()).is_some() {
                words.push(w.clone());
                level.push((w, v));
            }
        }
    }
    WordBasis { words, span }
}

/// Reachable words: images `ψ(w)λ`, grown by prepending letters.
pub(crate) fn reachable_basis(rep: &LinearRep) -> WordBasis {
    greedy_word_basis(rep.alphabet().size(), rep.lambda().to_vec(), true, |v, s| rep.psi(s).mul_vec(v))
}

/// Observable words: images `μψ(w)`, grown by appending letters.
pub(crate) fn observable_basis(rep: &LinearRep) -> WordBasis {
    greedy_word_basis(rep.alphabet().size(), rep.mu().to_vec(), false, |v, s| rep.psi(s).vec_mul(v))
}

/// Restricts to the reachable subspace, then quotients by the unobservable one.
pub fn minimize(rep: &LinearRep) -> LinearRep {
    let reach = reachable_basis(rep);
    let reached = restrict_to_reachable(rep, &reach.span);
    let obs = observable_basis(&reached);
    quotient_to_observable(&reached, &obs.span)
}

fn restrict_to_reachable(rep: &LinearRep, span: &SpanBasis) -> LinearRep {
    let k = span.len();
    let basis = span.originals();
    let coords = |v: &[Scalar]| span.coordinates(v).expect("reachable space is invariant");
    let lambda = coords(rep.lambda());
    let mu: Vector = basis.iter().map(|b| dot(rep.mu(), b)).collect();
    let psi = rep
        .psis()
        .iter()
        .map(|p| {
            let cols: Vec<Vector> = basis.iter().map(|b| coords(&p.mul_vec(b))).collect();
            Matrix::from_columns(&cols, k).expect("consistent shape")
        })
        .collect();
    LinearRep::new(rep.alphabet().clone(), lambda, psi, mu).expect("well-formed restriction")
}

fn quotient_to_observable(rep: &LinearRep, span: &SpanBasis) -> LinearRep {
    let k = span.len();
    let basis = span.originals();
    let coords = |v: &[Scalar]| span.coordinates(v).expect("observable space is invariant");
    let mu = coords(rep.mu());
    let lambda: Vector = basis.iter().map(|o| dot(o, rep.lambda())).collect();
    let psi = rep
        .psis()
        .iter()
        .map(|p| {
            // o_i ψ = Σ_j B[i][j] o_j, so the new matrix has rows B[i]
            let rows: Vec<Vector> = basis.iter().map(|o| coords(&p.vec_mul(o))).collect();
            Matrix::from_rows_with_cols(rows, k).expect("consistent shape")
        })
        .collect();
    LinearRep::new(rep.alphabet().clone(), lambda, psi, mu).expect("well-formed quotient")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// A length-lex first word on which the two series differ.
    pub witness: Option<Word>,
}

/// Decides `a(w) = b(w)` for all words.
pub fn equivalent(a: &LinearRep, b: &LinearRep) -> crate::error::Result<Equivalence> {
    let minus_one = -Scalar::one();
    let diff = rep_sum(a, &rep_scale(&minus_one, b))?;
    Ok(match first_nonzero_word(&diff) {
        None => Equivalence { equivalent: true, witness: None },
        Some(w) => Equivalence { equivalent: false, witness: Some(w) },
    })
}

/// The length-lex first word with nonzero value, if the series is nonzero.
///
/// Only extensions of words with independent reach vectors are explored: the
/// value on any other word is a combination of values on earlier words.
pub fn first_nonzero_word(rep: &LinearRep) -> Option<Word> {
    let mut span = SpanBasis::new(rep.dim());
    let mut level = vec![(Word::empty(), rep.lambda().to_vec())];
    while !level.is_empty() {
        let mut kept = Vec::new();
        for (w, v) in level {
            if !dot(rep.mu(), &v).is_zero() {
                return Some(w);
            }
            if span.insert(v.clone()).is_some() {
                kept.push((w, v));
            }
        }
        let mut next: Vec<(Word, Vector)> = Vec::new();
        for (w, v) in &kept {
            for s in 0..rep.alphabet().size() {
                next.push((w.prepend(s), rep.psi(s).mul_vec(v)));
            }
        }
        next.sort_by(|x, y| x.0.cmp(&y.0));
        level = next;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryCheck {
    pub symmetric: bool,
    /// Words `(u, v)` with `α(uv) ≠ α(vu)`.
    pub witness: Option<(Word, Word)>,
}

/// Decides `α(uv) = α(vu)` for all words `u, v`.
///
/// `ψ(u)` ranges over the algebra spanned by the images of words, so it is
/// enough to compare `μ MᵢMⱼ λ` and `μ MⱼMᵢ λ` over a word basis `{Mᵢ}` of
/// that algebra.
pub fn is_symmetric(rep: &LinearRep) -> SymmetryCheck {
    let algebra = matrix_algebra_basis(rep);
    let mats: Vec<&Matrix> = algebra.iter().map(|(_, m)| m).collect();
    for i in 0..mats.len() {
        for j in i..mats.len() {
            let ij = mats[i].mul(mats[j]).expect("same size");
            let ji = mats[j].mul(mats[i]).expect("same size");
            let lhs = dot(rep.mu(), &ij.mul_vec(rep.lambda()));
            let rhs = dot(rep.mu(), &ji.mul_vec(rep.lambda()));
            if lhs != rhs {
                return SymmetryCheck {
                    symmetric: false,
                    witness: Some((algebra[i].0.clone(), algebra[j].0.clone())),
                };
            }
        }
    }
    SymmetryCheck { symmetric: true, witness: None }
}

/// Length-lex greedy word basis of the unital algebra generated by the ψ(s).
pub(crate) fn matrix_algebra_basis(rep: &LinearRep) -> Vec<(Word, Matrix)> {
    let n = rep.dim();
    let flat = |m: &Matrix| m.entries().to_vec();
    let unflat = |v: &Vector| Matrix::from_rows_with_cols(v.chunks(n.max(1)).map(<[Scalar]>::to_vec).collect(), n);
    let basis = greedy_word_basis(rep.alphabet().size(), flat(&Matrix::identity(n)), false, |v, s| {
        let m = if n == 0 { Matrix::zeros(0, 0) } else { unflat(v).expect("square") };
        flat(&m.mul(rep.psi(s)).expect("same size"))
    });
    basis
        .words
        .into_iter()
        .zip(basis.span.into_originals())
        .map(|(w, v)| (w, if n == 0 { Matrix::zeros(0, 0) } else { unflat(&v).expect("square") }))
        .collect()
}

/// `aver(α)(w) = Σ_{uv=w, v≠∅} α(vu)`, and `aver(α)(∅) = α(∅)`.
pub fn aver_eval(rep: &LinearRep, w: &Word) -> Scalar {
    if w.is_empty() {
        return rep.constant_term();
    }
    (0..w.len()).map(|k| rep.eval(&w.rotate(k))).sum()
}

/// A representation of `aver(α)`.
///
/// With `C = λμ`, `α(vu) = tr(ψ(u) C ψ(v))`. Reading right to left, the state
/// is a pair of n×n matrices: before and after `C` has been inserted, where the
/// insertion happens together with a letter so that `v` is never empty. One
/// extra state carries `α(∅)` on the empty word. The result is minimized.
pub fn average(rep: &LinearRep) -> LinearRep {
    let n = rep.dim();
    let nn = n * n;
    let dim = 2 * nn + 1;
    let c = outer(rep.lambda(), rep.mu());
    // vec(Y) is row-major; left multiplication Y ↦ A·Y as an nn×nn matrix
    let left_mult = |a: &Matrix| {
        let mut l = Matrix::zeros(nn, nn);
        for i in 0..n {
            for k in 0..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..n {
                    l[(i * n + j, k * n + j)] = a[(i, k)].clone();
                }
            }
        }
        l
    };
    let psi = rep
        .psis()
        .iter()
        .map(|p| {
            let mut m = Matrix::zeros(dim, dim);
            m.set_block(0, 0, &left_mult(p));
            m.set_block(nn, 0, &left_mult(&c.mul(p).expect("square")));
            m.set_block(nn, nn, &left_mult(p));
            m
        })
        .collect();
    let mut lambda = vec![Scalar::zero(); dim];
    for i in 0..n {
        lambda[i * n + i] = Scalar::one();
    }
    lambda[2 * nn] = rep.constant_term();
    let mut mu = vec![Scalar::zero(); dim];
    for i in 0..n {
        mu[nn + i * n + i] = Scalar::one();
    }
    mu[2 * nn] = Scalar::one();
    let raw = LinearRep::new(rep.alphabet().clone(), lambda, psi, mu).expect("well-formed average");
    minimize(&raw)
}

fn outer(col: &[Scalar], row: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(col.len(), row.len());
    for (i, a) in col.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            m[(i, j)] = a * b;
        }
    }
    m
}
