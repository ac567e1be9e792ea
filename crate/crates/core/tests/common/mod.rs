//! Helpers shared by the integration tests: seeded random objects and
//! brute-force oracles that do not reuse the library's algorithms.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use serialcob::cobordism::{Arc, Diagram, Mode, Morphism, Sign, SignSeq};
use serialcob::exactlinalg::{int, Matrix, Scalar};
use serialcob::fixtures;
use serialcob::series::{LinearRep, SeriesPair};
use serialcob::skein::enumerate_matchings;
use serialcob::words::{Alphabet, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn two_letters() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

/// Small integer entries, about half of them zero.
pub fn random_rep(rng: &mut ChaCha8Rng, alphabet: &Alphabet, dim: usize) -> LinearRep {
    let entry = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { int(0) } else { int(rng.gen_range(-2..=2)) };
    let lambda = (0..dim).map(|_| entry(rng)).collect();
    let mu = (0..dim).map(|_| entry(rng)).collect();
    let psi = (0..alphabet.size())
        .map(|_| {
            let rows = (0..dim).map(|_| (0..dim).map(|_| entry(rng)).collect()).collect();
            Matrix::from_rows_with_cols(rows, dim).unwrap()
        })
        .collect();
    LinearRep::new(alphabet.clone(), lambda, psi, mu).unwrap()
}

/// As [`random_rep`] with the dimension drawn from `dims`.
pub fn random_rep_in(rng: &mut ChaCha8Rng, alphabet: &Alphabet, dims: std::ops::RangeInclusive<usize>) -> LinearRep {
    let dim = rng.gen_range(dims);
    random_rep(rng, alphabet, dim)
}

pub fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Word {
    if letters == 0 {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| rng.gen_range(0..letters)).collect())
}

pub fn random_object(rng: &mut ChaCha8Rng, max_len: usize) -> SignSeq {
    let len = rng.gen_range(0..=max_len);
    SignSeq((0..len).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect())
}

/// An object with the given weight difference to `other`, so that
/// floating-free homs exist between them.
pub fn random_object_like(rng: &mut ChaCha8Rng, other: &SignSeq, max_len: usize) -> SignSeq {
    loop {
        let o = random_object(rng, max_len);
        if (o.len() + other.len()).is_multiple_of(2) && o.weight() == other.weight() {
            return o;
        }
    }
}

/// A uniformly chosen shape with random labels, or `None` if the hom is empty.
pub fn random_diagram(
    rng: &mut ChaCha8Rng,
    source: &SignSeq,
    target: &SignSeq,
    mode: Mode,
    letters: usize,
    max_label: usize,
) -> Option<Diagram> {
    let shapes = enumerate_matchings(source, target, mode);
    let shape = shapes.choose(rng)?;
    let arcs = shape.arcs().iter().map(|a| Arc::new(a.tail, a.head, random_word(rng, letters, max_label))).collect();
    Some(Diagram::new(source.clone(), target.clone(), arcs).unwrap())
}

/// A combination of up to three random diagrams with small coefficients.
pub fn random_morphism(
    rng: &mut ChaCha8Rng,
    source: &SignSeq,
    target: &SignSeq,
    mode: Mode,
    letters: usize,
    max_label: usize,
) -> Morphism {
    let mut m = Morphism::zero(source.clone(), target.clone());
    for _ in 0..rng.gen_range(1..=3) {
        if let Some(d) = random_diagram(rng, source, target, mode, letters, max_label) {
            m.add_term(int(rng.gen_range(-3..=3)), d);
        }
    }
    m
}

/// A pair over `{a, b}` whose interval series is `x₁₁` and circle series the trace on M₂.
pub fn m2_mixed_pair() -> SeriesPair {
    SeriesPair::new(fixtures::m2_x11(), fixtures::m2_trace()).unwrap()
}

/// Words of length ≤ `max_len` by direct counting in base `letters`.
pub fn all_words(letters: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    if letters == 0 {
        return out;
    }
    for len in 1..=max_len {
        for code in 0..letters.pow(len as u32) {
            let mut c = code;
            let mut v = vec![0; len];
            for slot in v.iter_mut().rev() {
                *slot = c % letters;
                c /= letters;
            }
            out.push(Word(v));
        }
    }
    out
}

/// `Σ_{uv=w, v≠∅} α(vu)` plus `α(∅)` on the empty word, by explicit splitting.
pub fn aver_oracle(alpha: &dyn Fn(&Word) -> Scalar, w: &Word) -> Scalar {
    if w.is_empty() {
        return alpha(w);
    }
    let l = w.letters();
    (0..l.len())
        .map(|k| {
            let mut vu = l[k..].to_vec();
            vu.extend_from_slice(&l[..k]);
            alpha(&Word(vu))
        })
        .sum()
}

/// Rank by plain fraction Gaussian elimination on a copy, written out here
/// so that it does not share code with the library.
pub fn oracle_rank(rows: &[Vec<Scalar>]) -> usize {
    use num_traits::Zero;
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, p) in m[r][c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Counts partial matchings of tails with heads by trying every map from
/// tails to heads-or-nothing and keeping the injective ones.
pub fn oracle_matching_count(source: &SignSeq, target: &SignSeq, mode: Mode) -> usize {
    let heads = source.signs().iter().filter(|s| **s == Sign::Minus).count()
        + target.signs().iter().filter(|s| **s == Sign::Plus).count();
    let tails = source.len() + target.len() - heads;
    let choices = heads + 1;
    let mut count = 0;
    for code in 0..choices.pow(tails as u32) {
        let mut c = code;
        let mut used = vec![false; heads];
        let mut ok = true;
        let mut matched = 0;
        for _ in 0..tails {
            let pick = c % choices;
            c /= choices;
            if pick < heads {
                if used[pick] {
                    ok = false;
                    break;
                }
                used[pick] = true;
                matched += 1;
            }
        }
        if ok && (mode == Mode::WithFloating || (matched == heads && matched == tails)) {
            count += 1;
        }
    }
    count
}

/// All sign sequences of total length `len` split as `(ε, ε′)`.
pub fn object_pairs_of_total_length(len: usize) -> Vec<(SignSeq, SignSeq)> {
    let mut out = Vec::new();
    for k in 0..=len {
        for a in SignSeq::all_of_length(k) {
            for b in SignSeq::all_of_length(len - k) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}
