//! Alphabets, words of the free monoid S*, cyclic words, and noncommutative
//! polynomials k⟨S⟩.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlinalg::Scalar;

/// Ordered set of letter names. Letter order fixes the length-lex order on words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l == "e" || l.contains('.') || l.contains(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("letter name `{l}` is not allowed")));
            }
            if letters[..i].contains(l) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{l}`")));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn empty() -> Self {
        Alphabet::default()
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, i: usize) -> &str {
        &self.letters[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.letters
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Parses dot-separated letters; the empty word is spelled `e`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(Word::empty());
        }
        t.split('.').map(|l| self.index_of(l.trim())).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        w.0.iter().map(|&i| self.letters[i].as_str()).collect::<Vec<_>>().join(".")
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&i| i >= self.size()) {
            Some(i) => Err(Error::AlphabetMismatch(format!(
                "letter index {i} outside an alphabet of size {}",
                self.size()
            ))),
            None => Ok(()),
        }
    }
}

/// A word over an alphabet, stored as letter indices. Ordered length-lex.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prepend(&self, letter: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, letter: usize) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    /// Splits as `(u, v)` with `u` of length `k`.
    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec()))
    }

    /// The rotation `vu` of `w = uv` with `|u| = k`.
    pub fn rotate(&self, k: usize) -> Word {
        let (u, v) = self.split_at(k);
        v.concat(&u)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

pub fn concat(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

pub fn reverse(w: &Word) -> Word {
    w.reverse()
}

/// A conjugacy class of words, represented by its minimal rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn representative(&self) -> &Word {
        &self.0
    }

    pub fn reverse(&self) -> CyclicWord {
        cyclic_normalize(&self.0.reverse())
    }
}

pub fn cyclic_normalize(w: &Word) -> CyclicWord {
    let best = (1..w.len().max(1)).map(|k| w.rotate(k)).fold(w.clone(), |best, r| best.min(r));
    CyclicWord(best)
}

/// All words of length exactly `len` over `r` letters, in lex order.
pub fn words_of_length(r: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * r);
        for w in &out {
            for s in 0..r {
                next.push(w.append(s));
            }
        }
        out = next;
    }
    out
}

/// All words of length ≤ `max_len` over `r` letters, in length-lex order.
pub fn words_up_to(r: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        if r == 0 && len > 0 {
            break;
        }
        out.extend(words_of_length(r, len));
    }
    out
}

/// A noncommutative polynomial: a finite formal k-combination of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(Scalar::from_integer(1.into()), w)
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(c, w);
        p
    }

    pub fn add_term(&mut self, c: Scalar, w: Word) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, x) in &self.terms {
            out.add_term(x * c, w.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(a * b, u.concat(v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&w(&[0]), &w(&[1])), w(&[0, 1]));
        assert_eq!(concat(&Word::empty(), &w(&[1, 0])), w(&[1, 0]));
        assert_eq!(concat(&w(&[0, 1]), &w(&[0])), w(&[0, 1, 0]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&w(&[0, 1, 2])), w(&[2, 1, 0]));
        assert_eq!(reverse(&Word::empty()), Word::empty());
        assert_eq!(reverse(&w(&[0, 0])), w(&[0, 0]));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_normalize(&w(&[1, 0])).representative(), &w(&[0, 1]));
        assert_eq!(cyclic_normalize(&Word::empty()).representative(), &Word::empty());
        // s1s3s2 against its rotations s3s2s1 and s2s1s3
        let rotations = [w(&[0, 2, 1]), w(&[2, 1, 0]), w(&[1, 0, 2])];
        let min = rotations.iter().min().unwrap().clone();
        assert_eq!(min, w(&[0, 2, 1]));
        for r in &rotations {
            assert_eq!(cyclic_normalize(r).representative(), &min);
        }
    }

    #[test]
    fn conjugation_invariance_exhaustive() {
        let all = words_up_to(2, 4);
        for u in &all {
            for v in &all {
                if u.len() + v.len() <= 4 {
                    assert_eq!(cyclic_normalize(&u.concat(v)), cyclic_normalize(&v.concat(u)));
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        for l in 0..5 {
            assert_eq!(words_up_to(2, l).len(), (2usize.pow(l as u32 + 1) - 1));
            assert_eq!(words_up_to(3, l).len(), (3usize.pow(l as u32 + 1) - 1) / 2);
            assert_eq!(words_up_to(1, l).len(), l + 1);
        }
        assert_eq!(words_up_to(0, 3), vec![Word::empty()]);
        let ws = words_up_to(2, 3);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn word_syntax() {
        let a = Alphabet::new(["s1", "s2"]).unwrap();
        assert_eq!(a.parse_word("s1.s2.s1").unwrap(), w(&[0, 1, 0]));
        assert_eq!(a.parse_word("e").unwrap(), Word::empty());
        assert_eq!(a.format_word(&w(&[1, 0])), "s2.s1");
        assert_eq!(a.format_word(&Word::empty()), "e");
        assert!(a.parse_word("s3").is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["e"]).is_err());
    }

    #[test]
    fn polynomial_arithmetic() {
        let one = Scalar::from_integer(1.into());
        let p = Polynomial::word(w(&[0])).add(&Polynomial::term(-one.clone(), w(&[1])));
        let sq = p.mul(&p);
        assert_eq!(sq.terms().count(), 4);
        assert!(p.add(&p.scale(&-one)).is_zero());
    }
}
