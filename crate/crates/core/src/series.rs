//! Noncommutative power series given by linear representations or rational
//! expressions.
//!
//! A [`LinearRep`] `(λ, ψ, μ)` of dimension `n` realizes the series
//! `α(t₁…tₘ) = μ · ψ(t₁) ⋯ ψ(tₘ) · λ`. The same left-to-right factor order is
//! used by the cobordism calculus when labels are concatenated along a strand,
//! so that `cob(u) ∘ cob(v) = cob(uv)` and `ψ(uv) = ψ(u)ψ(v)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactlinalg::{dot, format_scalar, parse_scalar, unit_vector, zero_vector, Matrix, Scalar, Vector};
use crate::words::{Alphabet, Word};

/// Linear representation `(λ, ψ, μ)` of a recognizable series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRep {
    alphabet: Alphabet,
    lambda: Vector,
    psi: Vec<Matrix>,
    mu: Vector,
}

impl LinearRep {
    pub fn new(alphabet: Alphabet, lambda: Vector, psi: Vec<Matrix>, mu: Vector) -> Result<Self> {
        let n = lambda.len();
        if mu.len() != n {
            return Err(Error::DimensionMismatch(format!("λ has length {n}, μ has length {}", mu.len())));
        }
        if psi.len() != alphabet.size() {
            return Err(Error::AlphabetMismatch(format!(
                "{} transition matrices for {} letters",
                psi.len(),
                alphabet.size()
            )));
        }
        for (i, m) in psi.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "ψ({}) is {}x{}, expected {n}x{n}",
                    alphabet.name(i),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(LinearRep { alphabet, lambda, psi, mu })
    }

    /// The zero series, represented in dimension 0.
    pub fn zero(alphabet: &Alphabet) -> Self {
        let psi = vec![Matrix::zeros(0, 0); alphabet.size()];
        LinearRep { alphabet: alphabet.clone(), lambda: Vec::new(), psi, mu: Vec::new() }
    }

    /// The series `w ↦ α(reverse(w))`.
    pub fn reversed(&self) -> LinearRep {
        LinearRep {
            alphabet: self.alphabet.clone(),
            lambda: self.mu.clone(),
            psi: self.psi.iter().map(Matrix::transpose).collect(),
            mu: self.lambda.clone(),
        }
    }

    /// The characteristic series of the empty word scaled by `c`.
    pub fn constant(alphabet: &Alphabet, c: Scalar) -> Self {
        let psi = vec![Matrix::zeros(1, 1); alphabet.size()];
        LinearRep { alphabet: alphabet.clone(), lambda: vec![c], psi, mu: vec![Scalar::one()] }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Self::constant(alphabet, Scalar::one())
    }

    /// The characteristic series of a single letter.
    pub fn letter(alphabet: &Alphabet, s: usize) -> Result<Self> {
        if s >= alphabet.size() {
            return Err(Error::AlphabetMismatch(format!("letter index {s} out of range")));
        }
        let mut psi = vec![Matrix::zeros(2, 2); alphabet.size()];
        psi[s][(1, 0)] = Scalar::one();
        Ok(LinearRep { alphabet: alphabet.clone(), lambda: unit_vector(2, 0), psi, mu: unit_vector(2, 1) })
    }

    /// The characteristic series of a single word.
    pub fn word(alphabet: &Alphabet, w: &Word) -> Result<Self> {
        alphabet.check(w)?;
        let n = w.len() + 1;
        let mut psi = vec![Matrix::zeros(n, n); alphabet.size()];
        // state i means "the last i letters have been read"; letters act right to left
        for (k, &s) in w.letters().iter().rev().enumerate() {
            psi[s][(k + 1, k)] = Scalar::one();
        }
        Ok(LinearRep { alphabet: alphabet.clone(), lambda: unit_vector(n, 0), psi, mu: unit_vector(n, n - 1) })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn mu(&self) -> &[Scalar] {
        &self.mu
    }

    pub fn psi(&self, s: usize) -> &Matrix {
        &self.psi[s]
    }

    pub fn psis(&self) -> &[Matrix] {
        &self.psi
    }

    /// `ψ(w)`, with `ψ(∅)` the identity.
    pub fn psi_word(&self, w: &Word) -> Matrix {
        let mut m = Matrix::identity(self.dim());
        for &s in w.letters() {
            m = m.mul(&self.psi[s]).expect("square matrices of equal size");
        }
        m
    }

    /// `ψ(w)·λ`
    pub fn reach(&self, w: &Word) -> Vector {
        let mut v = self.lambda.clone();
        for &s in w.letters().iter().rev() {
            v = self.psi[s].mul_vec(&v);
        }
        v
    }

    /// `μ·ψ(w)`
    pub fn observe(&self, w: &Word) -> Vector {
        let mut v = self.mu.clone();
        for &s in w.letters() {
            v = self.psi[s].vec_mul(&v);
        }
        v
    }

    pub fn eval(&self, w: &Word) -> Scalar {
        dot(&self.mu, &self.reach(w))
    }

    pub fn constant_term(&self) -> Scalar {
        dot(&self.mu, &self.lambda)
    }

    pub(crate) fn same_alphabet(&self, other: &LinearRep) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.letters(),
                other.alphabet.letters()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let psi: serde_json::Map<String, Value> = self
            .alphabet
            .letters()
            .iter()
            .zip(&self.psi)
            .map(|(name, m)| (name.clone(), matrix_to_json(m)))
            .collect();
        serde_json::json!({
            "alphabet": self.alphabet.letters(),
            "dim": self.dim(),
            "lambda": vector_to_json(&self.lambda),
            "mu": vector_to_json(&self.mu),
            "psi": psi,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: RepJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let alphabet = Alphabet::new(raw.alphabet)?;
        let lambda = parse_vector(&raw.lambda)?;
        let mu = parse_vector(&raw.mu)?;
        if lambda.len() != raw.dim {
            return Err(Error::DimensionMismatch(format!("dim {} but λ has length {}", raw.dim, lambda.len())));
        }
        for k in raw.psi.keys() {
            alphabet.index_of(k)?;
        }
        let mut psi = Vec::with_capacity(alphabet.size());
        for name in alphabet.letters() {
            let rows = raw
                .psi
                .get(name)
                .ok_or_else(|| Error::Parse(format!("missing ψ for letter `{name}`")))?;
            let rows = rows.iter().map(|r| parse_vector(r)).collect::<Result<Vec<_>>>()?;
            psi.push(Matrix::from_rows_with_cols(rows, raw.dim)?);
        }
        LinearRep::new(alphabet, lambda, psi, mu)
    }
}

#[derive(Deserialize)]
struct RepJson {
    alphabet: Vec<String>,
    dim: usize,
    lambda: Vec<String>,
    mu: Vec<String>,
    psi: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_scalar(x))).collect())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn parse_vector(v: &[String]) -> Result<Vector> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

pub fn eval_rep(rep: &LinearRep, w: &Word) -> Scalar {
    rep.eval(w)
}

/// Direct sum: `(a + b)(w) = a(w) + b(w)`.
pub fn rep_sum(a: &LinearRep, b: &LinearRep) -> Result<LinearRep> {
    a.same_alphabet(b)?;
    let lambda = [a.lambda.clone(), b.lambda.clone()].concat();
    let mu = [a.mu.clone(), b.mu.clone()].concat();
    let psi = a.psi.iter().zip(&b.psi).map(|(x, y)| x.direct_sum(y)).collect();
    LinearRep::new(a.alphabet.clone(), lambda, psi, mu)
}

pub fn rep_scale(c: &Scalar, a: &LinearRep) -> LinearRep {
    let mut out = a.clone();
    for m in &mut out.mu {
        *m *= c;
    }
    out
}

/// Cauchy product `(ab)(w) = Σ_{w=w₁w₂} a(w₁) b(w₂)`.
///
/// The state is `[β-part; α-part]`; letters are consumed right to left, first
/// by `b`, with a jump `λ_a μ_b` into `a` after any suffix.
pub fn rep_product(a: &LinearRep, b: &LinearRep) -> Result<LinearRep> {
    a.same_alphabet(b)?;
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    // λ_a μ_b as an na×nb matrix
    let mut jump = Matrix::zeros(na, nb);
    for i in 0..na {
        for j in 0..nb {
            jump[(i, j)] = &a.lambda[i] * &b.mu[j];
        }
    }
    let mut psi = Vec::with_capacity(a.psi.len());
    for (pa, pb) in a.psi.iter().zip(&b.psi) {
        let mut m = Matrix::zeros(n, n);
        m.set_block(0, 0, pb);
        m.set_block(nb, 0, &jump.mul(pb)?);
        m.set_block(nb, nb, pa);
        psi.push(m);
    }
    let b0 = b.constant_term();
    let mut lambda = b.lambda.clone();
    lambda.extend(a.lambda.iter().map(|x| x * &b0));
    let mut mu = zero_vector(nb);
    mu.extend(a.mu.iter().cloned());
    LinearRep::new(a.alphabet.clone(), lambda, psi, mu)
}

/// Kleene plus `a⁺ = a + a² + …` of a proper series.
pub fn rep_kleene_plus(a: &LinearRep) -> Result<LinearRep> {
    let c = a.constant_term();
    if !c.is_zero() {
        return Err(Error::ImproperKleene(format_scalar(&c)));
    }
    let n = a.dim();
    let mut restart = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            restart[(i, j)] = &a.lambda[i] * &a.mu[j];
        }
    }
    let psi = a
        .psi
        .iter()
        .map(|p| p.add(&restart.mul(p)?))
        .collect::<Result<Vec<_>>>()?;
    LinearRep::new(a.alphabet.clone(), a.lambda.clone(), psi, a.mu.clone())
}

/// Rational expressions over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalExpr {
    Zero,
    One,
    Letter(usize),
    Scale(Scalar, Box<RationalExpr>),
    Sum(Box<RationalExpr>, Box<RationalExpr>),
    Product(Box<RationalExpr>, Box<RationalExpr>),
    KleenePlus(Box<RationalExpr>),
}

impl RationalExpr {
    pub fn letter(s: usize) -> Self {
        RationalExpr::Letter(s)
    }

    pub fn scale(c: Scalar, e: RationalExpr) -> Self {
        RationalExpr::Scale(c, Box::new(e))
    }

    pub fn sum(a: RationalExpr, b: RationalExpr) -> Self {
        RationalExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: RationalExpr, b: RationalExpr) -> Self {
        RationalExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn plus(a: RationalExpr) -> Self {
        RationalExpr::KleenePlus(Box::new(a))
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        use serde_json::json;
        match self {
            RationalExpr::Zero => json!({"op": "zero"}),
            RationalExpr::One => json!({"op": "one"}),
            RationalExpr::Letter(s) => json!({"op": "letter", "letter": alphabet.name(*s)}),
            RationalExpr::Scale(c, e) => {
                json!({"op": "scale", "by": format_scalar(c), "expr": e.to_json(alphabet)})
            }
            RationalExpr::Sum(a, b) => {
                json!({"op": "sum", "left": a.to_json(alphabet), "right": b.to_json(alphabet)})
            }
            RationalExpr::Product(a, b) => {
                json!({"op": "product", "left": a.to_json(alphabet), "right": b.to_json(alphabet)})
            }
            RationalExpr::KleenePlus(e) => json!({"op": "plus", "expr": e.to_json(alphabet)}),
        }
    }

    pub fn from_json(v: &Value, alphabet: &Alphabet) -> Result<Self> {
        let raw: ExprJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        raw.resolve(alphabet)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum ExprJson {
    Zero,
    One,
    Letter { letter: String },
    Scale { by: String, expr: Box<ExprJson> },
    Sum { left: Box<ExprJson>, right: Box<ExprJson> },
    Product { left: Box<ExprJson>, right: Box<ExprJson> },
    Plus { expr: Box<ExprJson> },
}

impl ExprJson {
    fn resolve(self, a: &Alphabet) -> Result<RationalExpr> {
        Ok(match self {
            ExprJson::Zero => RationalExpr::Zero,
            ExprJson::One => RationalExpr::One,
            ExprJson::Letter { letter } => RationalExpr::Letter(a.index_of(&letter)?),
            ExprJson::Scale { by, expr } => RationalExpr::scale(parse_scalar(&by)?, expr.resolve(a)?),
            ExprJson::Sum { left, right } => RationalExpr::sum(left.resolve(a)?, right.resolve(a)?),
            ExprJson::Product { left, right } => {
                RationalExpr::product(left.resolve(a)?, right.resolve(a)?)
            }
            ExprJson::Plus { expr } => RationalExpr::plus(expr.resolve(a)?),
        })
    }
}

/// Compiles a rational expression into a linear representation.
pub fn expr_to_rep(e: &RationalExpr, alphabet: &Alphabet) -> Result<LinearRep> {
    match e {
        RationalExpr::Zero => Ok(LinearRep::zero(alphabet)),
        RationalExpr::One => Ok(LinearRep::one(alphabet)),
        RationalExpr::Letter(s) => LinearRep::letter(alphabet, *s),
        RationalExpr::Scale(c, x) => Ok(rep_scale(c, &expr_to_rep(x, alphabet)?)),
        RationalExpr::Sum(x, y) => rep_sum(&expr_to_rep(x, alphabet)?, &expr_to_rep(y, alphabet)?),
        RationalExpr::Product(x, y) => {
            rep_product(&expr_to_rep(x, alphabet)?, &expr_to_rep(y, alphabet)?)
        }
        RationalExpr::KleenePlus(x) => rep_kleene_plus(&expr_to_rep(x, alphabet)?),
    }
}

/// An evaluation of floating components: `bullet` on intervals, `circ` on circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPair {
    pub bullet: LinearRep,
    pub circ: LinearRep,
}

impl SeriesPair {
    /// Validates the alphabets and that `circ` is symmetric.
    pub fn new(bullet: LinearRep, circ: LinearRep) -> Result<Self> {
        bullet.same_alphabet(&circ)?;
        let check = crate::recognition::is_symmetric(&circ);
        if let Some((u, v)) = check.witness {
            let a = circ.alphabet();
            return Err(Error::NotSymmetric { u: a.format_word(&u), v: a.format_word(&v) });
        }
        Ok(SeriesPair { bullet, circ })
    }

    /// The pair `(0, circ)` used for cobordisms without floating endpoints.
    pub fn circ_only(circ: LinearRep) -> Result<Self> {
        let zero = LinearRep::zero(circ.alphabet());
        Self::new(zero, circ)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.bullet.alphabet()
    }

    /// Both series read backwards; the involution intertwines a pair with this one.
    pub fn reversed(&self) -> SeriesPair {
        SeriesPair { bullet: self.bullet.reversed(), circ: self.circ.reversed() }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({"bullet": self.bullet.to_json(), "circ": self.circ.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("pair is missing `{k}`")));
        SeriesPair::new(LinearRep::from_json(get("bullet")?)?, LinearRep::from_json(get("circ")?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::int;
    use crate::words::words_up_to;

    fn one_letter() -> Alphabet {
        Alphabet::new(["s"]).unwrap()
    }

    pub(crate) fn geometric(c: i64) -> LinearRep {
        LinearRep::new(one_letter(), vec![int(1)], vec![Matrix::from_i64(&[&[c]])], vec![int(1)]).unwrap()
    }

    #[test]
    fn geometric_eval() {
        let g = geometric(2);
        assert_eq!(g.eval(&Word(vec![0, 0, 0])), int(8));
        assert_eq!(g.eval(&Word::empty()), int(1));
    }

    #[test]
    fn m2_elementary_products() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let e12 = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        let rep = LinearRep::new(a, unit_vector(2, 0), vec![e12, e21], unit_vector(2, 0)).unwrap();
        assert_eq!(rep.eval(&Word(vec![0, 1])), int(1));
        assert_eq!(rep.eval(&Word(vec![0])), int(0));
        assert_eq!(rep.eval(&Word::empty()), int(1));
    }

    #[test]
    fn word_characteristic_series() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let target = Word(vec![0, 1, 1]);
        let rep = LinearRep::word(&a, &target).unwrap();
        for w in words_up_to(2, 4) {
            let expect = if w == target { int(1) } else { int(0) };
            assert_eq!(rep.eval(&w), expect, "{w:?}");
        }
    }

    #[test]
    fn improper_kleene_is_rejected() {
        let a = one_letter();
        assert!(matches!(
            expr_to_rep(&RationalExpr::plus(RationalExpr::One), &a),
            Err(Error::ImproperKleene(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let g = geometric(3);
        let back = LinearRep::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let z = LinearRep::zero(&Alphabet::new(["x", "y"]).unwrap());
        assert_eq!(LinearRep::from_json(&z.to_json()).unwrap(), z);
    }

    #[test]
    fn malformed_json_is_rejected() {
        let bad = serde_json::json!({"alphabet": ["s"], "dim": 1, "lambda": ["1"], "mu": ["1"], "psi": {}});
        assert!(LinearRep::from_json(&bad).is_err());
        let bad = serde_json::json!({"alphabet": ["s"], "dim": 1, "lambda": ["1"], "mu": ["1"], "psi": {"s": [["1", "2"]]}});
        assert!(LinearRep::from_json(&bad).is_err());
    }

    #[test]
    fn expr_json_roundtrip() {
        let a = Alphabet::new(["s", "t"]).unwrap();
        let e = RationalExpr::plus(RationalExpr::scale(int(2), RationalExpr::sum(
            RationalExpr::letter(0),
            RationalExpr::product(RationalExpr::letter(1), RationalExpr::letter(0)),
        )));
        assert_eq!(RationalExpr::from_json(&e.to_json(&a), &a).unwrap(), e);
    }
}
