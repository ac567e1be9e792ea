//! The skein category: cobordisms modulo evaluation of closed components and
//! the syntactic ideals on strands.
//!
//! A basis element of `Hom(ε, ε′)` is an undecorated shape together with one
//! decoration index per arc. Arcs with two boundary endpoints are decorated by
//! the algebra basis, arcs with a floating tail by the left quotient basis and
//! arcs with a floating head by the right quotient basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cobordism::{close_trace_diagram, compose_diagrams, Arc, ComponentKind, Diagram, Mode, Morphism, Point, Sign, SignSeq};
use crate::error::{Error, Result};
use crate::exactlinalg::{format_scalar, zero_vector, Scalar, Vector};
use crate::series::SeriesPair;
use crate::syntactic::{syntactic_data, AlgebraTable, Side, SyntacticData};
use crate::words::Word;

/// Boundary points of `ε → ε′` split into heads and tails, each in point order.
pub fn heads_and_tails(source: &SignSeq, target: &SignSeq) -> (Vec<Point>, Vec<Point>) {
    let mut points: Vec<(Point, bool)> = Vec::new();
    for (i, s) in source.signs().iter().enumerate() {
        points.push((Point::Src(i), *s == Sign::Minus));
    }
    for (i, s) in target.signs().iter().enumerate() {
        points.push((Point::Tgt(i), *s == Sign::Plus));
    }
    let heads = points.iter().filter(|p| p.1).map(|p| p.0).collect();
    let tails = points.iter().filter(|p| !p.1).map(|p| p.0).collect();
    (heads, tails)
}

/// All undecorated diagrams `ε → ε′`, sorted. Without floating endpoints only
/// perfect matchings of tails with heads are produced.
pub fn enumerate_matchings(source: &SignSeq, target: &SignSeq, mode: Mode) -> Vec<Diagram> {
    let (heads, tails) = heads_and_tails(source, target);
    if mode == Mode::NoFloating && heads.len() != tails.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used = vec![false; heads.len()];
    let mut arcs = Vec::new();
    fn rec(
        k: usize,
        tails: &[Point],
        heads: &[Point],
        used: &mut [bool],
        arcs: &mut Vec<Arc>,
        mode: Mode,
        emit: &mut dyn FnMut(&[Arc], &[bool]),
    ) {
        if k == tails.len() {
            emit(arcs, used);
            return;
        }
        for h in 0..heads.len() {
            if used[h] {
                continue;
            }
            used[h] = true;
            arcs.push(Arc::new(Some(tails[k]), Some(heads[h]), Word::empty()));
            rec(k + 1, tails, heads, used, arcs, mode, emit);
            arcs.pop();
            used[h] = false;
        }
        if mode == Mode::WithFloating {
            arcs.push(Arc::new(Some(tails[k]), None, Word::empty()));
            rec(k + 1, tails, heads, used, arcs, mode, emit);
            arcs.pop();
        }
    }
    let mut emit = |arcs: &[Arc], used: &[bool]| {
        let mut all = arcs.to_vec();
        for (h, u) in used.iter().enumerate() {
            if !u {
                if mode == Mode::NoFloating {
                    return;
                }
                all.push(Arc::new(None, Some(heads[h]), Word::empty()));
            }
        }
        out.push(Diagram::new(source.clone(), target.clone(), all).expect("matching is a diagram"));
    };
    rec(0, &tails, &heads, &mut used, &mut arcs, mode, &mut emit);
    out.sort();
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form dimension of the skein hom space.
pub fn hom_dim_formula(source: &SignSeq, target: &SignSeq, d: usize, ell: usize, r: usize, mode: Mode) -> u128 {
    let (heads, tails) = heads_and_tails(source, target);
    let (p, q) = (heads.len() as u128, tails.len() as u128);
    let (d, ell, r) = (d as u128, ell as u128, r as u128);
    match mode {
        Mode::NoFloating if p != q => 0,
        Mode::NoFloating => (1..=p).product::<u128>() * d.pow(p as u32),
        Mode::WithFloating => (0..=p.min(q))
            .map(|j| {
                let fact: u128 = (1..=j).product();
                binomial(p, j) * binomial(q, j) * fact * d.pow(j as u32) * ell.pow((p - j) as u32) * r.pow((q - j) as u32)
            })
            .sum(),
    }
}

pub fn side_of(kind: ComponentKind) -> Side {
    match kind {
        ComponentKind::HalfOut => Side::Left,
        ComponentKind::HalfIn => Side::Right,
        _ => Side::TwoSided,
    }
}

/// A shape with one decoration index per arc, in the shape's arc order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub shape: Diagram,
    pub decor: Vec<usize>,
}

/// A linear combination of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinMorphism {
    pub source: SignSeq,
    pub target: SignSeq,
    pub coords: BTreeMap<BasisElement, Scalar>,
}

impl SkeinMorphism {
    pub fn zero(source: SignSeq, target: SignSeq) -> Self {
        SkeinMorphism { source, target, coords: BTreeMap::new() }
    }

    pub fn basis(b: BasisElement) -> Self {
        let mut m = SkeinMorphism::zero(b.shape.source().clone(), b.shape.target().clone());
        m.add_term(Scalar::one(), b);
        m
    }

    pub fn add_term(&mut self, c: Scalar, b: BasisElement) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(b).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.coords.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &SkeinMorphism) -> SkeinMorphism {
        let mut out = self.clone();
        for (b, c) in &other.coords {
            out.add_term(c.clone(), b.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SkeinMorphism {
        let mut out = SkeinMorphism::zero(self.source.clone(), self.target.clone());
        for (b, x) in &self.coords {
            out.add_term(x * c, b.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates against an explicit basis list; `None` if a term is missing from it.
    pub fn vector(&self, basis: &[BasisElement]) -> Option<Vector> {
        let mut v = zero_vector(basis.len());
        let mut found = 0;
        for (i, b) in basis.iter().enumerate() {
            if let Some(c) = self.coords.get(b) {
                v[i] = c.clone();
                found += 1;
            }
        }
        (found == self.coords.len()).then_some(v)
    }

    pub fn from_vector(source: SignSeq, target: SignSeq, basis: &[BasisElement], v: &[Scalar]) -> Self {
        let mut m = SkeinMorphism::zero(source, target);
        for (b, c) in basis.iter().zip(v) {
            m.add_term(c.clone(), b.clone());
        }
        m
    }
}

/// The skein category of a series pair in a given mode.
#[derive(Clone, Debug)]
pub struct SkeinCategory {
    pub data: SyntacticData,
    pub pair: SeriesPair,
    pub mode: Mode,
}

impl SkeinCategory {
    pub fn new(pair: SeriesPair, mode: Mode) -> Self {
        SkeinCategory { data: syntactic_data(&pair), pair, mode }
    }

    pub fn hom_dim(&self, source: &SignSeq, target: &SignSeq) -> u128 {
        hom_dim_formula(source, target, self.data.d, self.data.ell, self.data.r, self.mode)
    }

    /// Basis of `Hom(ε, ε′)`: shapes in order, decorations in lexicographic order.
    pub fn basis(&self, source: &SignSeq, target: &SignSeq) -> Vec<BasisElement> {
        let mut out = Vec::new();
        for shape in enumerate_matchings(source, target, self.mode) {
            let ranges: Vec<usize> = shape.arcs().iter().map(|a| self.data.dim(side_of(a.kind()))).collect();
            if ranges.contains(&0) {
                continue;
            }
            let mut decor = vec![0; ranges.len()];
            loop {
                out.push(BasisElement { shape: shape.clone(), decor: decor.clone() });
                let Some(k) = (0..decor.len()).rev().find(|&k| decor[k] + 1 < ranges[k]) else { break };
                decor[k] += 1;
                for x in decor.iter_mut().skip(k + 1) {
                    *x = 0;
                }
            }
        }
        out
    }

    /// The diagram with representative words in place of decoration indices.
    pub fn lift_basis(&self, b: &BasisElement) -> Diagram {
        let arcs = b
            .shape
            .arcs()
            .iter()
            .zip(&b.decor)
            .map(|(a, &i)| Arc::new(a.tail, a.head, self.data.basis_words(side_of(a.kind()))[i].clone()))
            .collect();
        Diagram::new(b.shape.source().clone(), b.shape.target().clone(), arcs).expect("lift of a basis element")
    }

    pub fn lift(&self, m: &SkeinMorphism) -> Morphism {
        let mut out = Morphism::zero(m.source.clone(), m.target.clone());
        for (b, c) in &m.coords {
            out.add_term(c.clone(), self.lift_basis(b));
        }
        out
    }

    /// Reduces every label modulo the ideal attached to its arc.
    pub fn normal_form_diagram(&self, d: &Diagram) -> SkeinMorphism {
        let shape = d.shape();
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for a in d.arcs() {
            let coords = self.data.normal_form_word(&a.word, side_of(a.kind()));
            let mut next = Vec::new();
            for (decor, c) in &partial {
                for (i, x) in coords.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mut nd = decor.clone();
                    nd.push(i);
                    next.push((nd, c * x));
                }
            }
            partial = next;
        }
        let mut out = SkeinMorphism::zero(d.source().clone(), d.target().clone());
        for (decor, c) in partial {
            out.add_term(c, BasisElement { shape: shape.clone(), decor });
        }
        out
    }

    pub fn normal_form(&self, m: &Morphism) -> SkeinMorphism {
        let mut out = SkeinMorphism::zero(m.source().clone(), m.target().clone());
        for (d, c) in m.terms() {
            out = out.add(&self.normal_form_diagram(d).scale(c));
        }
        out
    }

    pub fn identity(&self, eps: &SignSeq) -> SkeinMorphism {
        self.normal_form_diagram(&Diagram::identity(eps))
    }

    pub fn compose_basis(&self, a: &BasisElement, b: &BasisElement) -> Result<SkeinMorphism> {
        let (c, d) = compose_diagrams(&self.lift_basis(a), &self.lift_basis(b), &self.pair)?;
        Ok(self.normal_form_diagram(&d).scale(&c))
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: &SkeinMorphism, b: &SkeinMorphism) -> Result<SkeinMorphism> {
        if a.source != b.target {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose {} → {} after {} → {}",
                a.source, a.target, b.source, b.target
            )));
        }
        let mut out = SkeinMorphism::zero(b.source.clone(), a.target.clone());
        for (x, cx) in &a.coords {
            for (y, cy) in &b.coords {
                out = out.add(&self.compose_basis(x, y)?.scale(&(cx * cy)));
            }
        }
        Ok(out)
    }

    pub fn trace(&self, x: &SkeinMorphism) -> Result<Scalar> {
        if x.source != x.target {
            return Err(Error::BoundaryMismatch(format!("trace of a non-endomorphism {} → {}", x.source, x.target)));
        }
        let mut total = Scalar::zero();
        for (b, c) in &x.coords {
            total += c * close_trace_diagram(&self.lift_basis(b), &self.pair)?;
        }
        Ok(total)
    }

    /// Structure constants of `End(ε)` over [`SkeinCategory::basis`].
    pub fn endo_table(&self, eps: &SignSeq) -> (Vec<BasisElement>, AlgebraTable) {
        let basis = self.basis(eps, eps);
        let constants: Vec<Vec<Vector>> = basis
            .par_iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| {
                        let p = self.compose_basis(x, y).expect("endomorphisms compose");
                        p.vector(&basis).expect("products stay in the basis")
                    })
                    .collect()
            })
            .collect();
        let dim = basis.len();
        (basis, AlgebraTable { dim, constants })
    }

    pub fn basis_to_json(&self, b: &BasisElement) -> Value {
        self.lift_basis(b).to_json(self.pair.alphabet())
    }

    pub fn skein_to_json(&self, m: &SkeinMorphism) -> Value {
        let terms: Vec<Value> = m
            .coords
            .iter()
            .map(|(b, c)| json!({"coeff": format_scalar(c), "diagram": self.basis_to_json(b)}))
            .collect();
        json!({"source": m.source.to_string(), "target": m.target.to_string(), "terms": terms})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::{int, unit_vector, Matrix};
    use crate::series::LinearRep;
    use crate::words::Alphabet;

    fn s(t: &str) -> SignSeq {
        SignSeq::parse(t).unwrap()
    }

    fn m2_x11() -> SeriesPair {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let e12 = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        let bullet = LinearRep::new(a.clone(), unit_vector(2, 0), vec![e12, e21], unit_vector(2, 0)).unwrap();
        SeriesPair::new(bullet, LinearRep::zero(&a)).unwrap()
    }

    fn brauer(lambda: i64) -> SeriesPair {
        let a = Alphabet::empty();
        SeriesPair::circ_only(LinearRep::constant(&a, int(lambda))).unwrap()
    }

    #[test]
    fn matching_counts() {
        assert_eq!(enumerate_matchings(&s("+"), &s("+-"), Mode::WithFloating).len(), 3);
        assert_eq!(enumerate_matchings(&s("+"), &s("++-"), Mode::WithFloating).len(), 7);
        assert_eq!(enumerate_matchings(&s("+"), &s("-"), Mode::NoFloating).len(), 0);
        assert_eq!(enumerate_matchings(&s("+"), &s("-"), Mode::WithFloating).len(), 1);
        for len in 0..=5 {
            for k in 0..=len {
                for a in SignSeq::all_of_length(k) {
                    for b in SignSeq::all_of_length(len - k) {
                        for mode in [Mode::NoFloating, Mode::WithFloating] {
                            let got = enumerate_matchings(&a, &b, mode).len() as u128;
                            assert_eq!(got, hom_dim_formula(&a, &b, 1, 1, 1, mode));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn end_plus_dimension_and_ideal_law() {
        let cat = SkeinCategory::new(m2_x11(), Mode::WithFloating);
        let plus = s("+");
        assert_eq!(cat.hom_dim(&plus, &plus), 8);
        let basis = cat.basis(&plus, &plus);
        assert_eq!(basis.len(), 8);
        let halves: Vec<&BasisElement> = basis.iter().filter(|b| b.shape.arcs().len() == 2).collect();
        assert_eq!(halves.len(), 4);
        for x in &halves {
            for y in &halves {
                // arcs are sorted: the half-out arc (floating tail) precedes the half-in arc
                let (x1, x2) = (x.decor[0], x.decor[1]);
                let (y1, y2) = (y.decor[0], y.decor[1]);
                let factor = cat.pair.bullet.eval(&cat.data.right_basis_words[x2].concat(&cat.data.left_basis_words[y1]));
                let expected = BasisElement { shape: x.shape.clone(), decor: vec![x1, y2] };
                let got = cat.compose_basis(x, y).unwrap();
                assert_eq!(got, SkeinMorphism::basis(expected).scale(&factor));
            }
        }
    }

    #[test]
    fn identity_is_unit() {
        let cat = SkeinCategory::new(m2_x11(), Mode::WithFloating);
        let eps = s("+-");
        let id = cat.identity(&eps);
        for b in cat.basis(&eps, &eps).into_iter().step_by(7) {
            let m = SkeinMorphism::basis(b);
            assert_eq!(cat.compose(&id, &m).unwrap(), m);
            assert_eq!(cat.compose(&m, &id).unwrap(), m);
        }
    }

    #[test]
    fn walled_brauer_table() {
        let cat = SkeinCategory::new(brauer(5), Mode::NoFloating);
        let (basis, table) = cat.endo_table(&s("+-"));
        assert_eq!(basis.len(), 2);
        // the identity comes second: its arcs start at Src(0) and Tgt(1)
        let e = basis.iter().position(|b| b.shape.arcs().iter().any(|a| a.kind() == ComponentKind::Cup)).unwrap();
        assert_eq!(table.constants[e][e], unit_vector(2, e).iter().map(|x| x * int(5)).collect::<Vec<_>>());
    }

    #[test]
    fn ideal_label_vanishes() {
        let cat = SkeinCategory::new(m2_x11(), Mode::NoFloating);
        // E12·E12 = 0, so the word aa lies in the ideal
        let d = Diagram::cob(Word(vec![0, 0]));
        assert!(cat.normal_form_diagram(&d).is_zero());
    }
}
