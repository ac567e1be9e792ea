//! Oriented one-dimensional cobordisms with word-decorated strands.
//!
//! A diagram `ε → ε′` is stored by its arcs. Each arc runs from a tail to a
//! head, either of which may be a boundary point or a floating endpoint, and
//! carries a word read from the head backwards: gluing the head of an arc
//! labelled `u` to the tail of an arc labelled `v` yields the label `vu`.
//! Hence `cob(u) ∘ cob(v) = cob(uv)`. Closed components never survive a
//! composition; they are evaluated by the series pair.
//!
//! Boundary points are oriented by their signs. A strand leaves the picture
//! upwards through a `+` on the target and downwards through a `−` on the
//! source, so these points are heads and all other boundary points are tails.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlinalg::{format_scalar, parse_scalar, Scalar};
use crate::series::SeriesPair;
use crate::words::{cyclic_normalize, Alphabet, CyclicWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// An object: a finite sequence of signs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignSeq(pub Vec<Sign>);

impl SignSeq {
    pub fn empty() -> Self {
        SignSeq(Vec::new())
    }

    /// Parses `+`/`-` characters; `∅`, `e` and the empty string denote the empty sequence.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "∅" {
            return Ok(SignSeq::empty());
        }
        t.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                other => Err(Error::Parse(format!("`{other}` is not a sign"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignSeq)
    }

    /// `+ⁿ−ⁿ`.
    pub fn balanced(n: usize) -> Self {
        let mut v = vec![Sign::Plus; n];
        v.extend(vec![Sign::Minus; n]);
        SignSeq(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// Number of pluses minus number of minuses.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(|s| if *s == Sign::Plus { 1 } else { -1 }).sum()
    }

    pub fn concat(&self, other: &SignSeq) -> SignSeq {
        SignSeq(self.0.iter().chain(&other.0).copied().collect())
    }

    /// All sequences of the given length, `+` before `−`.
    pub fn all_of_length(len: usize) -> Vec<SignSeq> {
        let mut out = vec![SignSeq::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|s| [Sign::Plus, Sign::Minus].map(|x| SignSeq(s.0.iter().copied().chain([x]).collect())))
                .collect();
        }
        out
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", if *s == Sign::Plus { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A boundary point of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Src(usize),
    Tgt(usize),
}

impl Point {
    /// The same position on the other side.
    pub fn swap(self) -> Point {
        match self {
            Point::Src(i) => Point::Tgt(i),
            Point::Tgt(i) => Point::Src(i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    Through,
    Cup,
    Cap,
    HalfOut,
    HalfIn,
    FloatInterval,
    FloatCircle,
}

impl ComponentKind {
    pub fn name(self) -> &'static str {
        match self {
            ComponentKind::Through => "through",
            ComponentKind::Cup => "cup",
            ComponentKind::Cap => "cap",
            ComponentKind::HalfOut => "half_out",
            ComponentKind::HalfIn => "half_in",
            ComponentKind::FloatInterval => "float_interval",
            ComponentKind::FloatCircle => "float_circle",
        }
    }
}

/// Which floating endpoints are permitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every arc has both endpoints on the boundary.
    NoFloating,
    /// Arcs may have one floating endpoint.
    WithFloating,
}

/// An oriented arc with at least one boundary endpoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: Option<Point>,
    pub head: Option<Point>,
    pub word: Word,
}

impl Arc {
    pub fn new(tail: Option<Point>, head: Option<Point>, word: Word) -> Self {
        Arc { tail, head, word }
    }

    pub fn kind(&self) -> ComponentKind {
        match (self.tail, self.head) {
            (None, None) => ComponentKind::FloatInterval,
            (None, Some(_)) => ComponentKind::HalfOut,
            (Some(_), None) => ComponentKind::HalfIn,
            (Some(Point::Src(_)), Some(Point::Src(_))) => ComponentKind::Cap,
            (Some(Point::Tgt(_)), Some(Point::Tgt(_))) => ComponentKind::Cup,
            _ => ComponentKind::Through,
        }
    }
}

/// A viewable diagram: every component touches the boundary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    source: SignSeq,
    target: SignSeq,
    arcs: Vec<Arc>,
}

fn is_head(source: &SignSeq, target: &SignSeq, p: Point) -> bool {
    match p {
        Point::Src(i) => source.0[i] == Sign::Minus,
        Point::Tgt(i) => target.0[i] == Sign::Plus,
    }
}

impl Diagram {
    pub fn new(source: SignSeq, target: SignSeq, mut arcs: Vec<Arc>) -> Result<Self> {
        let mut used_src = vec![false; source.len()];
        let mut used_tgt = vec![false; target.len()];
        for a in &arcs {
            if a.tail.is_none() && a.head.is_none() {
                return Err(Error::MalformedDiagram("arc with two floating endpoints".into()));
            }
            for (p, want_head) in [(a.tail, false), (a.head, true)] {
                let Some(p) = p else { continue };
                let slot = match p {
                    Point::Src(i) => used_src.get_mut(i),
                    Point::Tgt(i) => used_tgt.get_mut(i),
                };
                let slot = slot.ok_or_else(|| Error::MalformedDiagram(format!("{p:?} is out of range")))?;
                if std::mem::replace(slot, true) {
                    return Err(Error::MalformedDiagram(format!("{p:?} is used twice")));
                }
                if is_head(&source, &target, p) != want_head {
                    return Err(Error::MalformedDiagram(format!("orientation at {p:?} disagrees with its sign")));
                }
            }
        }
        if used_src.iter().chain(&used_tgt).any(|u| !u) {
            return Err(Error::MalformedDiagram("a boundary point is not used".into()));
        }
        arcs.sort();
        Ok(Diagram { source, target, arcs })
    }

    pub fn identity(eps: &SignSeq) -> Diagram {
        let arcs = (0..eps.len())
            .map(|i| match eps.0[i] {
                Sign::Plus => Arc::new(Some(Point::Src(i)), Some(Point::Tgt(i)), Word::empty()),
                Sign::Minus => Arc::new(Some(Point::Tgt(i)), Some(Point::Src(i)), Word::empty()),
            })
            .collect();
        Diagram::new(eps.clone(), eps.clone(), arcs).expect("identity is well formed")
    }

    /// A single upward strand labelled `w`.
    pub fn cob(w: Word) -> Diagram {
        let plus = SignSeq(vec![Sign::Plus]);
        Diagram::new(plus.clone(), plus, vec![Arc::new(Some(Point::Src(0)), Some(Point::Tgt(0)), w)])
            .expect("single strand is well formed")
    }

    /// Undecorated permutation: source position `k` goes to target position `perm[k]`.
    pub fn permutation(source: &SignSeq, perm: &[usize]) -> Result<Diagram> {
        let n = source.len();
        let mut target = vec![None; n];
        for (k, &p) in perm.iter().enumerate() {
            if p >= n || target[p].is_some() {
                return Err(Error::Invalid("not a permutation".into()));
            }
            target[p] = Some(source.0[k]);
        }
        if perm.len() != n {
            return Err(Error::Invalid("permutation length differs from the object".into()));
        }
        let target = SignSeq(target.into_iter().map(|s| s.expect("filled")).collect());
        let arcs = perm
            .iter()
            .enumerate()
            .map(|(k, &p)| match source.0[k] {
                Sign::Plus => Arc::new(Some(Point::Src(k)), Some(Point::Tgt(p)), Word::empty()),
                Sign::Minus => Arc::new(Some(Point::Tgt(p)), Some(Point::Src(k)), Word::empty()),
            })
            .collect();
        Diagram::new(source.clone(), target, arcs)
    }

    pub fn source(&self) -> &SignSeq {
        &self.source
    }

    pub fn target(&self) -> &SignSeq {
        &self.target
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn allowed_in(&self, mode: Mode) -> bool {
        mode == Mode::WithFloating || self.arcs.iter().all(|a| a.tail.is_some() && a.head.is_some())
    }

    /// The same diagram with all labels erased.
    pub fn shape(&self) -> Diagram {
        let arcs = self.arcs.iter().map(|a| Arc::new(a.tail, a.head, Word::empty())).collect();
        Diagram { source: self.source.clone(), target: self.target.clone(), arcs }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let point = |p: Option<Point>| match p {
            Some(Point::Src(i)) => json!(["src", i]),
            Some(Point::Tgt(i)) => json!(["tgt", i]),
            None => Value::Null,
        };
        let comps: Vec<Value> = self
            .arcs
            .iter()
            .map(|a| {
                json!({
                    "kind": a.kind().name(),
                    "from": point(a.tail),
                    "to": point(a.head),
                    "label": alphabet.format_word(&a.word),
                })
            })
            .collect();
        json!({"source": self.source.to_string(), "target": self.target.to_string(), "components": comps})
    }

    pub fn from_json(v: &Value, alphabet: &Alphabet) -> Result<Diagram> {
        let text = |k: &str| {
            v.get(k).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("diagram needs a string `{k}`")))
        };
        let source = SignSeq::parse(text("source")?)?;
        let target = SignSeq::parse(text("target")?)?;
        let comps = v
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("diagram needs a `components` array".into()))?;
        let point = |p: Option<&Value>| -> Result<Option<Point>> {
            match p {
                None | Some(Value::Null) => Ok(None),
                Some(Value::Array(xs)) if xs.len() == 2 => {
                    let i = xs[1].as_u64().ok_or_else(|| Error::Parse("point index must be a number".into()))?;
                    match xs[0].as_str() {
                        Some("src") => Ok(Some(Point::Src(i as usize))),
                        Some("tgt") => Ok(Some(Point::Tgt(i as usize))),
                        _ => Err(Error::Parse("point side must be `src` or `tgt`".into())),
                    }
                }
                Some(_) => Err(Error::Parse("a point is written [\"src\"|\"tgt\", index]".into())),
            }
        };
        let mut arcs = Vec::new();
        for c in comps {
            let word = match c.get("label") {
                None | Some(Value::Null) => Word::empty(),
                Some(l) => alphabet.parse_word(l.as_str().ok_or_else(|| Error::Parse("label must be a string".into()))?)?,
            };
            let arc = Arc::new(point(c.get("from"))?, point(c.get("to"))?, word);
            if let Some(kind) = c.get("kind").and_then(Value::as_str) {
                if kind != arc.kind().name() {
                    return Err(Error::MalformedDiagram(format!("component declared `{kind}` is a {}", arc.kind().name())));
                }
            }
            arcs.push(arc);
        }
        Diagram::new(source, target, arcs)
    }
}

/// A finite linear combination of diagrams with a common boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: SignSeq,
    target: SignSeq,
    terms: BTreeMap<Diagram, Scalar>,
}

impl Morphism {
    pub fn zero(source: SignSeq, target: SignSeq) -> Self {
        Morphism { source, target, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        Self::term(Scalar::one(), d)
    }

    pub fn term(c: Scalar, d: Diagram) -> Self {
        let mut m = Morphism::zero(d.source.clone(), d.target.clone());
        m.add_term(c, d);
        m
    }

    pub fn identity(eps: &SignSeq) -> Self {
        Self::from_diagram(Diagram::identity(eps))
    }

    pub fn source(&self) -> &SignSeq {
        &self.source
    }

    pub fn target(&self) -> &SignSeq {
        &self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c·d`; panics if `d` has a different boundary.
    pub fn add_term(&mut self, c: Scalar, d: Diagram) {
        assert!(d.source == self.source && d.target == self.target, "diagram boundary differs from morphism");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(d).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::BoundaryMismatch("summands have different boundaries".into()));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(c.clone(), d.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let mut out = Morphism::zero(self.source.clone(), self.target.clone());
        for (d, x) in &self.terms {
            out.add_term(x * c, d.clone());
        }
        out
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| json!({"coeff": format_scalar(c), "diagram": d.to_json(alphabet)}))
            .collect();
        json!({"source": self.source.to_string(), "target": self.target.to_string(), "terms": terms})
    }

    /// Accepts either a morphism object or a bare diagram.
    pub fn from_json(v: &Value, alphabet: &Alphabet) -> Result<Morphism> {
        let Some(terms) = v.get("terms") else {
            return Ok(Morphism::from_diagram(Diagram::from_json(v, alphabet)?));
        };
        let terms = terms.as_array().ok_or_else(|| Error::Parse("`terms` must be an array".into()))?;
        let text = |k: &str| {
            v.get(k).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("morphism needs a string `{k}`")))
        };
        let mut m = Morphism::zero(SignSeq::parse(text("source")?)?, SignSeq::parse(text("target")?)?);
        for t in terms {
            let c = match t.get("coeff") {
                None => Scalar::one(),
                Some(Value::String(s)) => parse_scalar(s)?,
                Some(Value::Number(n)) => parse_scalar(&n.to_string())?,
                Some(_) => return Err(Error::Parse("coefficient must be a string or integer".into())),
            };
            let d = Diagram::from_json(t.get("diagram").ok_or_else(|| Error::Parse("term needs a `diagram`".into()))?, alphabet)?;
            if d.source != m.source || d.target != m.target {
                return Err(Error::BoundaryMismatch("term boundary differs from morphism".into()));
            }
            m.add_term(c, d);
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Loc {
    Outer(Point),
    Junction(usize),
    Floating,
}

struct Piece {
    tail: Loc,
    head: Loc,
    word: Word,
}

/// Result of gluing pieces along junctions.
struct Glued {
    arcs: Vec<Arc>,
    intervals: Vec<Word>,
    circles: Vec<CyclicWord>,
}

impl Glued {
    fn weight(&self, pair: &SeriesPair) -> Scalar {
        let mut w = Scalar::one();
        for i in &self.intervals {
            w *= pair.bullet.eval(i);
        }
        for c in &self.circles {
            w *= pair.circ.eval(c.representative());
        }
        w
    }
}

/// Each junction must be the head of exactly one piece and the tail of exactly one piece.
fn glue(pieces: Vec<Piece>, junctions: usize) -> Glued {
    let mut leaving = vec![usize::MAX; junctions];
    for (k, p) in pieces.iter().enumerate() {
        if let Loc::Junction(j) = p.tail {
            leaving[j] = k;
        }
    }
    let outer = |l: Loc| match l {
        Loc::Outer(p) => Some(p),
        Loc::Floating => None,
        Loc::Junction(_) => unreachable!("chains end off junctions"),
    };
    let mut seen = vec![false; pieces.len()];
    let mut out = Glued { arcs: Vec::new(), intervals: Vec::new(), circles: Vec::new() };
    for start in 0..pieces.len() {
        if matches!(pieces[start].tail, Loc::Junction(_)) {
            continue;
        }
        seen[start] = true;
        let mut word = pieces[start].word.clone();
        let mut cur = start;
        while let Loc::Junction(j) = pieces[cur].head {
            cur = leaving[j];
            seen[cur] = true;
            word = pieces[cur].word.concat(&word);
        }
        let (tail, head) = (outer(pieces[start].tail), outer(pieces[cur].head));
        if tail.is_none() && head.is_none() {
            out.intervals.push(word);
        } else {
            out.arcs.push(Arc::new(tail, head, word));
        }
    }
    for start in 0..pieces.len() {
        if seen[start] {
            continue;
        }
        let mut word = Word::empty();
        let mut cur = start;
        loop {
            seen[cur] = true;
            word = pieces[cur].word.concat(&word);
            let Loc::Junction(j) = pieces[cur].head else { unreachable!("a cycle only meets junctions") };
            cur = leaving[j];
            if cur == start {
                break;
            }
        }
        out.circles.push(cyclic_normalize(&word));
    }
    out
}

fn pieces_of(d: &Diagram, place: impl Fn(Point) -> Loc) -> Vec<Piece> {
    let place = |p: Option<Point>| p.map_or(Loc::Floating, &place);
    d.arcs.iter().map(|a| Piece { tail: place(a.tail), head: place(a.head), word: a.word.clone() }).collect()
}

/// `f ∘ g` for single diagrams: the scalar from closed components and the viewable rest.
pub fn compose_diagrams(f: &Diagram, g: &Diagram, pair: &SeriesPair) -> Result<(Scalar, Diagram)> {
    if f.source != g.target {
        return Err(Error::BoundaryMismatch(format!("cannot compose {} → {} after {} → {}", f.source, f.target, g.source, g.target)));
    }
    let mut pieces: Vec<Piece> = pieces_of(g, |p| match p {
        Point::Src(_) => Loc::Outer(p),
        Point::Tgt(i) => Loc::Junction(i),
    });
    pieces.extend(pieces_of(f, |p| match p {
        Point::Src(i) => Loc::Junction(i),
        Point::Tgt(_) => Loc::Outer(p),
    }));
    let glued = glue(pieces, f.source.len());
    let c = glued.weight(pair);
    let mut arcs = glued.arcs;
    arcs.sort();
    Ok((c, Diagram { source: g.source.clone(), target: f.target.clone(), arcs }))
}

/// `f ∘ g`, with `g: ε → ε′` and `f: ε′ → ε″`.
pub fn compose(f: &Morphism, g: &Morphism, pair: &SeriesPair) -> Result<Morphism> {
    if f.source != g.target {
        return Err(Error::BoundaryMismatch(format!("cannot compose {} → {} after {} → {}", f.source, f.target, g.source, g.target)));
    }
    let mut out = Morphism::zero(g.source.clone(), f.target.clone());
    for (df, cf) in &f.terms {
        for (dg, cg) in &g.terms {
            let (c, d) = compose_diagrams(df, dg, pair)?;
            out.add_term(c * cf * cg, d);
        }
    }
    Ok(out)
}

pub fn tensor_diagrams(f: &Diagram, g: &Diagram) -> Diagram {
    let (ns, nt) = (f.source.len(), f.target.len());
    let shift = |p: Option<Point>| {
        p.map(|p| match p {
            Point::Src(i) => Point::Src(i + ns),
            Point::Tgt(i) => Point::Tgt(i + nt),
        })
    };
    let mut arcs = f.arcs.clone();
    arcs.extend(g.arcs.iter().map(|a| Arc::new(shift(a.tail), shift(a.head), a.word.clone())));
    arcs.sort();
    Diagram { source: f.source.concat(&g.source), target: f.target.concat(&g.target), arcs }
}

/// Places `f` to the left of `g`.
pub fn tensor(f: &Morphism, g: &Morphism) -> Morphism {
    let mut out = Morphism::zero(f.source.concat(&g.source), f.target.concat(&g.target));
    for (df, cf) in &f.terms {
        for (dg, cg) in &g.terms {
            out.add_term(cf * cg, tensor_diagrams(df, dg));
        }
    }
    out
}

/// Reflection combined with orientation reversal. An arc from `P` to `Q`
/// labelled `w` becomes an arc from the mirror of `Q` to the mirror of `P`
/// labelled by the reverse of `w`; the signs of the boundary are unchanged.
pub fn involution_diagram(f: &Diagram) -> Diagram {
    let arcs = f
        .arcs
        .iter()
        .map(|a| Arc::new(a.head.map(Point::swap), a.tail.map(Point::swap), a.word.reverse()))
        .collect();
    Diagram::new(f.target.clone(), f.source.clone(), arcs).expect("mirror of a diagram is a diagram")
}

/// Contravariant: `involution(f ∘ g)` under a pair equals
/// `involution(g) ∘ involution(f)` under the reversed pair.
pub fn involution(f: &Morphism) -> Morphism {
    let mut out = Morphism::zero(f.target.clone(), f.source.clone());
    for (d, c) in &f.terms {
        out.add_term(c.clone(), involution_diagram(d));
    }
    out
}

/// Closes a diagram `ε → ε` by joining target point `i` to source point `i`.
pub fn close_trace_diagram(x: &Diagram, pair: &SeriesPair) -> Result<Scalar> {
    if x.source != x.target {
        return Err(Error::BoundaryMismatch(format!("trace of a non-endomorphism {} → {}", x.source, x.target)));
    }
    let pieces: Vec<Piece> = pieces_of(x, |p| match p {
        Point::Src(i) | Point::Tgt(i) => Loc::Junction(i),
    });
    Ok(glue(pieces, x.source.len()).weight(pair))
}

pub fn close_trace(x: &Morphism, pair: &SeriesPair) -> Result<Scalar> {
    if x.source != x.target {
        return Err(Error::BoundaryMismatch(format!("trace of a non-endomorphism {} → {}", x.source, x.target)));
    }
    let mut total = Scalar::zero();
    for (d, c) in &x.terms {
        total += c * close_trace_diagram(d, pair)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::{int, unit_vector, Matrix};
    use crate::series::LinearRep;

    fn s(t: &str) -> SignSeq {
        SignSeq::parse(t).unwrap()
    }

    fn w(v: &[usize]) -> Word {
        Word(v.to_vec())
    }

    /// Two letters; both series are traces of 2×2 matrices so `circ` is symmetric.
    fn pair() -> SeriesPair {
        let a = Alphabet::new(["s1", "s2"]).unwrap();
        let m1 = Matrix::from_i64(&[&[1, 2], &[0, 1]]);
        let m2 = Matrix::from_i64(&[&[0, 1], &[3, 1]]);
        let bullet = LinearRep::new(a.clone(), unit_vector(2, 1), vec![m1.clone(), m2.clone()], unit_vector(2, 0)).unwrap();
        let mut psi = Vec::new();
        for m in [&m1, &m2] {
            // left multiplication on row-major 2×2 matrices
            let mut l = Matrix::zeros(4, 4);
            for i in 0..2 {
                for k in 0..2 {
                    for j in 0..2 {
                        l[(i * 2 + j, k * 2 + j)] = m[(i, k)].clone();
                    }
                }
            }
            psi.push(l);
        }
        let id = vec![int(1), int(0), int(0), int(1)];
        let circ = LinearRep::new(a, id.clone(), psi, id).unwrap();
        SeriesPair::new(bullet, circ).unwrap()
    }

    fn cup() -> Diagram {
        // ∅ → (+−): tail at the minus, head at the plus
        Diagram::new(s(""), s("+-"), vec![Arc::new(Some(Point::Tgt(1)), Some(Point::Tgt(0)), Word::empty())]).unwrap()
    }

    fn cap() -> Diagram {
        // (+−) → ∅
        Diagram::new(s("+-"), s(""), vec![Arc::new(Some(Point::Src(0)), Some(Point::Src(1)), Word::empty())]).unwrap()
    }

    #[test]
    fn sign_sequences() {
        assert_eq!(s("+-+").weight(), 1);
        assert_eq!(s("+-+").to_string(), "+-+");
        assert_eq!(s("∅"), SignSeq::empty());
        assert!(SignSeq::parse("+x").is_err());
        assert_eq!(SignSeq::all_of_length(3).len(), 8);
    }

    #[test]
    fn validation() {
        let plus = s("+");
        // the strand must run upward
        assert!(Diagram::new(plus.clone(), plus.clone(), vec![Arc::new(Some(Point::Tgt(0)), Some(Point::Src(0)), Word::empty())]).is_err());
        assert!(Diagram::new(plus.clone(), plus.clone(), vec![]).is_err());
        assert!(Diagram::new(plus.clone(), s(""), vec![Arc::new(Some(Point::Src(0)), None, Word::empty())]).is_ok());
        assert!(Diagram::new(s(""), s(""), vec![Arc::new(None, None, Word::empty())]).is_err());
    }

    #[test]
    fn snake_is_identity() {
        let p = pair();
        let id = Diagram::identity(&s("+"));
        // (id_+ ⊗ cap) ∘ (cup ⊗ id_+) through + − +
        let cap_mp =
            Diagram::new(s("-+"), s(""), vec![Arc::new(Some(Point::Src(1)), Some(Point::Src(0)), Word::empty())]).unwrap();
        let lower = tensor_diagrams(&cup(), &id);
        let upper = tensor_diagrams(&id, &cap_mp);
        let (c, d) = compose_diagrams(&upper, &lower, &p).unwrap();
        assert_eq!(c, int(1));
        assert_eq!(d, id);
    }

    #[test]
    fn closing_a_circle() {
        let p = pair();
        let (c, d) = compose_diagrams(&cap(), &cup(), &p).unwrap();
        assert_eq!(d, Diagram::identity(&s("")));
        assert_eq!(c, p.circ.eval(&Word::empty()));
    }

    #[test]
    fn labels_concatenate() {
        let p = pair();
        let (c, d) = compose_diagrams(&Diagram::cob(w(&[0])), &Diagram::cob(w(&[1, 0])), &p).unwrap();
        assert_eq!((c, d.clone()), (int(1), Diagram::cob(w(&[0, 1, 0]))));
        assert_eq!(close_trace_diagram(&d, &p).unwrap(), p.circ.eval(&w(&[0, 1, 0])));
        assert_eq!(close_trace_diagram(&Diagram::identity(&s("+")), &p).unwrap(), p.circ.eval(&Word::empty()));
        assert_eq!(close_trace_diagram(&Diagram::identity(&s("")), &p).unwrap(), int(1));
    }

    #[test]
    fn floating_interval_is_evaluated() {
        let p = pair();
        let plus = s("+");
        let out = Diagram::new(s(""), plus.clone(), vec![Arc::new(None, Some(Point::Tgt(0)), w(&[0]))]).unwrap();
        let inn = Diagram::new(plus, s(""), vec![Arc::new(Some(Point::Src(0)), None, w(&[1]))]).unwrap();
        let (c, d) = compose_diagrams(&inn, &out, &p).unwrap();
        assert_eq!(d, Diagram::identity(&s("")));
        assert_eq!(c, p.bullet.eval(&w(&[1, 0])));
    }

    #[test]
    fn tensor_units() {
        let ip = Morphism::identity(&s("+"));
        let im = Morphism::identity(&s("-"));
        assert_eq!(tensor(&ip, &im), Morphism::identity(&s("+-")));
        let e = Morphism::identity(&s(""));
        let f = Morphism::from_diagram(cup());
        assert_eq!(tensor(&f, &e), f);
        assert_eq!(tensor(&e, &f), f);
    }

    #[test]
    fn involution_examples() {
        let id = Morphism::identity(&s("+-+"));
        assert_eq!(involution(&id), id);
        let c = Diagram::cob(w(&[0, 1]));
        assert_eq!(involution_diagram(&c), Diagram::cob(w(&[1, 0])));
        assert_eq!(involution_diagram(&cup()).source(), &s("+-"));
        let f = tensor_diagrams(&cup(), &Diagram::cob(w(&[1])));
        assert_eq!(involution_diagram(&involution_diagram(&f)), f);
    }

    #[test]
    fn permutation_diagram() {
        let p = Diagram::permutation(&s("+-+"), &[2, 0, 1]).unwrap();
        assert_eq!(p.target(), &s("-++"));
        assert!(Diagram::permutation(&s("+-"), &[0, 0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = Alphabet::new(["s1", "s2"]).unwrap();
        let f = tensor_diagrams(&cup(), &Diagram::cob(w(&[1, 0])));
        let m = Morphism::term(int(3), f.clone()).add(&Morphism::from_diagram(f)).unwrap();
        let back = Morphism::from_json(&m.to_json(&a), &a).unwrap();
        assert_eq!(back, m);
        let bad = json!({"source": "+", "target": "+", "components": [{"kind": "cup", "from": ["src", 0], "to": ["tgt", 0]}]});
        assert!(Diagram::from_json(&bad, &a).is_err());
    }
}
