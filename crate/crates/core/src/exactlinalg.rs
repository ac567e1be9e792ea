//! Exact linear algebra over ℚ.
//!
//! Everything here works on dense matrices of [`Scalar`]s. Row reduction picks
//! the first nonzero entry in row order as pivot, so echelon forms (and hence
//! kernel bases and greedy spanning sets) are canonical.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// A column (or row, depending on context) vector.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("{t}: zero denominator")));
            }
            Scalar::new(p, q)
        }
        None => Scalar::from_integer(
            BigInt::from_str(t).map_err(|e| Error::Parse(format!("{t}: {e}")))?,
        ),
    };
    Ok(parsed)
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but also fixes the column count, so that
    /// empty row lists still carry a shape.
    pub fn from_rows_with_cols(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {cols} entries, found {}",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(Matrix { rows: n, cols, entries })
    }

    pub fn from_columns(cols: &[Vector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let vs = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(vs).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = zero_vector(self.cols);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.row(i));
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("cannot add matrices of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    let v = &m[(r, j)] * &inv;
                    m[(r, j)] = v;
                }
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let v = &m[(i, j)] - &f * &pivot_row[j];
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Rank and a kernel basis. Kernel vectors are indexed by free columns, each
/// with a one at its own free column and zeros at the other free columns.
pub fn rank_and_kernel(m: &Matrix) -> (usize, Vec<Vector>) {
    let (r, pivots) = m.rref();
    let mut kernel = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let free: Vec<usize> = (0..m.cols())
        .filter(|c| {
            if pivot_iter.peek() == Some(&c) {
                pivot_iter.next();
                false
            } else {
                true
            }
        })
        .collect();
    for &f in &free {
        let mut v = zero_vector(m.cols());
        v[f] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, f)].clone();
        }
        kernel.push(v);
    }
    (pivots.len(), kernel)
}

/// Coordinates of `target` in the span of linearly independent `basis`.
pub fn solve_in_span(basis: &[Vector], target: &[Scalar]) -> Result<Vector> {
    let mut span = SpanBasis::new(target.len());
    for b in basis {
        if b.len() != target.len() {
            return Err(Error::DimensionMismatch("basis vector length differs from target".into()));
        }
        if span.insert(b.clone()).is_none() {
            return Err(Error::Invalid("basis vectors are linearly dependent".into()));
        }
    }
    span.coordinates(target).ok_or(Error::NotInSpan)
}

/// Smallest subspace containing `seeds` and invariant under every operator,
/// returned as the vectors admitted in breadth-first discovery order.
pub fn span_closure(seeds: &[Vector], operators: &[Matrix]) -> Result<Vec<Vector>> {
    let Some(n) = seeds.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    for op in operators {
        if !op.is_square() || op.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, seeds have length {n}",
                op.rows(),
                op.cols()
            )));
        }
    }
    let mut span = SpanBasis::new(n);
    for s in seeds {
        if s.len() != n {
            return Err(Error::DimensionMismatch("seed vectors differ in length".into()));
        }
        span.insert(s.clone());
    }
    let mut next = 0;
    while next < span.len() {
        let v = span.original(next).to_vec();
        for op in operators {
            span.insert(op.mul_vec(&v));
        }
        next += 1;
    }
    Ok(span.into_originals())
}

/// An incrementally grown set of independent vectors that can express any
/// vector of its span in terms of the vectors as they were inserted.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    ambient: usize,
    originals: Vec<Vector>,
    // (pivot, reduced vector, reduced = Σ combo[i]·originals[i])
    reduced: Vec<(usize, Vector, Vector)>,
}

impl SpanBasis {
    pub fn new(ambient: usize) -> Self {
        SpanBasis { ambient, originals: Vec::new(), reduced: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn original(&self, i: usize) -> &[Scalar] {
        &self.originals[i]
    }

    pub fn originals(&self) -> &[Vector] {
        &self.originals
    }

    pub fn into_originals(self) -> Vec<Vector> {
        self.originals
    }

    /// Reduces `v` against the current basis: returns the remainder and the
    /// coordinates of the part that was removed.
    fn reduce(&self, v: &[Scalar]) -> (Vector, Vector) {
        let mut rem = v.to_vec();
        let mut coords = zero_vector(self.originals.len());
        for (p, vec, combo) in &self.reduced {
            if rem[*p].is_zero() {
                continue;
            }
            let f = rem[*p].clone();
            for (r, x) in rem.iter_mut().zip(vec) {
                if !x.is_zero() {
                    *r -= &f * x;
                }
            }
            axpy(&mut coords, &f, combo);
        }
        (rem, coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v).0)
    }

    /// Inserts `v` if it is independent of the current span; returns its index.
    pub fn insert(&mut self, v: Vector) -> Option<usize> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let (rem, coords) = self.reduce(&v);
        let p = rem.iter().position(|x| !x.is_zero())?;
        let idx = self.originals.len();
        let inv = rem[p].recip();
        let vec: Vector = rem.iter().map(|x| x * &inv).collect();
        // rem = v - Σ coords·orig, so vec = (e_idx - coords)/rem[p]
        let mut combo: Vector = coords.iter().map(|c| -(c * &inv)).collect();
        combo.push(inv);
        for (_, other, other_combo) in &mut self.reduced {
            other_combo.push(Scalar::zero());
            if other[p].is_zero() {
                continue;
            }
            let f = other[p].clone();
            for (o, x) in other.iter_mut().zip(&vec) {
                if !x.is_zero() {
                    *o -= &f * x;
                }
            }
            for (o, x) in other_combo.iter_mut().zip(&combo) {
                if !x.is_zero() {
                    *o -= &f * x;
                }
            }
        }
        self.reduced.push((p, vec, combo));
        self.originals.push(v);
        Some(idx)
    }

    /// Coordinates of `v` with respect to the inserted vectors, if in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let (rem, coords) = self.reduce(v);
        is_zero_vector(&rem).then_some(coords)
    }
}

/// Basis of `{x : m·x = 0}`.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    rank_and_kernel(m).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rank_and_kernel(&Matrix::identity(2));
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let (r, k) = rank_and_kernel(&Matrix::zeros(2, 2));
        assert_eq!(r, 0);
        assert_eq!(k, vec![unit_vector(2, 0), unit_vector(2, 1)]);
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        assert_eq!(solve_in_span(std::slice::from_ref(&e1), &[int(3), int(0)]).unwrap(), vec![int(3)]);
        assert_eq!(solve_in_span(&[e1], &e2), Err(Error::NotInSpan));
        let b = [vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve_in_span(&b, &[int(2), int(0)]).unwrap(), vec![int(1), int(1)]);
    }

    #[test]
    fn closure_examples() {
        let shift = Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let e1 = unit_vector(3, 0);
        let basis = span_closure(std::slice::from_ref(&e1), &[shift]).unwrap();
        assert_eq!(basis, vec![e1.clone(), unit_vector(3, 1), unit_vector(3, 2)]);
        assert!(span_closure(&[], &[]).unwrap().is_empty());
        assert_eq!(span_closure(std::slice::from_ref(&e1), &[Matrix::identity(3)]).unwrap(), vec![e1]);
    }

    #[test]
    fn scalar_text_roundtrip() {
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(5)), "5");
        assert_eq!(parse_scalar("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn span_basis_tracks_original_coordinates() {
        let mut s = SpanBasis::new(3);
        s.insert(vec![int(1), int(2), int(0)]);
        s.insert(vec![int(0), int(1), int(1)]);
        assert!(s.insert(vec![int(1), int(3), int(1)]).is_none());
        let c = s.coordinates(&[int(2), int(1), int(-3)]).unwrap();
        assert_eq!(c, vec![int(2), int(-3)]);
        assert!(s.coordinates(&[int(0), int(0), int(1)]).is_none());
    }
}
