//! Bundled example series and pairs, each with the values it is expected to produce.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlinalg::{int, unit_vector, zero_vector, Matrix, Scalar};
use crate::recognition::{hankel_rank_probe, is_symmetric, minimize, FnOracle, ProbeStatus, SeriesOracle};
use crate::series::{LinearRep, SeriesPair};
use crate::syntactic::syntactic_data;
use crate::words::{Alphabet, Word};

/// Where a fixture's series comes from.
pub enum FixtureSeries {
    Rep(LinearRep),
    /// A series known only by evaluation.
    Oracle(Alphabet, fn(&Word) -> Scalar),
}

impl FixtureSeries {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            FixtureSeries::Rep(r) => r.alphabet(),
            FixtureSeries::Oracle(a, _) => a,
        }
    }

    pub fn value(&self, w: &Word) -> Scalar {
        match self {
            FixtureSeries::Rep(r) => r.eval(w),
            FixtureSeries::Oracle(_, f) => f(w),
        }
    }

    pub fn probe(&self, cap: usize) -> crate::recognition::HankelProbe {
        match self {
            FixtureSeries::Rep(r) => hankel_rank_probe(r, cap),
            FixtureSeries::Oracle(a, f) => {
                let oracle = FnOracle { letters: a.size(), eval: f };
                hankel_rank_probe(&oracle as &dyn SeriesOracle, cap)
            }
        }
    }
}

/// Values a fixture must reproduce.
#[derive(Clone, Debug, Default)]
pub struct Expectations {
    /// Hankel rank, or `None` when the probe must exceed a cap of 4.
    pub hankel_rank: Option<usize>,
    pub minimal_dim: Option<usize>,
    pub symmetric: Option<bool>,
    /// `(d, ell, r)` of the fixture's pair.
    pub syntactic: Option<(usize, usize, usize)>,
}

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub series: FixtureSeries,
    pub pair: Option<SeriesPair>,
    pub expect: Expectations,
}

pub const NAMES: [&str; 13] = [
    "geometric",
    "geometric-3",
    "fib",
    "fib-padded",
    "snts",
    "m2-x11",
    "m2-trace",
    "path",
    "brauer-0",
    "brauer-1",
    "brauer-3",
    "one-letter",
    "path-trace",
];

fn alphabet(names: &[&str]) -> Alphabet {
    Alphabet::new(names.iter().copied()).expect("fixture alphabet")
}

fn rep(a: &Alphabet, lambda: Vec<Scalar>, psi: Vec<Matrix>, mu: Vec<Scalar>) -> LinearRep {
    LinearRep::new(a.clone(), lambda, psi, mu).expect("fixture representation")
}

pub fn geometric(c: i64) -> LinearRep {
    rep(&alphabet(&["s"]), vec![int(1)], vec![Matrix::from_i64(&[&[c]])], vec![int(1)])
}

/// `α(sⁿ) = Fₙ` with `F₀ = 0`, `F₁ = 1`.
pub fn fibonacci() -> LinearRep {
    rep(&alphabet(&["s"]), unit_vector(2, 1), vec![Matrix::from_i64(&[&[1, 1], &[1, 0]])], unit_vector(2, 0))
}

/// The Fibonacci series in dimension 5: three extra states that are never
/// reached, then an integral change of basis.
pub fn fibonacci_padded() -> LinearRep {
    let f = fibonacci();
    let mut psi = Matrix::zeros(5, 5);
    psi.set_block(0, 0, f.psi(0));
    psi.set_block(0, 2, &Matrix::from_i64(&[&[1, 0, 2], &[0, 1, 1]]));
    psi.set_block(2, 2, &Matrix::from_i64(&[&[0, 1, 0], &[1, 1, 0], &[2, 0, 1]]));
    let mut lambda = zero_vector(5);
    lambda[..2].clone_from_slice(f.lambda());
    let mut mu = vec![int(0), int(0), int(1), int(-1), int(3)];
    mu[..2].clone_from_slice(f.mu());
    // P = I + N with N strictly upper triangular, so P⁻¹ = Σ (−N)ᵏ
    let mut n = Matrix::zeros(5, 5);
    for (i, j, v) in [(0, 1, 1), (0, 3, 2), (1, 2, -1), (2, 4, 1), (3, 4, 1), (1, 4, 2)] {
        n[(i, j)] = int(v);
    }
    let p = Matrix::identity(5).add(&n).expect("square");
    let minus_n = n.scale(&-Scalar::one());
    let mut p_inv = Matrix::identity(5);
    let mut power = Matrix::identity(5);
    for _ in 0..4 {
        power = power.mul(&minus_n).expect("square");
        p_inv = p_inv.add(&power).expect("square");
    }
    let conj = p.mul(&psi).and_then(|m| m.mul(&p_inv)).expect("square");
    rep(&alphabet(&["s"]), p.mul_vec(&lambda), vec![conj], p_inv.vec_mul(&mu))
}

/// Characteristic series of `{ sⁿ t sⁿ : n ≥ 0 }`; not recognizable.
pub fn snts_value(w: &Word) -> Scalar {
    let l = w.letters();
    let ts: Vec<usize> = (0..l.len()).filter(|&i| l[i] == 1).collect();
    if ts.len() == 1 && 2 * ts[0] + 1 == l.len() {
        int(1)
    } else {
        int(0)
    }
}

fn e12_e21() -> Vec<Matrix> {
    vec![Matrix::from_i64(&[&[0, 1], &[0, 0]]), Matrix::from_i64(&[&[0, 0], &[1, 0]])]
}

/// `x ↦ x₁₁` on the algebra generated by `a = E₁₂`, `b = E₂₁`.
pub fn m2_x11() -> LinearRep {
    rep(&alphabet(&["a", "b"]), unit_vector(2, 0), e12_e21(), unit_vector(2, 0))
}

/// Left multiplication on a row-major `n×n` matrix.
pub fn left_multiplication(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut l = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                l[(i * n + j, k * n + j)] = m[(i, k)].clone();
            }
        }
    }
    l
}

/// The matrix trace of products of `E₁₂`, `E₂₁`.
pub fn m2_trace() -> LinearRep {
    let id = vec![int(1), int(0), int(0), int(1)];
    let psi = e12_e21().iter().map(left_multiplication).collect();
    rep(&alphabet(&["a", "b"]), id.clone(), psi, id)
}

/// Upper triangular 2×2 matrices generated by `a = E₁₁ + E₁₂` and
/// `b = E₂₂`, with the functional `x ↦ x₁₂`.
pub fn path_x12() -> LinearRep {
    let a = Matrix::from_i64(&[&[1, 1], &[0, 0]]);
    let b = Matrix::from_i64(&[&[0, 0], &[0, 1]]);
    rep(&alphabet(&["a", "b"]), unit_vector(2, 1), vec![a, b], unit_vector(2, 0))
}

/// Empty alphabet with a circle worth `lambda`.
pub fn brauer(lambda: i64) -> SeriesPair {
    let a = Alphabet::empty();
    SeriesPair::circ_only(LinearRep::constant(&a, int(lambda))).expect("constants are symmetric")
}

/// `α•(sⁿ) = 2ⁿ` and `α°(sⁿ) = Fₙ₊₁`.
pub fn one_letter_pair() -> SeriesPair {
    let circ = rep(&alphabet(&["s"]), unit_vector(2, 0), vec![Matrix::from_i64(&[&[1, 1], &[1, 0]])], unit_vector(2, 0));
    SeriesPair::new(geometric(2), circ).expect("one-letter series are symmetric")
}

fn pair(bullet: LinearRep, circ: LinearRep) -> SeriesPair {
    SeriesPair::new(bullet, circ).expect("fixture pair")
}

fn exp(rank: Option<usize>, min: Option<usize>, sym: Option<bool>, syn: Option<(usize, usize, usize)>) -> Expectations {
    Expectations { hankel_rank: rank, minimal_dim: min, symmetric: sym, syntactic: syn }
}

pub fn load(name: &str) -> Result<Fixture> {
    let fx = |name, description, series: LinearRep, pair: Option<SeriesPair>, expect| Fixture {
        name,
        description,
        series: FixtureSeries::Rep(series),
        pair,
        expect,
    };
    Ok(match name {
        "geometric" => {
            let g = geometric(2);
            fx("geometric", "α(sⁿ) = 2ⁿ", g.clone(), Some(pair(g.clone(), g)), exp(Some(1), Some(1), Some(true), Some((1, 1, 1))))
        }
        "geometric-3" => {
            let g = geometric(3);
            fx("geometric-3", "α(sⁿ) = 3ⁿ", g.clone(), Some(pair(g.clone(), g)), exp(Some(1), Some(1), Some(true), Some((1, 1, 1))))
        }
        "fib" => {
            let f = fibonacci();
            let p = SeriesPair::circ_only(f.clone()).expect("symmetric");
            fx("fib", "α(sⁿ) = Fₙ, the Fibonacci numbers", f, Some(p), exp(Some(2), Some(2), Some(true), Some((2, 0, 0))))
        }
        "fib-padded" => {
            let f = fibonacci_padded();
            let p = SeriesPair::circ_only(f.clone()).expect("symmetric");
            fx("fib-padded", "the Fibonacci series in a non-minimal dimension-5 representation", f, Some(p), exp(Some(2), Some(2), Some(true), Some((2, 0, 0))))
        }
        "snts" => Fixture {
            name: "snts",
            description: "characteristic series of { sⁿ t sⁿ }; not recognizable",
            series: FixtureSeries::Oracle(alphabet(&["s", "t"]), snts_value),
            pair: None,
            expect: exp(None, None, None, None),
        },
        "m2-x11" => {
            let a = m2_x11();
            let z = LinearRep::zero(a.alphabet());
            fx("m2-x11", "x ↦ x₁₁ on M₂ generated by E₁₂, E₂₁; pair (x₁₁, 0)", a.clone(), Some(pair(a, z)), exp(Some(2), Some(2), Some(false), Some((4, 2, 2))))
        }
        "m2-trace" => {
            let t = m2_trace();
            let p = SeriesPair::circ_only(t.clone()).expect("trace is symmetric");
            fx("m2-trace", "matrix trace on M₂ generated by E₁₂, E₂₁; pair (0, tr)", t, Some(p), exp(Some(4), Some(4), Some(true), Some((4, 0, 0))))
        }
        "path" => {
            let a = path_x12();
            let z = LinearRep::zero(a.alphabet());
            fx("path", "x ↦ x₁₂ on the path algebra of 0 → 1, generated by (0)+(01) and (1); pair (α, 0)", a.clone(), Some(pair(a, z)), exp(Some(2), Some(2), Some(false), Some((3, 2, 2))))
        }
        "path-trace" => {
            // same algebra with the trace on circles
            let a = path_x12();
            let circ = rep(a.alphabet(), vec![int(1), int(0), int(0), int(1)], a.psis().iter().map(left_multiplication).collect(), vec![int(1), int(0), int(0), int(1)]);
            fx("path-trace", "pair (x₁₂, tr) on the path algebra", a.clone(), Some(pair(a, circ)), exp(Some(2), Some(2), Some(false), Some((3, 2, 2))))
        }
        "brauer-0" | "brauer-1" | "brauer-3" => {
            let lambda: i64 = name[7..].parse().expect("digit");
            let p = brauer(lambda);
            let nz = usize::from(lambda != 0);
            let (name, description) = match lambda {
                0 => ("brauer-0", "no letters; circles worth 0"),
                1 => ("brauer-1", "no letters; circles worth 1"),
                _ => ("brauer-3", "no letters; circles worth 3"),
            };
            fx(name, description, p.circ.clone(), Some(p), exp(Some(nz), Some(nz), Some(true), Some((nz, 0, 0))))
        }
        "one-letter" => {
            let p = one_letter_pair();
            fx("one-letter", "α•(sⁿ) = 2ⁿ on intervals, α°(sⁿ) = Fₙ₊₁ on circles", p.circ.clone(), Some(p), exp(Some(2), Some(2), Some(true), Some((3, 1, 1))))
        }
        other => return Err(Error::Invalid(format!("unknown fixture `{other}`; known: {}", NAMES.join(", ")))),
    })
}

/// One line of a self-test run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub fixture: &'static str,
    pub what: &'static str,
    pub expected: String,
    pub got: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

/// Recomputes every expectation of the fixture.
pub fn self_test(f: &Fixture) -> Vec<Check> {
    let mut out = Vec::new();
    let mut push = |what, expected: String, got: String| out.push(Check { fixture: f.name, what, expected, got });
    let probe = f.series.probe(4.max(f.expect.hankel_rank.unwrap_or(0)));
    match f.expect.hankel_rank {
        Some(r) => push("hankel_rank", r.to_string(), match probe.status {
            ProbeStatus::Stabilized => probe.rank.to_string(),
            ProbeStatus::ExceededCap(c) => format!("exceeded cap {c}"),
        }),
        None => push("hankel_rank", "exceeded cap 4".into(), match probe.status {
            ProbeStatus::Stabilized => probe.rank.to_string(),
            ProbeStatus::ExceededCap(c) => format!("exceeded cap {c}"),
        }),
    }
    if let FixtureSeries::Rep(r) = &f.series {
        if let Some(m) = f.expect.minimal_dim {
            push("minimal_dim", m.to_string(), minimize(r).dim().to_string());
        }
        if let Some(s) = f.expect.symmetric {
            push("symmetric", s.to_string(), is_symmetric(r).symmetric.to_string());
        }
    }
    if let (Some((d, ell, r)), Some(p)) = (f.expect.syntactic, &f.pair) {
        let data = syntactic_data(p);
        push("syntactic", format!("{d},{ell},{r}"), format!("{},{},{}", data.d, data.ell, data.r));
    }
    out
}
