//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits non-zero if any fails. All comparisons are exact.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::Rng;

use common::*;
use serialcob::cobordism::{close_trace, compose, involution, tensor, Mode, Morphism, SignSeq};
use serialcob::exactlinalg::Scalar;
use serialcob::fixtures::{self, FixtureSeries};
use serialcob::gligible::{gram_matrix, quotient, GramReport};
use serialcob::recognition::{aver_eval, average, hankel_rank_probe, is_symmetric, minimize, ProbeStatus};
use serialcob::series::SeriesPair;
use serialcob::skein::{enumerate_matchings, BasisElement, SkeinCategory, SkeinMorphism};
use serialcob::syntactic::{is_frobenius_form, is_syntactic_pair, syntactic_data};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s(t: &str) -> SignSeq {
    SignSeq::parse(t).unwrap()
}

fn matching_counts() -> Outcome {
    let a = enumerate_matchings(&s("+"), &s("+-"), Mode::WithFloating).len();
    let b = enumerate_matchings(&s("+"), &s("++-"), Mode::WithFloating).len();
    ensure(a == 3 && b == 7, || format!("got {a} and {b}"))?;
    ensure(oracle_matching_count(&s("+"), &s("+-"), Mode::WithFloating) == 3, || "oracle disagrees".into())?;
    Ok(format!("|I(+,+-)| = {a}, |I(+,++-)| = {b}"))
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn skein_dimension_corollary() -> Outcome {
    let cat = SkeinCategory::new(fixtures::load("m2-x11").unwrap().pair.unwrap(), Mode::NoFloating);
    ensure(cat.data.d == 4, || format!("d = {}", cat.data.d))?;
    let mut checked = 0;
    for total in 0..=6 {
        for (a, b) in object_pairs_of_total_length(total) {
            if total % 2 != 0 || a.weight() != b.weight() {
                continue;
            }
            let n = (total / 2) as u128;
            let expected = factorial(n) * 4u128.pow(n as u32);
            let formula = cat.hom_dim(&a, &b);
            let enumerated = cat.basis(&a, &b).len() as u128;
            ensure(formula == expected && enumerated == expected, || {
                format!("Hom({a},{b}): formula {formula}, enumerated {enumerated}, expected {expected}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("n!·4ⁿ on {checked} balanced pairs with n ≤ 3"))
}

fn end_plus_split() -> Outcome {
    let plus = s("+");
    let mut lines = Vec::new();
    for name in fixtures::NAMES {
        let Some(pair) = fixtures::load(name).unwrap().pair else { continue };
        let cat = SkeinCategory::new(pair, Mode::WithFloating);
        let (d, ell, r) = (cat.data.d, cat.data.ell, cat.data.r);
        let basis = cat.basis(&plus, &plus);
        ensure(basis.len() == d + ell * r, || format!("{name}: {} ≠ {d} + {ell}·{r}", basis.len()))?;
        let halves: Vec<&BasisElement> = basis.iter().filter(|b| b.shape.arcs().len() == 2).collect();
        for x in &halves {
            for y in &halves {
                // arc order: the half-out arc (floating tail) precedes the half-in arc
                let (x1, x2) = (x.decor[0], x.decor[1]);
                let (y1, y2) = (y.decor[0], y.decor[1]);
                let w = cat.data.right_basis_words[x2].concat(&cat.data.left_basis_words[y1]);
                let factor = cat.pair.bullet.eval(&w);
                let expected =
                    SkeinMorphism::basis(BasisElement { shape: x.shape.clone(), decor: vec![x1, y2] }).scale(&factor);
                let got = cat.compose_basis(x, y).unwrap();
                ensure(got == expected, || format!("{name}: ideal law fails on {x:?} ∘ {y:?}"))?;
            }
        }
        lines.push(format!("{name} {}", basis.len()));
    }
    Ok(format!("dim End(+) = d + ell·r and ideal law: {}", lines.join(", ")))
}

fn syntactic_dimensions() -> Outcome {
    let path = syntactic_data(&fixtures::load("path").unwrap().pair.unwrap());
    ensure(path.d == 3, || format!("path d = {}", path.d))?;
    let m2 = syntactic_data(&fixtures::load("m2-x11").unwrap().pair.unwrap());
    ensure(m2.d == 4, || format!("M₂ d = {}", m2.d))?;
    let alg = m2.algebra();
    ensure(is_syntactic_pair(&alg, &m2.form_bullet), || "x₁₁ should be syntactic".into())?;
    ensure(!is_frobenius_form(&alg, &m2.form_bullet), || "x₁₁ should not be Frobenius".into())?;
    let tr = syntactic_data(&fixtures::load("m2-trace").unwrap().pair.unwrap());
    ensure(is_frobenius_form(&tr.algebra(), &tr.form_circ), || "trace should be Frobenius".into())?;
    Ok("path d = 3; M₂/x₁₁ d = 4 syntactic, not Frobenius; M₂/trace Frobenius".into())
}

fn recognition_suite() -> Outcome {
    let fib = fixtures::fibonacci();
    let p = hankel_rank_probe(&fib, 16);
    ensure(p.rank == 2 && p.status == ProbeStatus::Stabilized, || format!("fib rank {}", p.rank))?;
    let padded = fixtures::fibonacci_padded();
    let min = minimize(&padded);
    ensure(padded.dim() == 5 && min.dim() == 2, || format!("padded {} → {}", padded.dim(), min.dim()))?;
    for w in all_words(1, 8) {
        ensure(min.eval(&w) == padded.eval(&w), || format!("minimized differs on {w:?}"))?;
    }
    let g = hankel_rank_probe(&fixtures::geometric(2), 16);
    ensure(g.rank == 1, || format!("geometric rank {}", g.rank))?;
    let FixtureSeries::Oracle(..) = fixtures::load("snts").unwrap().series else {
        return Err("snts must be an oracle".into());
    };
    let probe = fixtures::load("snts").unwrap().series.probe(4);
    ensure(probe.status == ProbeStatus::ExceededCap(4), || format!("snts status {:?}", probe.status))?;
    Ok("fib rank 2; padded dim 5 → 2; geometric rank 1; snts exceeds cap 4".into())
}

fn averaging() -> Outcome {
    let mut rng = rng(0xa7e4);
    let a = two_letters();
    for trial in 0..20 {
        let dim = rng.gen_range(1..=3);
        let r = random_rep(&mut rng, &a, dim);
        let alpha = |w: &serialcob::words::Word| r.eval(w);
        let avg = average(&r);
        for w in all_words(2, 4) {
            let oracle = aver_oracle(&alpha, &w);
            ensure(aver_eval(&r, &w) == oracle, || format!("trial {trial}: aver_eval differs on {w:?}"))?;
            ensure(avg.eval(&w) == oracle, || format!("trial {trial}: average() differs on {w:?}"))?;
        }
        ensure(is_symmetric(&avg).symmetric, || format!("trial {trial}: average is not symmetric"))?;
    }
    Ok("20 random reps: aver_eval = splitting sum = average() on |w| ≤ 4, all symmetric".into())
}

fn category_laws() -> Outcome {
    let pair = m2_mixed_pair();
    let rev = pair.reversed();
    let mode = Mode::WithFloating;
    let mut rng = rng(0xc0b0);
    let mut cases = 0;
    let rm = |rng: &mut _, a: &SignSeq, b: &SignSeq| random_morphism(rng, a, b, mode, 2, 2);
    while cases < 240 {
        let objs: Vec<SignSeq> = (0..4).map(|_| random_object(&mut rng, 3)).collect();
        let h = rm(&mut rng, &objs[0], &objs[1]);
        let g = rm(&mut rng, &objs[1], &objs[2]);
        let f = rm(&mut rng, &objs[2], &objs[3]);
        let fg_h = compose(&compose(&f, &g, &pair).unwrap(), &h, &pair).unwrap();
        let f_gh = compose(&f, &compose(&g, &h, &pair).unwrap(), &pair).unwrap();
        ensure(fg_h == f_gh, || format!("associativity fails on case {cases}"))?;

        let id_src = Morphism::identity(&objs[1]);
        let id_tgt = Morphism::identity(&objs[2]);
        ensure(compose(&g, &id_src, &pair).unwrap() == g && compose(&id_tgt, &g, &pair).unwrap() == g, || {
            format!("unit law fails on case {cases}")
        })?;

        let g2 = rm(&mut rng, &objs[0], &objs[3]);
        let f2 = rm(&mut rng, &objs[3], &objs[1]);
        let lhs = compose(&tensor(&g, &f2), &tensor(&h, &g2), &pair).unwrap();
        let rhs = tensor(&compose(&g, &h, &pair).unwrap(), &compose(&f2, &g2, &pair).unwrap());
        ensure(lhs == rhs, || format!("interchange fails on case {cases}"))?;

        let inv_fg = involution(&compose(&f, &g, &pair).unwrap());
        let fg_inv = compose(&involution(&g), &involution(&f), &rev).unwrap();
        ensure(inv_fg == fg_inv, || format!("involution is not contravariant on case {cases}"))?;
        ensure(involution(&involution(&f)) == f, || format!("involution is not involutive on case {cases}"))?;

        let x = rm(&mut rng, &objs[1], &objs[0]);
        let tr_xh = close_trace(&compose(&x, &h, &pair).unwrap(), &pair).unwrap();
        let tr_hx = close_trace(&compose(&h, &x, &pair).unwrap(), &pair).unwrap();
        ensure(tr_xh == tr_hx, || format!("trace symmetry fails on case {cases}"))?;
        cases += 1;
    }
    Ok(format!("{cases} random cases of associativity, units, interchange, involution, tr(xy) = tr(yx)"))
}

fn gligible_structure() -> Outcome {
    let cat = SkeinCategory::new(fixtures::load("m2-x11").unwrap().pair.unwrap(), Mode::WithFloating);
    let objects: Vec<SignSeq> = ["", "+", "-", "+-", "-+", "++"].iter().map(|t| s(t)).collect();
    let mut grams: BTreeMap<(SignSeq, SignSeq), GramReport> = BTreeMap::new();
    let mut gram = |a: &SignSeq, b: &SignSeq| {
        grams.entry((a.clone(), b.clone())).or_insert_with(|| gram_matrix(&cat, a, b)).clone()
    };
    let mut rng = rng(0x91a1);
    let mut trials = 0;
    while trials < 50 {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| objects[rng.gen_range(0..objects.len())].clone();
        let (e, e1, e2, e3) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let report = gram(&e, &e1);
        if report.kernel_basis.is_empty() {
            continue;
        }
        let k = &report.kernel_basis[rng.gen_range(0..report.kernel_basis.len())];
        let y = SkeinMorphism::from_vector(e.clone(), e1.clone(), &report.col_basis, k);
        let post = cat.basis(&e1, &e2);
        let pre = cat.basis(&e3, &e);
        if post.is_empty() || pre.is_empty() {
            continue;
        }
        let f = SkeinMorphism::basis(post[rng.gen_range(0..post.len())].clone());
        let g = SkeinMorphism::basis(pre[rng.gen_range(0..pre.len())].clone());
        let fyg = cat.compose(&f, &cat.compose(&y, &g).unwrap()).unwrap();
        let target = gram(&e3, &e2);
        let v = fyg.vector(&target.col_basis).ok_or("composite left the basis")?;
        ensure(target.is_negligible(&v), || format!("ideal property fails for {e3} → {e} → {e1} → {e2}"))?;
        trials += 1;
    }
    for (a, b) in [("+", "+"), ("+-", "+-"), ("", "+-"), ("+", "++-")] {
        let q = quotient(&cat, &s(a), &s(b));
        let g = q.restricted_gram();
        ensure(g.rows() == q.dim() && g.rank() == q.dim(), || format!("pairing on ({a},{b}) is not perfect"))?;
    }
    let zero = SkeinCategory::new(fixtures::brauer(0), Mode::NoFloating);
    let three = SkeinCategory::new(fixtures::brauer(3), Mode::NoFloating);
    let q0 = quotient(&zero, &s("+"), &s("+")).dim();
    let q3 = quotient(&three, &s("+"), &s("+")).dim();
    ensure(q0 == 0 && q3 == 1, || format!("brauer End(+) dims {q0}, {q3}"))?;
    Ok(format!("{trials} ideal checks; perfect pairings; λ=0 → 0, λ=3 → 1"))
}

fn specialization() -> Outcome {
    let pair = SeriesPair::circ_only(fixtures::m2_trace()).unwrap();
    let with = SkeinCategory::new(pair.clone(), Mode::WithFloating);
    let without = SkeinCategory::new(pair, Mode::NoFloating);
    let mut checked = 0;
    for total in 0..=4 {
        for (a, b) in object_pairs_of_total_length(total) {
            let (bw, bn) = (with.basis(&a, &b), without.basis(&a, &b));
            ensure(bw == bn && with.hom_dim(&a, &b) == without.hom_dim(&a, &b), || format!("skein dims differ on ({a},{b})"))?;
            let (qw, qn) = (quotient(&with, &a, &b).dim(), quotient(&without, &a, &b).dim());
            ensure(qw == qn, || format!("quotient dims differ on ({a},{b}): {qw} vs {qn}"))?;
            checked += 1;
        }
    }
    Ok(format!("skein and quotient dims agree on {checked} hom spaces"))
}

fn codimension_theorem() -> Outcome {
    let mut lines = Vec::new();
    for name in fixtures::NAMES {
        let Some(pair) = fixtures::load(name).unwrap().pair else { continue };
        let data = syntactic_data(&pair);
        let min = minimize(&pair.bullet);
        ensure(data.ell == min.dim() && data.r == min.dim(), || {
            format!("{name}: ell {} r {} min {}", data.ell, data.r, min.dim())
        })?;
        let letters = pair.alphabet().size();
        let words = all_words(letters, data.ell + 1);
        let reach: Vec<Vec<Scalar>> = words.iter().map(|w| min.reach(w)).collect();
        let observe: Vec<Vec<Scalar>> = words.iter().map(|w| min.observe(w)).collect();
        ensure(oracle_rank(&reach) == data.ell && oracle_rank(&observe) == data.r, || format!("{name}: image ranks differ"))?;
        // codimension of the left ideal from values alone: rank of [α(u·w)]
        let hankel: Vec<Vec<Scalar>> =
            words.iter().map(|u| words.iter().map(|w| pair.bullet.eval(&u.concat(w))).collect()).collect();
        ensure(oracle_rank(&hankel) == data.ell, || format!("{name}: Hankel codimension differs"))?;
        lines.push(format!("{name} {}", data.ell));
    }
    Ok(format!("ell = r = dim minimize(α•): {}", lines.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("matching counts", matching_counts),
        ("skein dimension n!·dⁿ", skein_dimension_corollary),
        ("End(+) = d + ell·r with ideal law", end_plus_split),
        ("syntactic dimensions and forms", syntactic_dimensions),
        ("recognition suite", recognition_suite),
        ("averaging", averaging),
        ("category laws", category_laws),
        ("gligible structure", gligible_structure),
        ("specialization equivalence", specialization),
        ("one-sided codimension", codimension_theorem),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
