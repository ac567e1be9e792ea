//! Command-line front end. Every command prints one JSON report.
//!
//! Exit codes: 0 on success, 1 when a self-test fails, 2 on invalid input and
//! 3 when a series is refused because its Hankel probe exceeded the cap.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cobordism::{compose, Mode, Morphism, SignSeq};
use crate::error::{Error, Result};
use crate::exactlinalg::{format_scalar, parse_scalar, Scalar, Vector};
use crate::fixtures::{self, FixtureSeries};
use crate::gligible::{gram_matrix, quotient, state_space, tca_multiply};
use crate::recognition::{average, equivalent, hankel_rank_probe, is_symmetric, minimize, ProbeStatus};
use crate::series::{expr_to_rep, LinearRep, RationalExpr, SeriesPair};
use crate::skein::{enumerate_matchings, SkeinCategory};
use crate::syntactic::{is_frobenius_form, is_syntactic_pair, syntactic_data};
use crate::words::Alphabet;

#[derive(Parser, Debug)]
#[command(name = "serialcob", version, about = "Exact computations with recognizable series and decorated cobordism categories")]
pub struct Cli {
    /// Category: `c` forbids floating endpoints, `ctilde` allows them.
    #[arg(long, global = true, value_enum, default_value = "ctilde")]
    mode: ModeArg,
    /// Largest Hankel rank accepted before a series is refused.
    #[arg(long, global = true, default_value_t = 16)]
    cap: usize,
    /// Use a bundled fixture as input.
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// Read the input series, pair or workspace from a JSON file.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Entry of a workspace file to use.
    #[arg(long, global = true)]
    name: Option<String>,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Group,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    C,
    Ctilde,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::C => Mode::NoFloating,
            ModeArg::Ctilde => Mode::WithFloating,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Operations on a single series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Operations in the skein and quotient categories of a pair.
    #[command(subcommand)]
    Cat(CatCmd),
    /// The bundled fixture library.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    /// Evaluate on words such as `s1.s2` (`e` is the empty word).
    Eval {
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
    Minimize,
    /// Compare with a second series.
    Equiv {
        #[arg(long)]
        other: Option<PathBuf>,
        #[arg(long)]
        other_fixture: Option<String>,
    },
    Hankel,
    Symmetric,
    Average,
    Syntactic,
}

#[derive(Args, Debug)]
struct Hom {
    #[arg(long, allow_hyphen_values = true)]
    source: String,
    #[arg(long, allow_hyphen_values = true)]
    target: String,
}

#[derive(Subcommand, Debug)]
enum CatCmd {
    /// Count undecorated diagrams.
    Matchings {
        #[command(flatten)]
        hom: Hom,
        #[arg(long)]
        list: bool,
    },
    Dim {
        #[command(flatten)]
        hom: Hom,
    },
    Basis {
        #[command(flatten)]
        hom: Hom,
    },
    /// Compose two morphisms given as JSON files, `f ∘ g`.
    Compose {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    EndoTable {
        #[arg(long, allow_hyphen_values = true)]
        object: String,
    },
    Gram {
        #[command(flatten)]
        hom: Hom,
    },
    QuotientDim {
        #[command(flatten)]
        hom: Hom,
    },
    Statespace {
        #[arg(long, allow_hyphen_values = true)]
        object: String,
    },
    /// Multiply classes in A(n) and A(m); coordinates are comma separated.
    TcaMul {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    List,
    SelfTest,
}

/// Named series and pairs loaded from one JSON document.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub alphabet: Alphabet,
    pub series: BTreeMap<String, LinearRep>,
    pub pairs: BTreeMap<String, SeriesPair>,
}

impl Workspace {
    /// Schema: `{"alphabet": [...], "series": {name: rep | expr}, "pairs": {name: {"bullet": name, "circ": name}}}`.
    pub fn from_json(v: &Value) -> Result<Workspace> {
        let alphabet = parse_alphabet(v.get("alphabet").ok_or_else(|| Error::Parse("workspace needs `alphabet`".into()))?)?;
        let mut series = BTreeMap::new();
        if let Some(obj) = v.get("series") {
            let obj = obj.as_object().ok_or_else(|| Error::Parse("`series` must be an object".into()))?;
            for (name, s) in obj {
                let rep = series_from_json(s, Some(&alphabet))?;
                if rep.alphabet() != &alphabet {
                    return Err(Error::AlphabetMismatch(format!("series `{name}` uses a different alphabet")));
                }
                series.insert(name.clone(), rep);
            }
        }
        let mut pairs = BTreeMap::new();
        if let Some(obj) = v.get("pairs") {
            let obj = obj.as_object().ok_or_else(|| Error::Parse("`pairs` must be an object".into()))?;
            for (name, p) in obj {
                let pick = |k: &str| -> Result<LinearRep> {
                    match p.get(k) {
                        None | Some(Value::Null) => Ok(LinearRep::zero(&alphabet)),
                        Some(Value::String(s)) => {
                            series.get(s).cloned().ok_or_else(|| Error::Invalid(format!("pair `{name}` names unknown series `{s}`")))
                        }
                        Some(other) => series_from_json(other, Some(&alphabet)),
                    }
                };
                pairs.insert(name.clone(), SeriesPair::new(pick("bullet")?, pick("circ")?)?);
            }
        }
        if series.keys().any(|k| pairs.contains_key(k)) {
            return Err(Error::Invalid("series and pair names must be distinct".into()));
        }
        Ok(Workspace { alphabet, series, pairs })
    }
}

fn parse_alphabet(v: &Value) -> Result<Alphabet> {
    let names = v.as_array().ok_or_else(|| Error::Parse("`alphabet` must be an array of strings".into()))?;
    let names = names
        .iter()
        .map(|n| n.as_str().map(str::to_string).ok_or_else(|| Error::Parse("letter names must be strings".into())))
        .collect::<Result<Vec<_>>>()?;
    Alphabet::new(names)
}

/// A representation, or `{"alphabet": [...], "expr": ...}`.
fn series_from_json(v: &Value, alphabet: Option<&Alphabet>) -> Result<LinearRep> {
    if v.get("psi").is_some() {
        return LinearRep::from_json(v);
    }
    let expr = v.get("expr").ok_or_else(|| Error::Parse("a series is a representation or an object with `expr`".into()))?;
    let a = match v.get("alphabet") {
        Some(a) => parse_alphabet(a)?,
        None => alphabet.cloned().ok_or_else(|| Error::Parse("expression needs an `alphabet`".into()))?,
    };
    expr_to_rep(&RationalExpr::from_json(expr, &a)?, &a)
}

/// What an input document denotes.
enum Input {
    Series(LinearRep),
    Oracle(FixtureSeries),
    Pair(SeriesPair),
}

struct Context {
    mode: Mode,
    cap: usize,
    input: Option<Input>,
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_input(cli: &Cli) -> Result<Option<Input>> {
    match (&cli.fixture, &cli.input) {
        (Some(_), Some(_)) => Err(Error::Invalid("use either --fixture or --in".into())),
        (Some(name), None) => {
            let f = fixtures::load(name)?;
            let wants_pair = matches!(cli.command, Group::Cat(_) | Group::Series(SeriesCmd::Syntactic));
            Ok(Some(match (f.series, f.pair) {
                (FixtureSeries::Rep(_), Some(p)) if wants_pair => Input::Pair(p),
                (FixtureSeries::Rep(r), _) => Input::Series(r),
                (oracle, _) => Input::Oracle(oracle),
            }))
        }
        (None, Some(path)) => {
            let v = read_json(path)?;
            document_input(&v, cli.name.as_deref()).map(Some)
        }
        (None, None) => Ok(None),
    }
}

fn document_input(v: &Value, name: Option<&str>) -> Result<Input> {
    if v.get("series").is_some() || v.get("pairs").is_some() {
        let ws = Workspace::from_json(v)?;
        let name = match name {
            Some(n) => n.to_string(),
            None => ws
                .pairs
                .keys()
                .chain(ws.series.keys())
                .next()
                .cloned()
                .ok_or_else(|| Error::Invalid("workspace is empty".into()))?,
        };
        if let Some(p) = ws.pairs.get(&name) {
            return Ok(Input::Pair(p.clone()));
        }
        return ws
            .series
            .get(&name)
            .cloned()
            .map(Input::Series)
            .ok_or_else(|| Error::Invalid(format!("workspace has no entry `{name}`")));
    }
    if v.get("bullet").is_some() || v.get("circ").is_some() {
        let first = v.get("bullet").or_else(|| v.get("circ")).expect("checked");
        let alphabet = series_from_json(first, None)?.alphabet().clone();
        let get = |k: &str| match v.get(k) {
            None | Some(Value::Null) => Ok(LinearRep::zero(&alphabet)),
            Some(s) => series_from_json(s, Some(&alphabet)),
        };
        return Ok(Input::Pair(SeriesPair::new(get("bullet")?, get("circ")?)?));
    }
    series_from_json(v, None).map(Input::Series)
}

impl Context {
    /// The input as a recognizable series; oracle inputs are probed and refused.
    fn series(&self) -> Result<LinearRep> {
        match &self.input {
            Some(Input::Series(r)) => Ok(r.clone()),
            Some(Input::Pair(p)) => Ok(if p.circ.dim() > 0 || p.bullet.dim() == 0 { p.circ.clone() } else { p.bullet.clone() }),
            Some(Input::Oracle(o)) => match o.probe(self.cap).status {
                ProbeStatus::ExceededCap(c) => Err(Error::ExceededCap(c)),
                ProbeStatus::Stabilized => Err(Error::Invalid("this fixture has no representation; only `series hankel` applies".into())),
            },
            None => Err(Error::Invalid("no input: pass --fixture NAME or --in FILE".into())),
        }
    }

    /// The input as a pair. A single series becomes `(0, α)` when symmetric and `(α, 0)` otherwise.
    fn pair(&self) -> Result<SeriesPair> {
        match &self.input {
            Some(Input::Pair(p)) => Ok(p.clone()),
            Some(Input::Series(r)) => {
                if is_symmetric(r).symmetric {
                    SeriesPair::circ_only(r.clone())
                } else {
                    SeriesPair::new(r.clone(), LinearRep::zero(r.alphabet()))
                }
            }
            _ => self.series().map(|_| unreachable!("oracle inputs are always refused")),
        }
    }

    fn category(&self) -> Result<SkeinCategory> {
        let pair = self.pair()?;
        for r in [&pair.bullet, &pair.circ] {
            if let ProbeStatus::ExceededCap(c) = hankel_rank_probe(r, self.cap).status {
                return Err(Error::ExceededCap(c));
            }
        }
        Ok(SkeinCategory::new(pair, self.mode))
    }
}

fn objects(hom: &Hom) -> Result<(SignSeq, SignSeq)> {
    Ok((SignSeq::parse(&hom.source)?, SignSeq::parse(&hom.target)?))
}

fn parse_coords(text: &str) -> Result<Vector> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| parse_scalar(t.trim())).collect()
}

fn scalars(v: &[Scalar]) -> Value {
    json!(v.iter().map(format_scalar).collect::<Vec<_>>())
}

fn run_series(cmd: &SeriesCmd, ctx: &Context) -> Result<Value> {
    if let SeriesCmd::Hankel = cmd {
        let probe = match &ctx.input {
            Some(Input::Oracle(o)) => o.probe(ctx.cap),
            _ => hankel_rank_probe(&ctx.series()?, ctx.cap),
        };
        return match probe.status {
            ProbeStatus::Stabilized => Ok(json!({"rank": probe.rank, "block_size": probe.prefix_words.len()})),
            ProbeStatus::ExceededCap(c) => Err(Error::ExceededCap(c)),
        };
    }
    if let SeriesCmd::Syntactic = cmd {
        let pair = ctx.pair()?;
        let data = syntactic_data(&pair);
        let alg = data.algebra();
        let mut report = data.to_json();
        let obj = report.as_object_mut().expect("object");
        obj.insert("syntactic_bullet".into(), json!(is_syntactic_pair(&alg, &data.form_bullet)));
        obj.insert("syntactic_circ".into(), json!(is_syntactic_pair(&alg, &data.form_circ)));
        obj.insert("frobenius_bullet".into(), json!(is_frobenius_form(&alg, &data.form_bullet)));
        obj.insert("frobenius_circ".into(), json!(is_frobenius_form(&alg, &data.form_circ)));
        return Ok(report);
    }
    let rep = ctx.series()?;
    let a = rep.alphabet().clone();
    Ok(match cmd {
        SeriesCmd::Eval { words } => {
            let values = words
                .iter()
                .map(|w| Ok(json!({"word": w, "value": format_scalar(&rep.eval(&a.parse_word(w)?))})))
                .collect::<Result<Vec<_>>>()?;
            json!({"values": values})
        }
        SeriesCmd::Minimize => minimize(&rep).to_json(),
        SeriesCmd::Equiv { other, other_fixture } => {
            let other = match (other, other_fixture) {
                (Some(path), None) => series_from_json(&read_json(path)?, Some(&a))?,
                (None, Some(name)) => match fixtures::load(name)?.series {
                    FixtureSeries::Rep(r) => r,
                    FixtureSeries::Oracle(..) => return Err(Error::Invalid(format!("fixture `{name}` has no representation"))),
                },
                _ => return Err(Error::Invalid("pass exactly one of --other or --other-fixture".into())),
            };
            let e = equivalent(&rep, &other)?;
            json!({"equivalent": e.equivalent, "witness": e.witness.map(|w| a.format_word(&w))})
        }
        SeriesCmd::Symmetric => {
            let c = is_symmetric(&rep);
            json!({"symmetric": c.symmetric, "witness": c.witness.map(|(u, v)| [a.format_word(&u), a.format_word(&v)])})
        }
        SeriesCmd::Average => average(&rep).to_json(),
        SeriesCmd::Hankel | SeriesCmd::Syntactic => unreachable!("handled above"),
    })
}

fn run_cat(cmd: &CatCmd, ctx: &Context) -> Result<Value> {
    if let CatCmd::Matchings { hom, list } = cmd {
        let (s, t) = objects(hom)?;
        let all = enumerate_matchings(&s, &t, ctx.mode);
        let mut report = json!({"count": all.len()});
        if *list {
            let a = Alphabet::empty();
            report["matchings"] = json!(all.iter().map(|d| d.to_json(&a)).collect::<Vec<_>>());
        }
        return Ok(report);
    }
    let cat = ctx.category()?;
    Ok(match cmd {
        CatCmd::Matchings { .. } => unreachable!("handled above"),
        CatCmd::Dim { hom } => {
            let (s, t) = objects(hom)?;
            json!({"dim": cat.hom_dim(&s, &t).to_string(), "enumerated": cat.basis(&s, &t).len()})
        }
        CatCmd::Basis { hom } => {
            let (s, t) = objects(hom)?;
            let basis = cat.basis(&s, &t);
            json!({"dim": basis.len(), "basis": basis.iter().map(|b| cat.basis_to_json(b)).collect::<Vec<_>>()})
        }
        CatCmd::Compose { f, g } => {
            let a = cat.pair.alphabet().clone();
            let f = Morphism::from_json(&read_json(f)?, &a)?;
            let g = Morphism::from_json(&read_json(g)?, &a)?;
            let raw = compose(&f, &g, &cat.pair)?;
            json!({"composite": raw.to_json(&a), "normal_form": cat.skein_to_json(&cat.normal_form(&raw))})
        }
        CatCmd::EndoTable { object } => {
            let eps = SignSeq::parse(object)?;
            let (basis, table) = cat.endo_table(&eps);
            let rows: Vec<Vec<Value>> = table.constants.iter().map(|r| r.iter().map(|c| scalars(c)).collect()).collect();
            json!({"dim": basis.len(), "basis": basis.iter().map(|b| cat.basis_to_json(b)).collect::<Vec<_>>(), "table": rows})
        }
        CatCmd::Gram { hom } => {
            let (s, t) = objects(hom)?;
            gram_matrix(&cat, &s, &t).to_json(&cat)
        }
        CatCmd::QuotientDim { hom } => {
            let (s, t) = objects(hom)?;
            let q = quotient(&cat, &s, &t);
            json!({"dim": q.dim(), "skein_dim": q.report.col_basis.len()})
        }
        CatCmd::Statespace { object } => {
            let st = state_space(&cat, &SignSeq::parse(object)?);
            json!({
                "object": st.eps.to_string(),
                "dim": st.dim,
                "representatives": st.representatives.iter().map(|b| cat.basis_to_json(b)).collect::<Vec<_>>(),
            })
        }
        CatCmd::TcaMul { n, m, x, y } => {
            let a = state_space(&cat, &SignSeq::balanced(*n));
            let b = state_space(&cat, &SignSeq::balanced(*m));
            let out = state_space(&cat, &SignSeq::balanced(n + m));
            let p = tca_multiply(&cat, &a, &parse_coords(x)?, &b, &parse_coords(y)?, &out)?;
            json!({"dims": [a.dim, b.dim, out.dim], "product": scalars(&p)})
        }
    })
}

fn run_fixtures(cmd: &FixturesCmd) -> (i32, Value) {
    match cmd {
        FixturesCmd::List => {
            let list: Vec<Value> = fixtures::NAMES
                .iter()
                .map(|n| {
                    let f = fixtures::load(n).expect("bundled fixture");
                    json!({"name": f.name, "description": f.description, "alphabet": f.series.alphabet().letters(), "has_pair": f.pair.is_some()})
                })
                .collect();
            (0, json!({"fixtures": list}))
        }
        FixturesCmd::SelfTest => {
            let mut checks = Vec::new();
            let mut ok = true;
            for n in fixtures::NAMES {
                for c in fixtures::self_test(&fixtures::load(n).expect("bundled fixture")) {
                    ok &= c.passed();
                    checks.push(json!({"fixture": c.fixture, "check": c.what, "expected": c.expected, "got": c.got, "pass": c.passed()}));
                }
            }
            (i32::from(!ok), json!({"passed": ok, "checks": checks}))
        }
    }
}

pub fn error_report(e: &Error) -> Value {
    let kind = match e {
        Error::AlphabetMismatch(_) => "alphabet_mismatch",
        Error::UnknownLetter(_) => "unknown_letter",
        Error::InvalidAlphabet(_) => "invalid_alphabet",
        Error::ImproperKleene(_) => "improper_kleene",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::BoundaryMismatch(_) => "boundary_mismatch",
        Error::MalformedDiagram(_) => "malformed_diagram",
        Error::NotViewable => "not_viewable",
        Error::NotInSpan => "not_in_span",
        Error::NotSymmetric { .. } => "not_symmetric",
        Error::ExceededCap(_) => "exceeded_cap",
        Error::Parse(_) => "parse",
        Error::Invalid(_) => "invalid",
    };
    let mut body = json!({"kind": kind, "message": e.to_string()});
    match e {
        Error::NotSymmetric { u, v } => body["witness"] = json!([u, v]),
        Error::ExceededCap(c) => body["cap"] = json!(c),
        _ => {}
    }
    json!({"error": body})
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ExceededCap(_) => 3,
        _ => 2,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("SERIALCOB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the CLI and returns the exit code with the rendered report.
pub fn run_to_string<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let report = json!({"error": {"kind": "usage", "message": e.to_string()}});
            return (2, serde_json::to_string_pretty(&report).expect("json"));
        }
    };
    configure_threads();
    let (code, report) = dispatch(&cli);
    let text = serde_json::to_string_pretty(&report).expect("json");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            let err = Error::Invalid(format!("cannot write {}: {e}", path.display()));
            return (2, serde_json::to_string_pretty(&error_report(&err)).expect("json"));
        }
        return (code, String::new());
    }
    (code, text)
}

fn dispatch(cli: &Cli) -> (i32, Value) {
    if let Group::Fixtures(cmd) = &cli.command {
        return run_fixtures(cmd);
    }
    let result = load_input(cli).and_then(|input| {
        let ctx = Context { mode: cli.mode.into(), cap: cli.cap, input };
        match &cli.command {
            Group::Series(cmd) => run_series(cmd, &ctx),
            Group::Cat(cmd) => run_cat(cmd, &ctx),
            Group::Fixtures(_) => unreachable!("handled above"),
        }
    });
    match result {
        Ok(v) => (0, v),
        Err(e) => (exit_code(&e), error_report(&e)),
    }
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, text) = run_to_string(args);
    if !text.is_empty() {
        use std::io::Write;
        // a closed pipe downstream is not an error of ours
        let _ = writeln!(std::io::stdout(), "{text}");
    }
    code
}
