//! One check per acceptance criterion. Each returns a short summary on
//! success and the first violation otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::Rng;

use stratcalc::context::type_of_term;
use stratcalc::elaborate::{elaborate, elaborate_program};
use stratcalc::eval::{apply_strategy, run_program};
use stratcalc::prelude::parse_with_prelude;
use stratcalc::syntax::StrategyKind;
use stratcalc::typecheck::{check_program, type_of_application, type_of_strategy};
use stratcalc::{EngineError, EvalConfig, Program, Reduct, Strategy, StrategyType, Term, TermType};

use super::gen::{self, Gen};
use super::{load, peano, read_program, term};

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// ---------------------------------------------------------------- problems

/// (program, input file, main type).
pub const PROBLEMS: [(&str, &str, &str); 5] = [
    ("problem1", "tree.term", "TP"),
    ("problem2", "gga.term", "TP"),
    ("problem3", "tree.term", "TU(Boolean)"),
    ("problem4", "tree.term", "TU(NatList)"),
    ("problem5", "gga.term", "TU(Nat)"),
];

/// Expected reducts, derived by hand and also kept as golden files.
pub const PROBLEM_OUTPUTS: [&str; 5] = [
    "fork(leaf(succ(zero)),leaf(succ(succ(zero))))",
    "g(g'(a))",
    "true",
    "cons(zero,cons(succ(zero),nil))",
    "succ(succ(zero))",
];

pub fn problems() -> Outcome {
    let start = Instant::now();
    for (i, (name, input, ty)) in PROBLEMS.iter().enumerate() {
        let p = load(&format!("{name}.strat"));
        let types = check_program(&p).map_err(|d| format!("{name}: {d:?}"))?;
        ensure!(types.main.to_string() == *ty, "{name}: main has type {}, expected {ty}", types.main);
        let e = elaborate_program(&p).map_err(|d| format!("{name}: {d:?}"))?;
        let t = term(&e, read_program(input).trim());
        let out = run_program(&e, &t, EvalConfig::default()).outcome.map_err(|err| format!("{name}: {err}"))?;
        let golden = read_program(&format!("{name}.expected"));
        ensure!(golden.trim() == PROBLEM_OUTPUTS[i], "{name}: golden file disagrees with the derived output");
        ensure!(out.to_string() == PROBLEM_OUTPUTS[i], "{name}: got {out}, expected {}", PROBLEM_OUTPUTS[i]);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("5 problems in {elapsed:?}"))
}

// ------------------------------------------------------- generated corpus

pub const CORPUS_SIZE: usize = 1000;
pub const CORPUS_SEED: u64 = 0x5eed_2002;
pub const INPUTS_PER_STRATEGY: usize = 2;
pub const CORPUS_FUEL: u64 = 1000;

pub struct Case {
    pub strategy: Strategy,
    pub elaborated: Strategy,
    pub ty: StrategyType,
    pub inputs: Vec<Term>,
}

pub struct Corpus {
    pub program: Program,
    pub cases: Vec<Case>,
    /// Generated strategies the typechecker rejected.
    pub rejected: usize,
}

/// Well-typed strategies of depth at most 5, each with input terms of
/// depth at most 4 in its domain.
pub fn corpus(size: usize) -> Corpus {
    let mut g = Gen::new(CORPUS_SEED);
    let ctx = g.program.context.clone();
    let (mut cases, mut rejected) = (Vec::new(), 0);
    while cases.len() < size {
        let target = g.target();
        let budget = g.rng.gen_range(1..=3);
        let s = g.strategy(&target, budget);
        if gen::strategy_depth(&s) > 5 {
            continue;
        }
        let Ok(ty) = type_of_strategy(&ctx, &s) else {
            rejected += 1;
            continue;
        };
        let elaborated = elaborate(&ctx, &s).expect("well-typed strategies elaborate");
        let inputs = (0..INPUTS_PER_STRATEGY).map(|_| g.input(&ty)).collect();
        cases.push(Case { strategy: s, elaborated, ty, inputs });
    }
    Corpus { program: g.program, cases, rejected }
}

fn show(s: &Strategy) -> String {
    stratcalc::printer::render_strategy(s)
}

pub fn subject_reduction(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let (ctx, defs) = (&c.program.context, &c.program.definitions);
    let (mut ok, mut failed, mut fuel) = (0, 0, 0);
    let mut kinds = BTreeSet::new();
    for case in &c.cases {
        collect_kinds(&case.strategy, &mut kinds);
        for t in &case.inputs {
            let predicted = type_of_application(ctx, &case.strategy, t)
                .map_err(|d| format!("{} @ {t}: inapplicable: {d}", show(&case.strategy)))?;
            for s in [&case.elaborated, &case.strategy] {
                let run = apply_strategy(ctx, defs, s, t, EvalConfig::with_fuel(CORPUS_FUEL));
                match run.outcome {
                    Ok(Reduct::Ok(r)) => {
                        let actual = type_of_term(ctx, &r).map_err(|e| format!("{} @ {t} => {r}: {e}", show(s)))?;
                        ensure!(r.is_ground(), "{} @ {t}: non-ground reduct {r}", show(s));
                        ensure!(
                            actual == predicted,
                            "{} @ {t} => {r} : {actual}, predicted {predicted}",
                            show(s)
                        );
                        ok += 1;
                    }
                    Ok(Reduct::Failure) => failed += 1,
                    Err(EngineError::FuelExhausted) => fuel += 1,
                    Err(e) => return Err(format!("{} @ {t}: {e}", show(s))),
                }
            }
        }
    }
    let missing: Vec<&str> = COMBINATOR_KINDS.iter().filter(|k| !kinds.contains(**k)).copied().collect();
    ensure!(missing.is_empty(), "generator never produced {missing:?}");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!(
        "{} strategies ({} generated ones rejected), {ok} reducts, {failed} failures, {fuel} out of fuel, 0 violations, {elapsed:?}",
        c.cases.len(),
        c.rejected
    ))
}

/// Every strategy form the corpus must exercise.
pub const COMBINATOR_KINDS: &[&str] = &[
    "rule", "id", "fail", "seq", "choice", "lchoice", "neg", "cong", "all", "one", "reduce", "select", "void",
    "spawn", "extend", "restrict", "annot", "amp", "guard", "tlchoice", "trchoice", "call",
];

fn collect_kinds(s: &Strategy, out: &mut BTreeSet<&'static str>) {
    use StrategyKind::*;
    let k = match &s.kind {
        Rule(_) => "rule",
        Id => "id",
        Fail => "fail",
        Seq(..) => "seq",
        Choice(..) => "choice",
        LChoice(..) | RChoice(..) => "lchoice",
        Neg(_) => "neg",
        CongCon(_) | CongFun(..) | CongUnit | CongPair(..) => "cong",
        All(_) => "all",
        One(_) => "one",
        Reduce(..) => "reduce",
        Select(_) => "select",
        Void => "void",
        Spawn(..) => "spawn",
        Extend(..) => "extend",
        Restrict(..) => "restrict",
        Annot(..) => "annot",
        Amp(..) => "amp",
        TypeGuard(..) => "guard",
        TLChoice(..) => "tlchoice",
        TRChoice(..) => "trchoice",
        Param(_) => "param",
        Call(..) => "call",
    };
    out.insert(k);
    children(s).into_iter().for_each(|c| collect_kinds(c, out));
}

fn children(s: &Strategy) -> Vec<&Strategy> {
    use StrategyKind::*;
    match &s.kind {
        Rule(r) => r.body.strategies(),
        Seq(a, b) | Choice(a, b) | LChoice(a, b) | RChoice(a, b) | CongPair(a, b) | Reduce(a, b) | Spawn(a, b)
        | Amp(a, b) | TLChoice(a, b) | TRChoice(a, b) => vec![a, b],
        Neg(a) | All(a) | One(a) | Select(a) | Extend(a, _) | Restrict(a, _) | Annot(a, _) => vec![a],
        CongFun(_, args) | Call(_, _, args) => args.iter().collect(),
        _ => vec![],
    }
}

/// The application judgement read as a relation: does `pi` applied to a
/// term of type `t` admit result type `r`?
fn admits(pi: &StrategyType, t: &TermType, r: &TermType) -> bool {
    match pi {
        StrategyType::Arrow(a, b) => a == t && b == r,
        StrategyType::TP => t == r,
        StrategyType::TU(u) => u == r,
        StrategyType::Amp(..) => pi.branches().into_iter().any(|b| admits(b, t, r)),
    }
}

pub fn unicity(c: &Corpus) -> Outcome {
    let ctx = &c.program.context;
    let base = [gen::nat(), gen::tree(), TermType::Unit];
    let mut candidates: Vec<TermType> = base.to_vec();
    for a in &base {
        for b in &base {
            candidates.push(TermType::pair(a.clone(), b.clone()));
        }
    }
    let mut applications = 0;
    for case in &c.cases {
        let s = &case.strategy;
        let again = type_of_strategy(ctx, s).map_err(|d| d.to_string())?;
        ensure!(again == case.ty, "{}: typed {} then {again}", show(s), case.ty);
        let elaborated = type_of_strategy(ctx, &case.elaborated).map_err(|d| format!("{}: {d}", show(s)))?;
        ensure!(elaborated.equiv(&case.ty), "{}: elaborated form has type {elaborated}, not {}", show(s), case.ty);
        for t in &case.inputs {
            let tt = type_of_term(ctx, t).map_err(|e| e.to_string())?;
            let r1 = type_of_application(ctx, s, t).map_err(|d| d.to_string())?;
            let r2 = type_of_application(ctx, s, t).map_err(|d| d.to_string())?;
            ensure!(r1 == r2, "{} @ {t}: {r1} then {r2}", show(s));
            let mut pool = candidates.clone();
            if !pool.contains(&r1) {
                pool.push(r1.clone());
            }
            let admitted: Vec<&TermType> = pool.iter().filter(|r| admits(&case.ty, &tt, r)).collect();
            ensure!(admitted == vec![&r1], "{} @ {t}: admits {admitted:?}, computed {r1}", show(s));
            applications += 1;
        }
    }
    Ok(format!("{} strategies, {applications} applications, 0 violations", c.cases.len()))
}

// ---------------------------------------------------------------- innermost

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Peano {
    Zero,
    Succ(Box<Peano>),
    Add(Box<Peano>, Box<Peano>),
}

impl Peano {
    pub fn num(n: usize) -> Peano {
        (0..n).fold(Peano::Zero, |p, _| Peano::Succ(Box::new(p)))
    }

    fn render(&self) -> String {
        match self {
            Peano::Zero => "zero".into(),
            Peano::Succ(p) => format!("succ({})", p.render()),
            Peano::Add(a, b) => format!("add({},{})", a.render(), b.render()),
        }
    }

    /// Every term reachable in one rewrite step, at any position.
    fn steps(&self) -> Vec<Peano> {
        let mut out = Vec::new();
        match self {
            Peano::Zero => {}
            Peano::Succ(p) => out.extend(p.steps().into_iter().map(|q| Peano::Succ(Box::new(q)))),
            Peano::Add(a, b) => {
                match &**b {
                    Peano::Zero => out.push((**a).clone()),
                    Peano::Succ(m) => out.push(Peano::Succ(Box::new(Peano::Add(a.clone(), m.clone())))),
                    Peano::Add(..) => {}
                }
                out.extend(a.steps().into_iter().map(|x| Peano::Add(Box::new(x), b.clone())));
                out.extend(b.steps().into_iter().map(|y| Peano::Add(a.clone(), Box::new(y))));
            }
        }
        out
    }

    /// All normal forms reachable by exhaustive rewriting.
    pub fn normal_forms(&self) -> BTreeSet<Peano> {
        let mut seen = BTreeSet::new();
        let mut todo = vec![self.clone()];
        let mut normal = BTreeSet::new();
        while let Some(t) = todo.pop() {
            if !seen.insert(t.clone()) {
                continue;
            }
            let next = t.steps();
            if next.is_empty() {
                normal.insert(t);
            } else {
                todo.extend(next);
            }
        }
        normal
    }
}

pub fn innermost() -> Outcome {
    let p = load("add.strat");
    check_program(&p).map_err(|d| format!("{d:?}"))?;
    let e = elaborate_program(&p).map_err(|d| format!("{d:?}"))?;
    let mut pairs = 0;
    for n in 0..=5 {
        for m in 0..=5 {
            let input = Peano::Add(Box::new(Peano::num(n)), Box::new(Peano::num(m)));
            let forms = input.normal_forms();
            ensure!(forms.len() == 1, "add({n},{m}) has {} normal forms", forms.len());
            let oracle = forms.into_iter().next().unwrap().render();
            ensure!(oracle == peano(n + m), "oracle gives {oracle} for {n}+{m}");
            let t = term(&e, &input.render());
            let out = run_program(&e, &t, EvalConfig::unlimited()).outcome.map_err(|err| err.to_string())?;
            ensure!(out.to_string() == oracle, "Innermost on {} gives {out}, oracle {oracle}", input.render());
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs agree with the exhaustive normaliser"))
}

// ----------------------------------------------------------------- negative

pub const NEGATIVE_SIGNATURE: &str = "
sort Nat;
sort Tree;
con zero : Nat;
fun succ : Nat -> Nat;
fun leaf : Nat -> Tree;
fun fork : Tree * Tree -> Tree;
var N : Nat;
var T1 : Tree;
var T2 : Tree;
def Inc : Nat -> Nat = N -> succ(N);
def Pred : Nat -> Nat = succ(N) -> N;
def Flip : Tree -> Tree = fork(T1, T2) -> fork(T2, T1);
def Label : Tree -> Nat = leaf(N) -> N;
";

/// Ill-typed programs (appended to [`NEGATIVE_SIGNATURE`]) and the rule
/// that rejects each.
pub const NEGATIVE: &[(&str, &str)] = &[
    ("main = leaf(Flip);", "cong.2"),
    ("main = fork(Inc, id);", "cong.2"),
    ("main = Inc; Label;", "seq"),
    ("main = Inc + Flip;", "choice"),
    ("main = extend(Inc, TU(Nat)) + extend(Flip, TU(Tree));", "choice"),
    ("main = extend(Inc, TU(Tree));", "extend"),
    ("main = extend(Label, TP);", "extend"),
    ("main = Inc & Pred;", "pi.4"),
    ("main = extend(Inc & id, TP);", "pi.4"),
    ("main = all(Inc);", "all"),
    ("main = select(id);", "sel"),
    ("main = reduce(Inc, void);", "red"),
    ("main = Try(Inc);", "comb"),
    ("main = Any[Nat](void);", "comb-forall"),
    ("main = restrict(Inc, Tree -> Tree);", "restrict"),
    ("main = (Inc : Tree -> Tree);", "annot"),
    ("main = !(Inc & Flip);", "neg"),
    ("main = leaf(N) -> leaf(T1) where T1 := Inc @ N;", "where"),
    ("def Bad : TP = Inc; main = Bad;", "def.3"),
    ("main = nought -> zero;", "con"),
    ("main = Unbound;", "arg"),
];

pub fn negative() -> Outcome {
    let mut accepted = Vec::new();
    for (text, tag) in NEGATIVE {
        let p = parse_with_prelude(&format!("{NEGATIVE_SIGNATURE}{text}")).map_err(|e| format!("{text}: {e}"))?;
        match check_program(&p) {
            Ok(_) => accepted.push(*text),
            Err(diags) => {
                let tags: Vec<&str> = diags.iter().map(|d| d.rule).collect();
                ensure!(tags.contains(tag), "{text}: rejected by {tags:?}, expected {tag}");
            }
        }
    }
    ensure!(accepted.is_empty(), "accepted {accepted:?}");
    Ok(format!("{} ill-typed programs rejected with the expected rule", NEGATIVE.len()))
}

// --------------------------------------------------------------- coherence

pub const FUEL_BOUNDS: [Option<u64>; 5] = [Some(0), Some(1), Some(5), Some(50), None];

/// Every example program with the inputs it is run on.
pub fn example_corpus() -> Vec<(&'static str, Vec<String>)> {
    let mut out: Vec<(&str, Vec<String>)> = PROBLEMS
        .iter()
        .map(|(name, input, _)| (*name, vec![read_program(input).trim().to_string()]))
        .collect();
    out.push(("incdec", OVERLOADING.iter().map(|c| c.1.to_string()).collect()));
    let mut sums = Vec::new();
    for n in 0..4 {
        for m in 0..4 {
            sums.push(format!("add({},{})", peano(n), peano(m)));
        }
    }
    sums.push(format!("add(add({},{}),{})", peano(1), peano(2), peano(2)));
    out.push(("add", sums));
    out
}

pub fn coherence() -> Outcome {
    let mut runs = 0;
    for (name, inputs) in example_corpus() {
        let raw = load(&format!("{name}.strat"));
        let e = elaborate_program(&raw).map_err(|d| format!("{name}: {d:?}"))?;
        let again = elaborate_program(&e).map_err(|d| format!("{name}: {d:?}"))?;
        ensure!(again.main == e.main, "{name}: elaborating main twice changes it");
        for (d1, d2) in e.definitions.iter().zip(again.definitions.iter()) {
            ensure!(d1.body == d2.body, "{name}: elaborating {} twice changes it", d1.name);
        }
        for input in &inputs {
            let t = term(&raw, input);
            for fuel in FUEL_BOUNDS {
                let cfg = EvalConfig { fuel, trace: false };
                let a = run_program(&raw, &t, cfg);
                let b = run_program(&e, &t, cfg);
                ensure!(a.outcome == b.outcome, "{name} @ {input} fuel {fuel:?}: {:?} vs {:?}", a.outcome, b.outcome);
                ensure!(a.fuel_used == b.fuel_used, "{name} @ {input}: fuel use differs");
                runs += 1;
            }
        }
    }
    let c = corpus(200);
    let (ctx, defs) = (&c.program.context, &c.program.definitions);
    for case in &c.cases {
        let twice = elaborate(ctx, &case.elaborated).map_err(|d| d.to_string())?;
        ensure!(twice == case.elaborated, "{}: elaboration is not idempotent", show(&case.strategy));
        for t in &case.inputs {
            for fuel in [Some(3), Some(CORPUS_FUEL)] {
                let cfg = EvalConfig { fuel, trace: false };
                let a = apply_strategy(ctx, defs, &case.strategy, t, cfg).outcome;
                let b = apply_strategy(ctx, defs, &case.elaborated, t, cfg).outcome;
                ensure!(a == b, "{} @ {t}: raw {a:?}, elaborated {b:?}", show(&case.strategy));
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} raw/elaborated runs agree; elaboration idempotent"))
}

// --------------------------------------------------------------- identities

pub const IDENTITY_TERMS: usize = 500;

pub fn identities() -> Outcome {
    let mut g = Gen::new(CORPUS_SEED ^ 0x1d);
    let ctx = g.program.context.clone();
    let defs = g.program.definitions.clone();
    let cfg = EvalConfig::with_fuel(200);
    let run = |s: &Strategy, t: &Term| -> Result<Option<Reduct>, String> {
        let e = elaborate(&ctx, s).map_err(|d| d.to_string())?;
        match apply_strategy(&ctx, &defs, &e, t, cfg).outcome {
            Ok(r) => Ok(Some(r)),
            Err(EngineError::FuelExhausted) => Ok(None),
            Err(e) => Err(format!("{} @ {t}: {e}", show(s))),
        }
    };
    let (mut checked, mut skipped, mut untyped) = (0, 0, 0);
    for _ in 0..IDENTITY_TERMS {
        let sort = if g.rng.gen_bool(0.5) { gen::nat() } else { gen::tree() };
        let depth = g.rng.gen_range(1..=4);
        let t = g.term(&sort, depth);
        let budget = g.rng.gen_range(0..=3);
        let s = if g.rng.gen_bool(0.7) {
            g.strategy(&StrategyType::TP, budget)
        } else {
            g.strategy(&StrategyType::arrow(sort.clone(), sort.clone()), budget)
        };
        if type_of_strategy(&ctx, &s).is_err() {
            continue;
        }
        let (id, fail) = (Strategy::id(), Strategy::fail());
        let laws = [
            ("fail <+ s", Strategy::lchoice(fail.clone(), s.clone()), s.clone()),
            ("s <+ fail", Strategy::lchoice(s.clone(), fail.clone()), s.clone()),
            ("fail + s", Strategy::choice(fail.clone(), s.clone()), s.clone()),
            ("s + fail", Strategy::choice(s.clone(), fail.clone()), s.clone()),
            ("id; s", Strategy::seq(id.clone(), s.clone()), s.clone()),
            ("s; id", Strategy::seq(s.clone(), id.clone()), s.clone()),
            ("all(id)", Strategy::all(id.clone()), id.clone()),
            ("one(fail)", Strategy::one(fail.clone()), fail.clone()),
        ];
        for (law, lhs, rhs) in laws {
            if type_of_strategy(&ctx, &lhs).is_err() {
                untyped += 1;
                continue;
            }
            match (run(&lhs, &t)?, run(&rhs, &t)?) {
                (Some(a), Some(b)) => ensure!(a == b, "{law} with s = {} @ {t}: {a} vs {b}", show(&s)),
                _ => skipped += 1,
            }
            checked += 1;
        }
    }
    ensure!(untyped * 10 < checked, "{untyped} law instances ill-typed, {checked} checked");
    Ok(format!("{checked} law instances on {IDENTITY_TERMS} terms, {skipped} out of fuel, {untyped} ill-typed"))
}

// -------------------------------------------------------------- overloading

/// (strategy, input, expected), derived by integer arithmetic on the
/// encoding n >= 0 as positive(..), n < 0 as negative(..).
pub const OVERLOADING: [(&str, &str, &str); 20] = [
    ("Inc", "positive(zero)", "positive(notzero(one))"),
    ("Inc", "positive(notzero(one))", "positive(notzero(succ(one)))"),
    ("Inc", "positive(notzero(succ(one)))", "positive(notzero(succ(succ(one))))"),
    ("Inc", "negative(one)", "positive(zero)"),
    ("Inc", "negative(succ(one))", "negative(one)"),
    ("Inc", "negative(succ(succ(one)))", "negative(succ(one))"),
    ("Dec", "positive(zero)", "negative(one)"),
    ("Dec", "positive(notzero(one))", "positive(zero)"),
    ("Dec", "positive(notzero(succ(one)))", "positive(notzero(one))"),
    ("Dec", "negative(one)", "negative(succ(one))"),
    ("Dec", "negative(succ(one))", "negative(succ(succ(one)))"),
    ("Inc", "one", "succ(one)"),
    ("Inc", "succ(one)", "succ(succ(one))"),
    ("Dec", "succ(one)", "one"),
    ("Dec", "succ(succ(one))", "succ(one)"),
    ("Dec", "one", "FAIL"),
    ("Inc", "zero", "notzero(one)"),
    ("Inc", "notzero(one)", "notzero(succ(one))"),
    ("Dec", "notzero(one)", "zero"),
    ("Dec", "zero", "FAIL"),
];

/// The integer a term encodes, and its sort.
pub fn decode(t: &str) -> (&'static str, i64) {
    fn nat_one(t: &str) -> i64 {
        match t.strip_prefix("succ(").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => 1 + nat_one(inner),
            None => {
                assert_eq!(t, "one");
                1
            }
        }
    }
    fn nat_zero(t: &str) -> i64 {
        match t.strip_prefix("notzero(").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => nat_one(inner),
            None => {
                assert_eq!(t, "zero");
                0
            }
        }
    }
    if let Some(inner) = t.strip_prefix("positive(").and_then(|r| r.strip_suffix(')')) {
        ("Int", nat_zero(inner))
    } else if let Some(inner) = t.strip_prefix("negative(").and_then(|r| r.strip_suffix(')')) {
        ("Int", -nat_one(inner))
    } else if t.starts_with("notzero") || t == "zero" {
        ("NatZero", nat_zero(t))
    } else {
        ("NatOne", nat_one(t))
    }
}

pub fn overloading() -> Outcome {
    let raw = load("incdec.strat");
    let e = elaborate_program(&raw).map_err(|d| format!("{d:?}"))?;
    let mut amps = 0;
    for (name, input, expected) in OVERLOADING {
        let (sort, n) = decode(input);
        let m = if name == "Inc" { n + 1 } else { n - 1 };
        let in_range = match sort {
            "NatOne" => m >= 1,
            "NatZero" => m >= 0,
            _ => true,
        };
        if in_range {
            ensure!(decode(expected) == (sort, m), "case {name} @ {input}: table disagrees with arithmetic");
        } else {
            ensure!(expected == "FAIL", "case {name} @ {input}: {m} is not a {sort}");
        }
        for p in [&raw, &e] {
            let t = term(p, input);
            let s = Strategy::call(name, vec![], vec![]);
            let cfg = EvalConfig { fuel: None, trace: true };
            let run = apply_strategy(&p.context, &p.definitions, &s, &t, cfg);
            let out = run.outcome.map_err(|err| format!("{name} @ {input}: {err}"))?;
            ensure!(out.to_string() == expected, "{name} @ {input}: got {out}, expected {expected}");
            for (i, ev) in run.trace.iter().enumerate() {
                if !ev.rule.starts_with("amp") {
                    continue;
                }
                let below: Vec<_> = run.trace[i + 1..].iter().take_while(|x| x.depth > ev.depth).collect();
                let direct = below.iter().filter(|x| x.depth == ev.depth + 1).count();
                ensure!(direct == 1, "{name} @ {input}: amp at depth {} tried {direct} branches", ev.depth);
                ensure!(below[0].ok == ev.ok, "{name} @ {input}: amp outcome differs from its branch");
                amps += 1;
            }
        }
    }
    Ok(format!("20 cases in raw and elaborated form; {amps} dispatches, one branch each"))
}

/// Counts of each outcome kind, for diagnostics.
pub fn outcome_histogram(c: &Corpus) -> BTreeMap<&'static str, usize> {
    let mut h = BTreeMap::new();
    for case in &c.cases {
        let kind = match case.ty {
            StrategyType::TP => "TP",
            StrategyType::TU(_) => "TU",
            StrategyType::Arrow(..) => "arrow",
            StrategyType::Amp(..) => "amp",
        };
        *h.entry(kind).or_default() += 1;
    }
    h
}
