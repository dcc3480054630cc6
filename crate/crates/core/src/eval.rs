//! Big-step evaluation of strategy applications.

use std::fmt;

use crate::context::{tag_term, Context};
use crate::relations::domains;
use crate::syntax::{Definitions, Program, RuleBody, Strategy, StrategyKind};
use crate::term::{match_term, Substitution, Term, TermKind};
use crate::typecheck::{type_of_application, type_of_strategy};
use crate::types::{StrategyType, TermType};
use crate::Name;

pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    /// Number of combinator expansions allowed; `None` is unlimited.
    pub fuel: Option<u64>,
    pub trace: bool,
}

impl Default for EvalConfig {
    fn default() -> EvalConfig {
        EvalConfig { fuel: Some(DEFAULT_FUEL), trace: false }
    }
}

impl EvalConfig {
    pub fn with_fuel(fuel: u64) -> EvalConfig {
        EvalConfig { fuel: Some(fuel), trace: false }
    }

    pub fn unlimited() -> EvalConfig {
        EvalConfig { fuel: None, trace: false }
    }
}

/// Outcome of a successful run of the engine: a term or failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduct {
    Ok(Term),
    Failure,
}

impl Reduct {
    pub fn is_ok(&self) -> bool {
        matches!(self, Reduct::Ok(_))
    }

    pub fn term(&self) -> Option<&Term> {
        match self {
            Reduct::Ok(t) => Some(t),
            Reduct::Failure => None,
        }
    }
}

impl fmt::Display for Reduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduct::Ok(t) => write!(f, "{t}"),
            Reduct::Failure => write!(f, "FAIL"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error("unbound combinator `{0}`")]
    UnboundCombinator(Name),
    #[error("internal type violation: {0}")]
    InternalTypeViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub depth: usize,
    pub rule: &'static str,
    pub strategy: String,
    pub term: String,
    pub ok: bool,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = if self.ok { "ok" } else { "fail" };
        write!(
            f,
            "{:indent$}{} {} @ {} => {}",
            "",
            self.rule,
            self.strategy,
            self.term,
            outcome,
            indent = 2 * self.depth.saturating_sub(1)
        )
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub outcome: Result<Reduct, EngineError>,
    /// Rule firings in pre-order; empty unless tracing was requested.
    pub trace: Vec<TraceEvent>,
    pub fuel_used: u64,
}

/// Applies `s` to the ground term `t`. The application must be well-typed;
/// an ill-typed one is reported as an internal type violation, as is a
/// reduct whose tag disagrees with the predicted type.
pub fn apply_strategy(ctx: &Context, defs: &Definitions, s: &Strategy, t: &Term, cfg: EvalConfig) -> Evaluation {
    let mut engine = Engine::new(ctx, defs, cfg);
    let outcome = engine.checked(s, t);
    Evaluation { outcome, trace: engine.trace.unwrap_or_default(), fuel_used: engine.used }
}

/// Applies the program's main strategy to `t`.
pub fn run_program(p: &Program, t: &Term, cfg: EvalConfig) -> Evaluation {
    apply_strategy(&p.context, &p.definitions, &p.main, t, cfg)
}

/// Branches of a nest of `&`, looking through unannotated inner nodes.
fn amp_leaves<'s>(s: &'s Strategy, out: &mut Vec<&'s Strategy>) {
    match &s.kind {
        StrategyKind::Amp(a, b) => {
            amp_leaves(a, out);
            amp_leaves(b, out);
        }
        _ => out.push(s),
    }
}

fn violation(msg: impl Into<String>) -> EngineError {
    EngineError::InternalTypeViolation(msg.into())
}

type Step = Result<(&'static str, Reduct), EngineError>;

struct Engine<'a> {
    ctx: &'a Context,
    defs: &'a Definitions,
    fuel: Option<u64>,
    used: u64,
    trace: Option<Vec<TraceEvent>>,
    depth: usize,
}

impl<'a> Engine<'a> {
    fn new(ctx: &'a Context, defs: &'a Definitions, cfg: EvalConfig) -> Engine<'a> {
        Engine { ctx, defs, fuel: cfg.fuel, used: 0, trace: cfg.trace.then(Vec::new), depth: 0 }
    }

    fn checked(&mut self, s: &Strategy, t: &Term) -> Result<Reduct, EngineError> {
        let t = if t.fully_tagged() {
            t.clone()
        } else {
            tag_term(self.ctx, t).map_err(|e| violation(format!("input term: {e}")))?
        };
        let expected = type_of_application(self.ctx, s, &t).map_err(|d| violation(format!("application: {d}")))?;
        let r = self.apply(s, &t)?;
        if let Reduct::Ok(out) = &r {
            if out.tag() != Some(&expected) || !out.fully_tagged() {
                return Err(violation(format!("reduct {out:?} does not have type {expected}")));
            }
        }
        Ok(r)
    }

    fn apply(&mut self, s: &Strategy, t: &Term) -> Result<Reduct, EngineError> {
        crate::grow(|| {
            if self.trace.is_none() {
                return self.step(s, t).map(|(_, r)| r);
            }
            let index = self.trace.as_ref().map_or(0, Vec::len);
            self.depth += 1;
            let event = TraceEvent { depth: self.depth, rule: "", strategy: s.head(), term: t.head(), ok: false };
            self.trace.as_mut().expect("tracing").push(event);
            let result = self.step(s, t);
            self.depth -= 1;
            if let Ok((rule, r)) = &result {
                let event = &mut self.trace.as_mut().expect("tracing")[index];
                event.rule = rule;
                event.ok = r.is_ok();
            }
            result.map(|(_, r)| r)
        })
    }

    fn tag_of(t: &Term) -> Result<&TermType, EngineError> {
        t.tag().ok_or_else(|| violation(format!("untagged term {t}")))
    }

    /// The annotated type of `s`, or its type computed now for strategies
    /// that were not elaborated.
    fn branch_type<'s>(&self, s: &'s Strategy) -> Result<(&'s Strategy, StrategyType), EngineError> {
        match &s.kind {
            StrategyKind::Annot(inner, ty) => Ok((inner, ty.clone())),
            _ => {
                let ty = type_of_strategy(self.ctx, s).map_err(|d| violation(d.to_string()))?;
                Ok((s, ty))
            }
        }
    }

    fn in_domain(ty: &StrategyType, tag: &TermType) -> Result<bool, EngineError> {
        let doms = domains(ty).map_err(|e| violation(e.to_string()))?;
        Ok(doms.contains(tag))
    }

    fn step(&mut self, s: &Strategy, t: &Term) -> Step {
        use StrategyKind::*;
        let ok = |rule, t: Term| Ok((rule, Reduct::Ok(t)));
        let fail = |rule| Ok((rule, Reduct::Failure));
        match &s.kind {
            Rule(r) => match match_term(&r.lhs, t) {
                None => fail("rule-.1"),
                Some(theta) => match self.eval_body(&r.body, theta)? {
                    Reduct::Ok(out) => ok("rule+", out),
                    Reduct::Failure => fail("rule-.2"),
                },
            },
            Id => ok("id+", t.clone()),
            Fail => fail("fail-"),
            Neg(a) => match self.apply(a, t)? {
                Reduct::Ok(_) => fail("neg-"),
                Reduct::Failure => ok("neg+", t.clone()),
            },
            Seq(a, b) => match self.apply(a, t)? {
                Reduct::Failure => fail("seq-.1"),
                Reduct::Ok(mid) => match self.apply(b, &mid)? {
                    Reduct::Ok(out) => ok("seq+", out),
                    Reduct::Failure => fail("seq-.2"),
                },
            },
            Choice(a, b) => match self.apply(a, t)? {
                Reduct::Ok(out) => ok("choice+.1", out),
                Reduct::Failure => match self.apply(b, t)? {
                    Reduct::Ok(out) => ok("choice+.2", out),
                    Reduct::Failure => fail("choice-"),
                },
            },
            LChoice(a, b) => self.left_choice(a, b, t).map(|r| ("lchoice", r)),
            RChoice(a, b) => self.left_choice(b, a, t).map(|r| ("rchoice", r)),
            CongCon(c) => match t.kind() {
                TermKind::Const(d) if d == c => ok("cong+.1", t.clone()),
                _ => fail("cong-.1"),
            },
            CongFun(f, args) => match t.kind() {
                TermKind::App(g, children) if g == f && children.len() == args.len() => {
                    let mut out = Vec::with_capacity(children.len());
                    for (a, c) in args.iter().zip(children) {
                        match self.apply(a, c)? {
                            Reduct::Ok(x) => out.push(x),
                            Reduct::Failure => return fail("cong-.2"),
                        }
                    }
                    ok("cong+.2", t.rebuild(out, t.tag().cloned()))
                }
                _ => fail("cong-.2"),
            },
            CongUnit => match t.kind() {
                TermKind::Unit => ok("cong+.3", t.clone()),
                _ => fail("cong-.3"),
            },
            CongPair(a, b) => match t.kind() {
                TermKind::Pair(x, y) => {
                    let Reduct::Ok(x) = self.apply(a, x)? else { return fail("cong-.4") };
                    let Reduct::Ok(y) = self.apply(b, y)? else { return fail("cong-.4") };
                    ok("cong+.4", pair(x, y)?)
                }
                _ => fail("cong-.4"),
            },
            All(a) => {
                if t.is_constant() {
                    return ok("all+.1", t.clone());
                }
                let mut out = Vec::new();
                for c in t.children() {
                    match self.apply(a, &c)? {
                        Reduct::Ok(x) => out.push(x),
                        Reduct::Failure => return fail("all-"),
                    }
                }
                ok("all+.2", t.rebuild(out, t.tag().cloned()))
            }
            One(a) => {
                let mut children = t.children();
                for i in 0..children.len() {
                    if let Reduct::Ok(x) = self.apply(a, &children[i])? {
                        children[i] = x;
                        return ok("one+", t.rebuild(children, t.tag().cloned()));
                    }
                }
                fail(if t.is_constant() { "one-.1" } else { "one-.2" })
            }
            Reduce(plus, a) => {
                if t.is_constant() {
                    return fail("red-.1");
                }
                let mut results = Vec::new();
                for c in t.children() {
                    match self.apply(a, &c)? {
                        Reduct::Ok(x) => results.push(x),
                        Reduct::Failure => return fail("red-.2"),
                    }
                }
                let mut it = results.into_iter();
                let mut acc = it.next().expect("compound terms have children");
                for r in it {
                    match self.apply(plus, &pair(acc, r)?)? {
                        Reduct::Ok(x) => acc = x,
                        Reduct::Failure => return fail("red-.3"),
                    }
                }
                ok("red+", acc)
            }
            Select(a) => {
                for c in t.children() {
                    if let Reduct::Ok(x) = self.apply(a, &c)? {
                        return ok("sel+", x);
                    }
                }
                fail(if t.is_constant() { "sel-.1" } else { "sel-.2" })
            }
            Void => ok("void+", Term::with_tag(TermKind::Unit, Some(TermType::Unit))),
            Spawn(a, b) => {
                let Reduct::Ok(x) = self.apply(a, t)? else { return fail("spawn-") };
                let Reduct::Ok(y) = self.apply(b, t)? else { return fail("spawn-") };
                ok("spawn+", pair(x, y)?)
            }
            Extend(child, _) => {
                let (inner, ty) = self.branch_type(child)?;
                if Self::in_domain(&ty, Self::tag_of(t)?)? {
                    match self.apply(inner, t)? {
                        Reduct::Ok(x) => ok("extend'+", x),
                        Reduct::Failure => fail("extend'-.1"),
                    }
                } else {
                    fail("extend'-.2")
                }
            }
            Restrict(a, _) => self.apply(a, t).map(|r| ("restrict", r)),
            Annot(a, _) => self.apply(a, t).map(|r| ("annot", r)),
            Amp(a, b) => {
                let tag = Self::tag_of(t)?;
                let mut branches = Vec::new();
                amp_leaves(a, &mut branches);
                amp_leaves(b, &mut branches);
                for branch in branches {
                    let (_, ty) = self.branch_type(branch)?;
                    if Self::in_domain(&ty, tag)? {
                        let r = self.apply(branch, t)?;
                        return Ok((if r.is_ok() { "amp+" } else { "amp-" }, r));
                    }
                }
                Err(violation(format!("no overloading branch for sort {tag}")))
            }
            TypeGuard(ty, _) => {
                if Self::tag_of(t)? == ty {
                    ok("guard+", t.clone())
                } else {
                    fail("guard-")
                }
            }
            TLChoice(a, b) => self.type_choice(a, b, t).map(|r| ("tlchoice", r)),
            TRChoice(a, b) => self.type_choice(b, a, t).map(|r| ("trchoice", r)),
            Param(n) => Err(violation(format!("unsubstituted strategy parameter `{n}`"))),
            Call(name, types, args) => {
                let def = self.defs.get(name).ok_or_else(|| EngineError::UnboundCombinator(name.clone()))?;
                if self.fuel.is_some_and(|f| self.used >= f) {
                    return Err(EngineError::FuelExhausted);
                }
                self.used += 1;
                if def.params.len() != args.len() || def.ty.type_params.len() != types.len() {
                    return Err(violation(format!("call of `{name}` with wrong arity")));
                }
                let params: Vec<(Name, &Strategy)> = def.params.iter().cloned().zip(args.iter()).collect();
                let tys: Vec<(Name, TermType)> = def.ty.type_params.iter().cloned().zip(types.iter().cloned()).collect();
                let body = def.body.instantiate(&params, &tys);
                self.apply(&body, t).map(|r| ("comb", r))
            }
        }
    }

    /// `a <+ b` evaluated exactly as its expansion `a + (!a; b)`.
    fn left_choice(&mut self, a: &Strategy, b: &Strategy, t: &Term) -> Result<Reduct, EngineError> {
        if let r @ Reduct::Ok(_) = self.apply(a, t)? {
            return Ok(r);
        }
        match self.apply(a, t)? {
            Reduct::Ok(_) => Ok(Reduct::Failure),
            Reduct::Failure => self.apply(b, t),
        }
    }

    /// `a <& b` evaluated as its expansion: `a` on its own domain, `b` elsewhere.
    fn type_choice(&mut self, a: &Strategy, b: &Strategy, t: &Term) -> Result<Reduct, EngineError> {
        let (_, ty) = self.branch_type(a)?;
        if Self::in_domain(&ty, Self::tag_of(t)?)? {
            self.apply(a, t)
        } else {
            self.apply(b, t)
        }
    }

    fn eval_body(&mut self, body: &RuleBody, mut theta: Substitution) -> Result<Reduct, EngineError> {
        let mut body = body;
        loop {
            match body {
                RuleBody::Result(rhs) => return Ok(Reduct::Ok(self.build(&theta, rhs)?)),
                RuleBody::Where { var, strategy, arg, rest } => {
                    let u = self.build(&theta, arg)?;
                    match self.apply(strategy, &u)? {
                        Reduct::Failure => return Ok(Reduct::Failure),
                        Reduct::Ok(x) => {
                            theta.insert(var.clone(), x);
                        }
                    }
                    body = rest;
                }
            }
        }
    }

    /// Instantiates a rule term. Nodes keep their tags; untagged nodes get
    /// the result sort of their head symbol.
    fn build(&self, theta: &Substitution, t: &Term) -> Result<Term, EngineError> {
        match t.kind() {
            TermKind::Var(x) => theta.get(x).cloned().ok_or_else(|| violation(format!("unbound variable `{x}`"))),
            TermKind::Const(_) | TermKind::Unit if t.tag().is_some() => Ok(t.clone()),
            TermKind::Const(_) | TermKind::Unit => Ok(t.retag(self.ctx.head_type(t))),
            TermKind::Pair(a, b) => pair(self.build(theta, a)?, self.build(theta, b)?),
            TermKind::App(..) => {
                let children = t.children().iter().map(|c| self.build(theta, c)).collect::<Result<Vec<_>, _>>()?;
                let tag = t.tag().cloned().or_else(|| self.ctx.head_type(t));
                Ok(t.rebuild(children, tag))
            }
        }
    }
}

fn pair(a: Term, b: Term) -> Result<Term, EngineError> {
    let ty = TermType::pair(Engine::tag_of(&a)?.clone(), Engine::tag_of(&b)?.clone());
    Ok(Term::with_tag(TermKind::Pair(a, b), Some(ty)))
}
