//! Typing of strategies, applications and whole programs.

use std::collections::{BTreeMap, BTreeSet};

use crate::context::{check_context, tag_term_with, type_of_term, wf_term_type, Context};
use crate::error::{Diagnostic, Pos, RuleError, TypeError};
use crate::relations::{
    application_type, composable, generically_less, glb, less_or_equiv, negatable, wf_strategy_type,
};
use crate::syntax::{Program, Rule, RuleBody, Strategy, StrategyKind};
use crate::term::Term;
use crate::types::{CombinatorType, StrategyType, TermType};
use crate::Name;

/// The unique type of `s` under `ctx`.
pub fn type_of_strategy(ctx: &Context, s: &Strategy) -> Result<StrategyType, Diagnostic> {
    use StrategyKind::*;
    let here = |e: RuleError| e.at(s.pos);
    let err = |rule: &'static str, e: TypeError| RuleError::new(rule, e).at(s.pos);
    match &s.kind {
        Rule(r) => type_of_rule(ctx, r).map_err(here),
        Id | Fail => Ok(StrategyType::TP),
        Neg(a) => negatable(&type_of_strategy(ctx, a)?).map_err(here),
        Seq(a, b) => {
            let p1 = type_of_strategy(ctx, a)?;
            let p2 = type_of_strategy(ctx, b)?;
            composable(&p1, &p2).map_err(here)
        }
        Choice(a, b) => {
            let p1 = type_of_strategy(ctx, a)?;
            let p2 = type_of_strategy(ctx, b)?;
            glb(&p1, &p2).map_err(here)
        }
        LChoice(a, b) => left_choice_type(ctx, a, b, s.pos),
        RChoice(a, b) => left_choice_type(ctx, b, a, s.pos),
        CongCon(c) => match ctx.constant_sort(c) {
            Some(sort) => {
                let t = TermType::Sort(sort.clone());
                Ok(StrategyType::arrow(t.clone(), t))
            }
            None => Err(err("cong.1", TypeError::UndeclaredSymbol(c.clone()))),
        },
        CongFun(f, args) => {
            let Some(sig) = ctx.function_sig(f) else {
                return Err(err("cong.2", TypeError::UndeclaredSymbol(f.clone())));
            };
            if sig.args.len() != args.len() {
                let e = TypeError::ArityMismatch { symbol: f.clone(), expected: sig.args.len(), found: args.len() };
                return Err(err("cong.2", e));
            }
            for (i, (arg, sort)) in args.iter().zip(&sig.args).enumerate() {
                let found = type_of_strategy(ctx, arg)?;
                let t = TermType::Sort(sort.clone());
                let expected = StrategyType::arrow(t.clone(), t);
                if !less_or_equiv(&expected, &found) {
                    let e = TypeError::CongArgMismatch { symbol: f.clone(), position: i + 1, expected, found };
                    return Err(err("cong.2", e));
                }
            }
            let t = TermType::Sort(sig.result.clone());
            Ok(StrategyType::arrow(t.clone(), t))
        }
        CongUnit => Ok(StrategyType::arrow(TermType::Unit, TermType::Unit)),
        CongPair(a, b) => {
            let p1 = type_of_strategy(ctx, a)?;
            let p2 = type_of_strategy(ctx, b)?;
            match (&p1, &p2) {
                (StrategyType::Arrow(a1, a2), StrategyType::Arrow(b1, b2)) => Ok(StrategyType::arrow(
                    TermType::pair(a1.clone(), b1.clone()),
                    TermType::pair(a2.clone(), b2.clone()),
                )),
                (StrategyType::Arrow(..), other) | (other, _) => Err(err(
                    "cong.4",
                    TypeError::Expected {
                        what: "pair congruence needs many-sorted components".into(),
                        found: other.clone(),
                    },
                )),
            }
        }
        All(a) | One(a) => {
            let p = type_of_strategy(ctx, a)?;
            if p == StrategyType::TP {
                Ok(StrategyType::TP)
            } else {
                let what = format!("{} expects a TP argument", s.head());
                Err(err(if matches!(s.kind, All(_)) { "all" } else { "one" }, TypeError::Expected { what, found: p }))
            }
        }
        Reduce(plus, child) => {
            let pc = type_of_strategy(ctx, child)?;
            let StrategyType::TU(t) = &pc else {
                let what = "reduce expects a TU argument".into();
                return Err(err("red", TypeError::Expected { what, found: pc }));
            };
            let pp = type_of_strategy(ctx, plus)?;
            let want = StrategyType::arrow(TermType::pair(t.clone(), t.clone()), t.clone());
            if pp != want {
                let what = format!("reduce expects a combining strategy of type {want}");
                return Err(err("red", TypeError::Expected { what, found: pp }));
            }
            Ok(pc)
        }
        Select(a) => {
            let p = type_of_strategy(ctx, a)?;
            match p {
                StrategyType::TU(_) => Ok(p),
                found => Err(err("sel", TypeError::Expected { what: "select expects a TU argument".into(), found })),
            }
        }
        Void => Ok(StrategyType::TU(TermType::Unit)),
        Spawn(a, b) => {
            let p1 = type_of_strategy(ctx, a)?;
            let p2 = type_of_strategy(ctx, b)?;
            match (&p1, &p2) {
                (StrategyType::TU(t1), StrategyType::TU(t2)) => {
                    Ok(StrategyType::TU(TermType::pair(t1.clone(), t2.clone())))
                }
                (StrategyType::TU(_), other) | (other, _) => Err(err(
                    "spawn",
                    TypeError::Expected { what: "spawn expects TU arguments".into(), found: other.clone() },
                )),
            }
        }
        Extend(a, target) => {
            wf_strategy_type(ctx, target).map_err(here)?;
            let actual = type_of_strategy(ctx, a)?;
            if generically_less(&actual, target) {
                Ok(target.clone())
            } else {
                Err(err("extend", TypeError::ExtendNotInstance { actual, target: target.clone() }))
            }
        }
        Restrict(a, target) => {
            wf_strategy_type(ctx, target).map_err(here)?;
            let actual = type_of_strategy(ctx, a)?;
            if generically_less(target, &actual) {
                Ok(target.clone())
            } else {
                Err(err("restrict", TypeError::RestrictNotInstance { actual, target: target.clone() }))
            }
        }
        Annot(a, declared) => {
            wf_strategy_type(ctx, declared).map_err(here)?;
            let actual = type_of_strategy(ctx, a)?;
            if actual.equiv(declared) {
                Ok(declared.clone())
            } else {
                Err(err("annot", TypeError::AnnotMismatch { declared: declared.clone(), actual }))
            }
        }
        Amp(a, b) => {
            let ty = StrategyType::amp(type_of_strategy(ctx, a)?, type_of_strategy(ctx, b)?);
            wf_strategy_type(ctx, &ty).map_err(here)?;
            Ok(ty)
        }
        TypeGuard(t, g) => {
            wf_term_type(ctx, t).map_err(here)?;
            wf_strategy_type(ctx, g).map_err(here)?;
            let actual = StrategyType::arrow(t.clone(), t.clone());
            if generically_less(&actual, g) {
                Ok(g.clone())
            } else {
                Err(err("extend", TypeError::ExtendNotInstance { actual, target: g.clone() }))
            }
        }
        TLChoice(a, b) => type_choice_type(ctx, a, b, s.pos),
        TRChoice(a, b) => type_choice_type(ctx, b, a, s.pos),
        Param(n) => ctx.param_type(n).cloned().ok_or_else(|| err("arg", TypeError::UnboundStrategyVar(n.clone()))),
        Call(name, types, args) => {
            let Some(sig) = ctx.combinator_type(name) else {
                return Err(err("comb", TypeError::UnknownCombinator(name.clone())));
            };
            let rule = if sig.type_params.is_empty() { "comb" } else { "comb-forall" };
            if sig.type_params.len() != types.len() {
                let e = TypeError::CallTypeArgMismatch {
                    name: name.clone(),
                    expected: sig.type_params.len(),
                    found: types.len(),
                };
                return Err(err(rule, e));
            }
            for t in types {
                wf_term_type(ctx, t).map_err(here)?;
            }
            if sig.args.len() != args.len() {
                let e = TypeError::CallArityMismatch { name: name.clone(), expected: sig.args.len(), found: args.len() };
                return Err(err(rule, e));
            }
            let sub: Vec<(Name, TermType)> = sig.type_params.iter().cloned().zip(types.iter().cloned()).collect();
            for (i, (arg, formal)) in args.iter().zip(&sig.args).enumerate() {
                let found = type_of_strategy(ctx, arg)?;
                let expected = formal.subst(&sub);
                if !found.equiv(&expected) {
                    let e = TypeError::CallArgMismatch { name: name.clone(), position: i + 1, expected, found };
                    return Err(err(rule, e));
                }
            }
            Ok(sig.result.subst(&sub))
        }
    }
}

/// Type of `a <+ b`, read off its expansion `a + (!a; b)`.
fn left_choice_type(ctx: &Context, a: &Strategy, b: &Strategy, pos: Pos) -> Result<StrategyType, Diagnostic> {
    let p1 = type_of_strategy(ctx, a)?;
    let p2 = type_of_strategy(ctx, b)?;
    let right = negatable(&p1).and_then(|n| composable(&n, &p2)).map_err(|e| e.at(pos))?;
    glb(&p1, &right).map_err(|e| e.at(pos))
}

/// Type of `a <& b`, read off its expansion `extend(a, pi) + (!guard(t, TP); b)`.
fn type_choice_type(ctx: &Context, a: &Strategy, b: &Strategy, pos: Pos) -> Result<StrategyType, Diagnostic> {
    let p1 = type_of_strategy(ctx, a)?;
    let p2 = type_of_strategy(ctx, b)?;
    if !matches!(p1, StrategyType::Arrow(..)) {
        let what = "left operand of a type-dependent choice must be many-sorted".into();
        return Err(RuleError::new("tlchoice", TypeError::Expected { what, found: p1 }).at(pos));
    }
    if !generically_less(&p1, &p2) {
        return Err(RuleError::new("extend", TypeError::ExtendNotInstance { actual: p1, target: p2 }).at(pos));
    }
    let right = composable(&StrategyType::TP, &p2).map_err(|e| e.at(pos))?;
    glb(&p2, &right).map_err(|e| e.at(pos))
}

fn type_of_rule(ctx: &Context, rule: &Rule) -> Result<StrategyType, RuleError> {
    let domain = type_of_term(ctx, &rule.lhs)?;
    let mut bound: BTreeSet<Name> = rule.lhs.vars().into_iter().collect();
    let mut locals: BTreeMap<Name, TermType> = BTreeMap::new();
    let check_bound = |t: &Term, bound: &BTreeSet<Name>| -> Result<(), RuleError> {
        match t.vars().into_iter().find(|x| !bound.contains(x)) {
            Some(x) => Err(RuleError::new("rule", TypeError::UnboundVariable(x))),
            None => Ok(()),
        }
    };
    let mut body = &rule.body;
    loop {
        match body {
            RuleBody::Result(t) => {
                check_bound(t, &bound)?;
                let codomain = tag_term_with(ctx, &locals, t)?.tag().cloned().expect("tagged");
                return Ok(StrategyType::arrow(domain, codomain));
            }
            RuleBody::Where { var, strategy, arg, rest } => {
                check_bound(arg, &bound)?;
                let arg_ty = tag_term_with(ctx, &locals, arg)?.tag().cloned().expect("tagged");
                let pi = type_of_strategy(ctx, strategy).map_err(|d| RuleError::new(d.rule, d.error))?;
                let result = application_type(&pi, &arg_ty).map_err(|e| RuleError::new("where", e.error))?;
                if bound.contains(var) {
                    return Err(RuleError::new("where", TypeError::NonLinearBinding(var.clone())));
                }
                if let Some(declared) = ctx.var_type(var) {
                    if *declared != result {
                        let e = TypeError::WhereVarType { var: var.clone(), declared: declared.clone(), actual: result };
                        return Err(RuleError::new("where", e));
                    }
                }
                locals.insert(var.clone(), result);
                bound.insert(var.clone());
                body = rest;
            }
        }
    }
}

/// Result type of applying `s` to the ground term `t`.
pub fn type_of_application(ctx: &Context, s: &Strategy, t: &Term) -> Result<TermType, Diagnostic> {
    let pi = type_of_strategy(ctx, s)?;
    let tau = type_of_term(ctx, t).map_err(|e| e.at(s.pos))?;
    application_type(&pi, &tau).map_err(|e| e.at(s.pos))
}

/// Types of a checked program.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgramTypes {
    pub main: StrategyType,
    pub definitions: Vec<(Name, CombinatorType)>,
}

/// Checks the context, every definition against its declared type, and main.
/// Diagnostics from independent definitions are all reported.
pub fn check_program(p: &Program) -> Result<ProgramTypes, Vec<Diagnostic>> {
    let ctx = &p.context;
    let mut diags = match check_context(ctx) {
        Ok(()) => Vec::new(),
        Err(d) => d,
    };
    let mut definitions = Vec::new();
    for def in p.definitions.iter() {
        definitions.push((def.name.clone(), def.ty.clone()));
        if let Err(d) = check_definition(ctx, def) {
            diags.push(d);
        }
    }
    let main = type_of_strategy(ctx, &p.main);
    match main {
        Ok(main) if diags.is_empty() => Ok(ProgramTypes { main, definitions }),
        Ok(_) => Err(diags),
        Err(d) => {
            diags.push(d);
            Err(diags)
        }
    }
}

fn check_definition(ctx: &Context, def: &crate::syntax::Definition) -> Result<(), Diagnostic> {
    let rule = if def.ty.type_params.is_empty() { "def.3" } else { "def.4" };
    let mut seen = BTreeSet::new();
    for a in &def.ty.type_params {
        if !seen.insert(a.clone()) {
            return Err(RuleError::new(rule, TypeError::DuplicateName(a.clone())).at(def.pos));
        }
    }
    let mut seen = BTreeSet::new();
    for p in &def.params {
        let clash = ctx.is_symbol(p) || ctx.var_type(p).is_some() || ctx.combinator_type(p).is_some();
        if clash || !seen.insert(p.clone()) {
            return Err(RuleError::new(rule, TypeError::DuplicateName(p.clone())).at(def.pos));
        }
    }
    let scope = ctx.with_scope(&def.ty.type_params, &def.typed_params(), def.pos);
    for t in def.ty.args.iter().chain(std::iter::once(&def.ty.result)) {
        wf_strategy_type(&scope, t).map_err(|e| e.at(def.pos))?;
    }
    let actual = type_of_strategy(&scope, &def.body)?;
    if less_or_equiv(&def.ty.result, &actual) {
        Ok(())
    } else {
        let e = TypeError::DefTypeMismatch { name: def.name.clone(), declared: def.ty.result.clone(), actual };
        Err(RuleError::new(rule, e).at(def.pos))
    }
}
