//! Desugaring and static elaboration.
//!
//! Elaboration wraps the argument of every `extend` and every branch of a
//! `&` in an annotation carrying its type, so dispatch at run time only
//! compares sort tags.

use crate::context::Context;
use crate::error::Diagnostic;
use crate::syntax::{Definition, Program, Rule, RuleBody, Strategy, StrategyKind};
use crate::typecheck::{check_program, type_of_strategy};
use crate::types::{StrategyType, TermType};

/// `s1 <+ s2` as `s1 + (!s1; s2)`.
pub fn expand_lchoice(a: &Strategy, b: &Strategy) -> Strategy {
    let mut s = Strategy::choice(a.clone(), Strategy::seq(Strategy::neg(a.clone()), b.clone()));
    s.pos = a.pos;
    s
}

/// `guard(t, g)` as `extend(restrict(id, t -> t), g)`.
pub fn expand_guard(t: &TermType, g: &StrategyType) -> Strategy {
    let arrow = StrategyType::arrow(t.clone(), t.clone());
    Strategy::extend(Strategy::restrict(Strategy::id(), arrow), g.clone())
}

/// `s1 <& s2` as `extend(s1, pi2) + (!guard(t, TP); s2)` where `s1 : t -> t'`
/// and `s2 : pi2`.
pub fn expand_tlchoice(ctx: &Context, a: &Strategy, b: &Strategy) -> Result<Strategy, Diagnostic> {
    let p1 = type_of_strategy(ctx, a)?;
    let p2 = type_of_strategy(ctx, b)?;
    let StrategyType::Arrow(t, _) = p1 else {
        // Rejected by the typechecker; reuse its diagnostic.
        return Err(type_of_strategy(ctx, &Strategy::tlchoice(a.clone(), b.clone())).unwrap_err());
    };
    Ok(Strategy::choice(
        Strategy::extend(a.clone(), p2),
        Strategy::seq(Strategy::neg(expand_guard(&t, &StrategyType::TP)), b.clone()),
    ))
}

/// Removes all sugar. The type-dependent choices need `ctx` to find their
/// operand types.
pub fn desugar(ctx: &Context, s: &Strategy) -> Result<Strategy, Diagnostic> {
    use StrategyKind::*;
    let go = |x: &Strategy| desugar(ctx, x).map(Box::new);
    let kind = match &s.kind {
        LChoice(a, b) => return desugar(ctx, &expand_lchoice(a, b)),
        RChoice(a, b) => return desugar(ctx, &expand_lchoice(b, a)),
        TypeGuard(t, g) => return Ok(expand_guard(t, g)),
        TLChoice(a, b) => return desugar(ctx, &expand_tlchoice(ctx, a, b)?),
        TRChoice(a, b) => return desugar(ctx, &expand_tlchoice(ctx, b, a)?),
        Rule(r) => Rule(Box::new(map_rule(r, |x| desugar(ctx, x))?)),
        Id => Id,
        Fail => Fail,
        Void => Void,
        CongUnit => CongUnit,
        CongCon(c) => CongCon(c.clone()),
        Param(n) => Param(n.clone()),
        Seq(a, b) => Seq(go(a)?, go(b)?),
        Choice(a, b) => Choice(go(a)?, go(b)?),
        Neg(a) => Neg(go(a)?),
        CongFun(f, args) => CongFun(f.clone(), args.iter().map(|a| desugar(ctx, a)).collect::<Result<_, _>>()?),
        CongPair(a, b) => CongPair(go(a)?, go(b)?),
        All(a) => All(go(a)?),
        One(a) => One(go(a)?),
        Reduce(a, b) => Reduce(go(a)?, go(b)?),
        Select(a) => Select(go(a)?),
        Spawn(a, b) => Spawn(go(a)?, go(b)?),
        Extend(a, t) => Extend(go(a)?, t.clone()),
        Restrict(a, t) => Restrict(go(a)?, t.clone()),
        Annot(a, t) => Annot(go(a)?, t.clone()),
        Amp(a, b) => Amp(go(a)?, go(b)?),
        Call(n, ts, args) => {
            Call(n.clone(), ts.clone(), args.iter().map(|a| desugar(ctx, a)).collect::<Result<_, _>>()?)
        }
    };
    Ok(Strategy::at(kind, s.pos))
}

fn map_rule(r: &Rule, mut f: impl FnMut(&Strategy) -> Result<Strategy, Diagnostic>) -> Result<Rule, Diagnostic> {
    fn body(
        b: &RuleBody,
        f: &mut dyn FnMut(&Strategy) -> Result<Strategy, Diagnostic>,
    ) -> Result<RuleBody, Diagnostic> {
        Ok(match b {
            RuleBody::Result(t) => RuleBody::Result(t.clone()),
            RuleBody::Where { var, strategy, arg, rest } => RuleBody::Where {
                var: var.clone(),
                strategy: Box::new(f(strategy)?),
                arg: arg.clone(),
                rest: Box::new(body(rest, f)?),
            },
        })
    }
    Ok(Rule { lhs: r.lhs.clone(), body: body(&r.body, &mut f)? })
}

/// Desugars `s`, then annotates extension arguments and overloading
/// branches with their types. Idempotent.
pub fn elaborate(ctx: &Context, s: &Strategy) -> Result<Strategy, Diagnostic> {
    annotate(ctx, &desugar(ctx, s)?)
}

fn annotate(ctx: &Context, s: &Strategy) -> Result<Strategy, Diagnostic> {
    use StrategyKind::*;
    let go = |x: &Strategy| annotate(ctx, x).map(Box::new);
    let kind = match &s.kind {
        Extend(a, t) => Extend(Box::new(annotated(ctx, a)?), t.clone()),
        Amp(a, b) => Amp(Box::new(branch(ctx, a)?), Box::new(branch(ctx, b)?)),
        Rule(r) => Rule(Box::new(map_rule(r, |x| annotate(ctx, x))?)),
        Seq(a, b) => Seq(go(a)?, go(b)?),
        Choice(a, b) => Choice(go(a)?, go(b)?),
        LChoice(a, b) => LChoice(go(a)?, go(b)?),
        RChoice(a, b) => RChoice(go(a)?, go(b)?),
        TLChoice(a, b) => TLChoice(go(a)?, go(b)?),
        TRChoice(a, b) => TRChoice(go(a)?, go(b)?),
        Neg(a) => Neg(go(a)?),
        CongFun(f, args) => CongFun(f.clone(), args.iter().map(|a| annotate(ctx, a)).collect::<Result<_, _>>()?),
        CongPair(a, b) => CongPair(go(a)?, go(b)?),
        All(a) => All(go(a)?),
        One(a) => One(go(a)?),
        Reduce(a, b) => Reduce(go(a)?, go(b)?),
        Select(a) => Select(go(a)?),
        Spawn(a, b) => Spawn(go(a)?, go(b)?),
        Restrict(a, t) => Restrict(go(a)?, t.clone()),
        Annot(a, t) => Annot(go(a)?, t.clone()),
        Call(n, ts, args) => Call(n.clone(), ts.clone(), args.iter().map(|a| annotate(ctx, a)).collect::<Result<_, _>>()?),
        other => other.clone(),
    };
    Ok(Strategy::at(kind, s.pos))
}

/// Annotates the leaves of a nest of `&` rather than the inner nodes.
fn branch(ctx: &Context, s: &Strategy) -> Result<Strategy, Diagnostic> {
    match &s.kind {
        StrategyKind::Amp(..) => annotate(ctx, s),
        _ => annotated(ctx, s),
    }
}

/// `s` wrapped in an annotation with its type, unless it already has one.
fn annotated(ctx: &Context, s: &Strategy) -> Result<Strategy, Diagnostic> {
    if let StrategyKind::Annot(inner, t) = &s.kind {
        return Ok(Strategy::at(StrategyKind::Annot(Box::new(annotate(ctx, inner)?), t.clone()), s.pos));
    }
    let ty = type_of_strategy(ctx, s)?;
    Ok(Strategy::at(StrategyKind::Annot(Box::new(annotate(ctx, s)?), ty), s.pos))
}

/// Checks `p` and elaborates every definition body and main.
pub fn elaborate_program(p: &Program) -> Result<Program, Vec<Diagnostic>> {
    check_program(p)?;
    let definitions = p
        .definitions
        .map_bodies(|def: &Definition| {
            let scope = p.context.with_scope(&def.ty.type_params, &def.typed_params(), def.pos);
            elaborate(&scope, &def.body)
        })
        .map_err(|d| vec![d])?;
    let main = elaborate(&p.context, &p.main).map_err(|d| vec![d])?;
    Ok(Program { context: p.context.clone(), definitions, main })
}
