//! Strategy expressions, definitions and programs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::context::Context;
use crate::error::Pos;
use crate::term::Term;
use crate::types::{CombinatorType, StrategyType, TermType};
use crate::Name;

/// A strategy expression with the source position of its head. Positions do
/// not take part in equality.
#[derive(Debug, Clone)]
pub struct Strategy {
    pub kind: StrategyKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrategyKind {
    Rule(Box<Rule>),
    Id,
    Fail,
    Seq(Box<Strategy>, Box<Strategy>),
    Choice(Box<Strategy>, Box<Strategy>),
    /// `s1 <+ s2`
    LChoice(Box<Strategy>, Box<Strategy>),
    /// `s1 +> s2`
    RChoice(Box<Strategy>, Box<Strategy>),
    Neg(Box<Strategy>),
    CongCon(Name),
    CongFun(Name, Vec<Strategy>),
    CongUnit,
    CongPair(Box<Strategy>, Box<Strategy>),
    All(Box<Strategy>),
    One(Box<Strategy>),
    /// `reduce(splus, s)`
    Reduce(Box<Strategy>, Box<Strategy>),
    Select(Box<Strategy>),
    Void,
    Spawn(Box<Strategy>, Box<Strategy>),
    Extend(Box<Strategy>, StrategyType),
    Restrict(Box<Strategy>, StrategyType),
    Annot(Box<Strategy>, StrategyType),
    Amp(Box<Strategy>, Box<Strategy>),
    TypeGuard(TermType, StrategyType),
    /// `s1 <& s2`
    TLChoice(Box<Strategy>, Box<Strategy>),
    /// `s1 &> s2`
    TRChoice(Box<Strategy>, Box<Strategy>),
    Param(Name),
    Call(Name, Vec<TermType>, Vec<Strategy>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub lhs: Term,
    pub body: RuleBody,
}

/// Right-hand side of a rule. Where-clauses are evaluated outermost first.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleBody {
    Result(Term),
    Where { var: Name, strategy: Box<Strategy>, arg: Term, rest: Box<RuleBody> },
}

impl PartialEq for Strategy {
    fn eq(&self, other: &Strategy) -> bool {
        self.kind == other.kind
    }
}

fn bx(s: Strategy) -> Box<Strategy> {
    Box::new(s)
}

impl Strategy {
    pub fn new(kind: StrategyKind) -> Strategy {
        Strategy { kind, pos: Pos::default() }
    }

    pub fn at(kind: StrategyKind, pos: Pos) -> Strategy {
        Strategy { kind, pos }
    }

    pub fn rule(lhs: Term, rhs: Term) -> Strategy {
        Strategy::new(StrategyKind::Rule(Box::new(Rule { lhs, body: RuleBody::Result(rhs) })))
    }
    pub fn id() -> Strategy {
        Strategy::new(StrategyKind::Id)
    }
    pub fn fail() -> Strategy {
        Strategy::new(StrategyKind::Fail)
    }
    pub fn void() -> Strategy {
        Strategy::new(StrategyKind::Void)
    }
    pub fn seq(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::Seq(bx(a), bx(b)))
    }
    pub fn choice(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::Choice(bx(a), bx(b)))
    }
    pub fn lchoice(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::LChoice(bx(a), bx(b)))
    }
    pub fn rchoice(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::RChoice(bx(a), bx(b)))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn neg(s: Strategy) -> Strategy {
        Strategy::new(StrategyKind::Neg(bx(s)))
    }
    pub fn cong_con(c: &str) -> Strategy {
        Strategy::new(StrategyKind::CongCon(c.into()))
    }
    pub fn cong_fun(f: &str, args: Vec<Strategy>) -> Strategy {
        Strategy::new(StrategyKind::CongFun(f.into(), args))
    }
    pub fn cong_pair(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::CongPair(bx(a), bx(b)))
    }
    pub fn all(s: Strategy) -> Strategy {
        Strategy::new(StrategyKind::All(bx(s)))
    }
    pub fn one(s: Strategy) -> Strategy {
        Strategy::new(StrategyKind::One(bx(s)))
    }
    pub fn reduce(plus: Strategy, s: Strategy) -> Strategy {
        Strategy::new(StrategyKind::Reduce(bx(plus), bx(s)))
    }
    pub fn select(s: Strategy) -> Strategy {
        Strategy::new(StrategyKind::Select(bx(s)))
    }
    pub fn spawn(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::Spawn(bx(a), bx(b)))
    }
    pub fn extend(s: Strategy, ty: StrategyType) -> Strategy {
        Strategy::new(StrategyKind::Extend(bx(s), ty))
    }
    pub fn restrict(s: Strategy, ty: StrategyType) -> Strategy {
        Strategy::new(StrategyKind::Restrict(bx(s), ty))
    }
    pub fn annot(s: Strategy, ty: StrategyType) -> Strategy {
        Strategy::new(StrategyKind::Annot(bx(s), ty))
    }
    pub fn amp(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::Amp(bx(a), bx(b)))
    }
    pub fn guard(ty: TermType, g: StrategyType) -> Strategy {
        Strategy::new(StrategyKind::TypeGuard(ty, g))
    }
    pub fn tlchoice(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::TLChoice(bx(a), bx(b)))
    }
    pub fn trchoice(a: Strategy, b: Strategy) -> Strategy {
        Strategy::new(StrategyKind::TRChoice(bx(a), bx(b)))
    }
    pub fn param(name: &str) -> Strategy {
        Strategy::new(StrategyKind::Param(name.into()))
    }
    pub fn call(name: &str, types: Vec<TermType>, args: Vec<Strategy>) -> Strategy {
        Strategy::new(StrategyKind::Call(name.into(), types, args))
    }

    /// Short name of the outermost combinator, used in traces.
    pub fn head(&self) -> String {
        use StrategyKind::*;
        match &self.kind {
            Rule(_) => "rule".into(),
            Id => "id".into(),
            Fail => "fail".into(),
            Seq(..) => ";".into(),
            Choice(..) => "+".into(),
            LChoice(..) => "<+".into(),
            RChoice(..) => "+>".into(),
            Neg(_) => "!".into(),
            CongCon(c) => c.to_string(),
            CongFun(f, _) => format!("{f}(..)"),
            CongUnit => "()".into(),
            CongPair(..) => "(,)".into(),
            All(_) => "all".into(),
            One(_) => "one".into(),
            Reduce(..) => "reduce".into(),
            Select(_) => "select".into(),
            Void => "void".into(),
            Spawn(..) => "spawn".into(),
            Extend(..) => "extend".into(),
            Restrict(..) => "restrict".into(),
            Annot(..) => "annot".into(),
            Amp(..) => "&".into(),
            TypeGuard(..) => "guard".into(),
            TLChoice(..) => "<&".into(),
            TRChoice(..) => "&>".into(),
            Param(n) => n.to_string(),
            Call(n, ..) => n.to_string(),
        }
    }

    /// Replaces strategy parameters and type variables. Actuals are closed,
    /// so no renaming is needed.
    pub fn instantiate(&self, params: &[(Name, &Strategy)], types: &[(Name, TermType)]) -> Strategy {
        use StrategyKind::*;
        let go = |s: &Strategy| bx(s.instantiate(params, types));
        let ty = |t: &StrategyType| if types.is_empty() { t.clone() } else { t.subst(types) };
        let kind = match &self.kind {
            Param(n) => {
                if let Some((_, actual)) = params.iter().find(|(p, _)| p == n) {
                    return (*actual).clone();
                }
                Param(n.clone())
            }
            Rule(r) => Rule(Box::new(self::Rule { lhs: r.lhs.clone(), body: r.body.instantiate(params, types) })),
            Id => Id,
            Fail => Fail,
            Void => Void,
            CongUnit => CongUnit,
            CongCon(c) => CongCon(c.clone()),
            Seq(a, b) => Seq(go(a), go(b)),
            Choice(a, b) => Choice(go(a), go(b)),
            LChoice(a, b) => LChoice(go(a), go(b)),
            RChoice(a, b) => RChoice(go(a), go(b)),
            Neg(a) => Neg(go(a)),
            CongFun(f, args) => CongFun(f.clone(), args.iter().map(|a| a.instantiate(params, types)).collect()),
            CongPair(a, b) => CongPair(go(a), go(b)),
            All(a) => All(go(a)),
            One(a) => One(go(a)),
            Reduce(a, b) => Reduce(go(a), go(b)),
            Select(a) => Select(go(a)),
            Spawn(a, b) => Spawn(go(a), go(b)),
            Extend(a, t) => Extend(go(a), ty(t)),
            Restrict(a, t) => Restrict(go(a), ty(t)),
            Annot(a, t) => Annot(go(a), ty(t)),
            Amp(a, b) => Amp(go(a), go(b)),
            TypeGuard(t, g) => TypeGuard(t.subst(types), ty(g)),
            TLChoice(a, b) => TLChoice(go(a), go(b)),
            TRChoice(a, b) => TRChoice(go(a), go(b)),
            Call(n, ts, args) => Call(
                n.clone(),
                ts.iter().map(|t| t.subst(types)).collect(),
                args.iter().map(|a| a.instantiate(params, types)).collect(),
            ),
        };
        Strategy { kind, pos: self.pos }
    }

    /// Number of strategy nodes.
    pub fn size(&self) -> usize {
        use StrategyKind::*;
        1 + match &self.kind {
            Rule(r) => r.body.strategies().iter().map(|s| s.size()).sum(),
            Id | Fail | Void | CongUnit | CongCon(_) | TypeGuard(..) | Param(_) => 0,
            Neg(a) | All(a) | One(a) | Select(a) | Extend(a, _) | Restrict(a, _) | Annot(a, _) => a.size(),
            Seq(a, b) | Choice(a, b) | LChoice(a, b) | RChoice(a, b) | CongPair(a, b) | Reduce(a, b)
            | Spawn(a, b) | Amp(a, b) | TLChoice(a, b) | TRChoice(a, b) => a.size() + b.size(),
            CongFun(_, args) | Call(_, _, args) => args.iter().map(Strategy::size).sum(),
        }
    }
}

impl RuleBody {
    fn instantiate(&self, params: &[(Name, &Strategy)], types: &[(Name, TermType)]) -> RuleBody {
        match self {
            RuleBody::Result(t) => RuleBody::Result(t.clone()),
            RuleBody::Where { var, strategy, arg, rest } => RuleBody::Where {
                var: var.clone(),
                strategy: bx(strategy.instantiate(params, types)),
                arg: arg.clone(),
                rest: Box::new(rest.instantiate(params, types)),
            },
        }
    }

    /// Strategies of the where-clauses, outermost first.
    pub fn strategies(&self) -> Vec<&Strategy> {
        let mut out = Vec::new();
        let mut b = self;
        while let RuleBody::Where { strategy, rest, .. } = b {
            out.push(&**strategy);
            b = rest;
        }
        out
    }

    /// The final result term.
    pub fn result(&self) -> &Term {
        match self {
            RuleBody::Result(t) => t,
            RuleBody::Where { rest, .. } => rest.result(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Definition {
    pub name: Name,
    pub params: Vec<Name>,
    pub ty: CombinatorType,
    pub body: Strategy,
    pub pos: Pos,
    pub from_prelude: bool,
}

impl Definition {
    /// Parameter names paired with their declared types.
    pub fn typed_params(&self) -> Vec<(Name, StrategyType)> {
        self.params.iter().cloned().zip(self.ty.args.iter().cloned()).collect()
    }
}

/// Combinator definitions in declaration order.
#[derive(Debug, Clone, Default)]
pub struct Definitions {
    order: Vec<Name>,
    map: BTreeMap<Name, Arc<Definition>>,
}

impl Definitions {
    pub fn new() -> Definitions {
        Definitions::default()
    }

    /// Adds a definition; returns false (and keeps the old one) on a duplicate name.
    pub fn insert(&mut self, def: Definition) -> bool {
        if self.map.contains_key(&def.name) {
            return false;
        }
        self.order.push(def.name.clone());
        self.map.insert(def.name.clone(), Arc::new(def));
        true
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Definition>> {
        self.map.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Definition> {
        self.order.iter().map(|n| &*self.map[n])
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Same names and order, with every body passed through `f`.
    pub fn map_bodies<E>(&self, mut f: impl FnMut(&Definition) -> Result<Strategy, E>) -> Result<Definitions, E> {
        let mut out = Definitions::new();
        for def in self.iter() {
            let body = f(def)?;
            out.insert(Definition { body, ..def.clone() });
        }
        Ok(out)
    }
}

/// `Γ Δ s`: declarations, definitions and the main strategy.
#[derive(Debug, Clone)]
pub struct Program {
    pub context: Context,
    pub definitions: Definitions,
    pub main: Strategy,
}
