//! Typing contexts, context well-formedness and term typing.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Diagnostic, Pos, RuleError, TypeError};
use crate::term::{Term, TermKind};
use crate::types::{CombinatorType, StrategyType, TermType};
use crate::Name;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunSig {
    pub args: Vec<Name>,
    pub result: Name,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Sort(Name),
    Constant(Name, Name),
    Function(Name, FunSig),
    Var(Name, TermType),
    Combinator(Name, CombinatorType),
    Param(Name, StrategyType),
    TypeVar(Name),
}

impl Decl {
    pub fn name(&self) -> &Name {
        match self {
            Decl::Sort(n)
            | Decl::Constant(n, _)
            | Decl::Function(n, _)
            | Decl::Var(n, _)
            | Decl::Combinator(n, _)
            | Decl::Param(n, _)
            | Decl::TypeVar(n) => n,
        }
    }

    /// Sorts and type variables live in their own name spaces; symbols,
    /// variables, combinators and strategy parameters share one.
    fn namespace(&self) -> u8 {
        match self {
            Decl::Sort(_) => 0,
            Decl::TypeVar(_) => 1,
            _ => 2,
        }
    }
}

/// The context Γ. Declarations are kept in source order; lookups use the
/// first declaration of a name.
#[derive(Debug, Clone, Default)]
pub struct Context {
    decls: Vec<(Decl, Pos)>,
    sorts: BTreeSet<Name>,
    constants: BTreeMap<Name, Name>,
    functions: BTreeMap<Name, FunSig>,
    vars: BTreeMap<Name, TermType>,
    combinators: BTreeMap<Name, CombinatorType>,
    params: BTreeMap<Name, StrategyType>,
    type_vars: BTreeSet<Name>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn declare(&mut self, decl: Decl, pos: Pos) {
        match &decl {
            Decl::Sort(n) => {
                self.sorts.insert(n.clone());
            }
            Decl::Constant(n, s) => {
                self.constants.entry(n.clone()).or_insert_with(|| s.clone());
            }
            Decl::Function(n, sig) => {
                self.functions.entry(n.clone()).or_insert_with(|| sig.clone());
            }
            Decl::Var(n, t) => {
                self.vars.entry(n.clone()).or_insert_with(|| t.clone());
            }
            Decl::Combinator(n, t) => {
                self.combinators.entry(n.clone()).or_insert_with(|| t.clone());
            }
            Decl::Param(n, t) => {
                self.params.entry(n.clone()).or_insert_with(|| t.clone());
            }
            Decl::TypeVar(n) => {
                self.type_vars.insert(n.clone());
            }
        }
        self.decls.push((decl, pos));
    }

    pub fn sort(&mut self, name: &str) -> &mut Context {
        self.declare(Decl::Sort(name.into()), Pos::default());
        self
    }

    pub fn constant(&mut self, name: &str, sort: &str) -> &mut Context {
        self.declare(Decl::Constant(name.into(), sort.into()), Pos::default());
        self
    }

    pub fn function(&mut self, name: &str, args: &[&str], result: &str) -> &mut Context {
        let sig = FunSig { args: args.iter().map(|a| Name::from(*a)).collect(), result: result.into() };
        self.declare(Decl::Function(name.into(), sig), Pos::default());
        self
    }

    pub fn var(&mut self, name: &str, ty: TermType) -> &mut Context {
        self.declare(Decl::Var(name.into(), ty), Pos::default());
        self
    }

    pub fn combinator(&mut self, name: &str, ty: CombinatorType) -> &mut Context {
        self.declare(Decl::Combinator(name.into(), ty), Pos::default());
        self
    }

    pub fn decls(&self) -> impl Iterator<Item = (&Decl, Pos)> {
        self.decls.iter().map(|(d, p)| (d, *p))
    }

    pub fn is_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    pub fn constant_sort(&self, name: &str) -> Option<&Name> {
        self.constants.get(name)
    }

    pub fn function_sig(&self, name: &str) -> Option<&FunSig> {
        self.functions.get(name)
    }

    pub fn is_symbol(&self, name: &str) -> bool {
        self.constants.contains_key(name) || self.functions.contains_key(name)
    }

    pub fn var_type(&self, name: &str) -> Option<&TermType> {
        self.vars.get(name)
    }

    pub fn combinator_type(&self, name: &str) -> Option<&CombinatorType> {
        self.combinators.get(name)
    }

    pub fn param_type(&self, name: &str) -> Option<&StrategyType> {
        self.params.get(name)
    }

    pub fn has_type_var(&self, name: &str) -> bool {
        self.type_vars.contains(name)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Name> {
        self.sorts.iter()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&Name, &Name)> {
        self.constants.iter()
    }

    pub fn functions(&self) -> impl Iterator<Item = (&Name, &FunSig)> {
        self.functions.iter()
    }

    /// Γ extended with the type and strategy parameters of a definition.
    pub fn with_scope(&self, type_params: &[Name], params: &[(Name, StrategyType)], pos: Pos) -> Context {
        let mut ctx = self.clone();
        for a in type_params {
            ctx.declare(Decl::TypeVar(a.clone()), pos);
        }
        for (n, t) in params {
            ctx.declare(Decl::Param(n.clone(), t.clone()), pos);
        }
        ctx
    }

    /// The symbol result sort of a term's head, without checking arguments.
    /// Used to pre-tag rule terms.
    pub fn head_type(&self, t: &Term) -> Option<TermType> {
        match t.kind() {
            TermKind::Const(c) => self.constants.get(c).map(|s| TermType::Sort(s.clone())),
            TermKind::App(f, _) => self.functions.get(f).map(|s| TermType::Sort(s.result.clone())),
            TermKind::Var(x) => self.vars.get(x).cloned(),
            TermKind::Unit => Some(TermType::Unit),
            TermKind::Pair(a, b) => Some(TermType::pair(self.head_type(a)?, self.head_type(b)?)),
        }
    }
}

/// Checks name uniqueness and that declarations only mention declared sorts.
pub fn check_context(ctx: &Context) -> Result<(), Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut seen: BTreeSet<(u8, Name)> = BTreeSet::new();
    for (decl, pos) in ctx.decls() {
        if !seen.insert((decl.namespace(), decl.name().clone())) {
            diags.push(RuleError::new("ctx", TypeError::DuplicateName(decl.name().clone())).at(pos));
        }
        let mut mentioned: Vec<Name> = Vec::new();
        match decl {
            Decl::Constant(_, s) => mentioned.push(s.clone()),
            Decl::Function(_, sig) => {
                mentioned.extend(sig.args.iter().cloned());
                mentioned.push(sig.result.clone());
            }
            Decl::Var(_, t) => {
                if let Err(e) = wf_term_type(ctx, t) {
                    diags.push(e.at(pos));
                }
            }
            _ => {}
        }
        for s in mentioned {
            if !ctx.is_sort(&s) {
                let err = TypeError::UndeclaredSortInDecl { decl: decl.name().clone(), sort: s };
                diags.push(RuleError::new("ctx", err).at(pos));
            }
        }
    }
    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

/// Well-formedness of term types.
pub fn wf_term_type(ctx: &Context, ty: &TermType) -> Result<(), RuleError> {
    match ty {
        TermType::Sort(s) if ctx.is_sort(s) => Ok(()),
        TermType::Sort(s) => Err(RuleError::new("tau.1", TypeError::UndeclaredSort(s.clone()))),
        TermType::Unit => Ok(()),
        TermType::Pair(a, b) => {
            wf_term_type(ctx, a)?;
            wf_term_type(ctx, b)
        }
        TermType::Var(a) if ctx.has_type_var(a) => Ok(()),
        TermType::Var(a) => Err(RuleError::new("tau.4", TypeError::UnboundTypeVar(a.clone()))),
    }
}

/// The type of `t`, with variables typed by their declarations.
pub fn type_of_term(ctx: &Context, t: &Term) -> Result<TermType, RuleError> {
    tag_term(ctx, t).map(|t| t.tag().cloned().expect("tag_term tags the root"))
}

/// A copy of `t` with every node tagged by its type.
pub fn tag_term(ctx: &Context, t: &Term) -> Result<Term, RuleError> {
    tag_term_with(ctx, &BTreeMap::new(), t)
}

/// Like [`tag_term`], with extra variable types taking precedence over Γ.
pub fn tag_term_with(ctx: &Context, locals: &BTreeMap<Name, TermType>, t: &Term) -> Result<Term, RuleError> {
    crate::grow(|| tag_node(ctx, locals, t))
}

fn tag_node(ctx: &Context, locals: &BTreeMap<Name, TermType>, t: &Term) -> Result<Term, RuleError> {
    match t.kind() {
        TermKind::Const(c) => match ctx.constant_sort(c) {
            Some(s) => Ok(t.retag(Some(TermType::Sort(s.clone())))),
            None if ctx.function_sig(c).is_some() => {
                let expected = ctx.function_sig(c).map_or(0, |s| s.args.len());
                Err(RuleError::new("fun", TypeError::ArityMismatch { symbol: c.clone(), expected, found: 0 }))
            }
            None => Err(RuleError::new("con", TypeError::UndeclaredSymbol(c.clone()))),
        },
        TermKind::App(f, args) => {
            let sig = match ctx.function_sig(f) {
                Some(sig) => sig,
                None if ctx.constant_sort(f).is_some() => {
                    let err = TypeError::ArityMismatch { symbol: f.clone(), expected: 0, found: args.len() };
                    return Err(RuleError::new("con", err));
                }
                None => return Err(RuleError::new("fun", TypeError::UndeclaredSymbol(f.clone()))),
            };
            if sig.args.len() != args.len() {
                let err = TypeError::ArityMismatch { symbol: f.clone(), expected: sig.args.len(), found: args.len() };
                return Err(RuleError::new("fun", err));
            }
            let mut tagged = Vec::with_capacity(args.len());
            for (i, (arg, expected)) in args.iter().zip(&sig.args).enumerate() {
                let a = tag_term_with(ctx, locals, arg)?;
                let found = a.tag().cloned().expect("tagged");
                let expected = TermType::Sort(expected.clone());
                if found != expected {
                    let err = TypeError::ArgSortMismatch { symbol: f.clone(), position: i + 1, expected, found };
                    return Err(RuleError::new("fun", err));
                }
                tagged.push(a);
            }
            Ok(t.rebuild(tagged, Some(TermType::Sort(sig.result.clone()))))
        }
        TermKind::Var(x) => match locals.get(x).or_else(|| ctx.var_type(x)) {
            Some(ty) => Ok(t.retag(Some(ty.clone()))),
            None => Err(RuleError::new("var", TypeError::UndeclaredVariable(x.clone()))),
        },
        TermKind::Unit => Ok(t.retag(Some(TermType::Unit))),
        TermKind::Pair(a, b) => {
            let a = tag_term_with(ctx, locals, a)?;
            let b = tag_term_with(ctx, locals, b)?;
            let ty = TermType::pair(a.tag().cloned().expect("tagged"), b.tag().cloned().expect("tagged"));
            Ok(t.rebuild(vec![a, b], Some(ty)))
        }
    }
}
