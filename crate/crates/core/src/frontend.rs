//! Lexer, parser and name resolution for program files and terms.
//!
//! Bare names are parsed as provisional calls and rule terms as constants;
//! a resolution pass then turns them into congruences, parameters and
//! variables once all declarations are known.

use std::collections::BTreeSet;
use std::fmt;

use crate::context::{tag_term, Context, Decl, FunSig};
use crate::error::{Diagnostic, Pos};
use crate::syntax::{Definition, Definitions, Program, Rule, RuleBody, Strategy, StrategyKind};
use crate::term::{Term, TermKind};
use crate::types::{CombinatorType, StrategyType, TermType};
use crate::Name;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrontendError {
    #[error("ERROR parse at {pos}: {message}")]
    Parse { pos: Pos, message: String },
    #[error("ERROR parse at {pos}: combinator `{name}` is defined more than once")]
    DuplicateDefinition { pos: Pos, name: Name },
    #[error("{0}")]
    Type(Diagnostic),
}

impl FrontendError {
    pub fn pos(&self) -> Pos {
        match self {
            FrontendError::Parse { pos, .. }
            | FrontendError::DuplicateDefinition { pos, .. } => *pos,
            FrontendError::Type(d) => d.pos,
        }
    }
}

const KEYWORDS: &[&str] = &["sort", "con", "fun", "var", "def", "main", "id", "fail", "void", "where", "TP", "TU"];

/// Strategy forms that are keywords only when followed by `(`, so that for
/// example `one` remains usable as a constant.
const FORMS: &[&str] = &["all", "one", "reduce", "select", "spawn", "extend", "restrict", "guard"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    TyVar(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::TyVar(n) => write!(f, "`'{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const SYMBOLS: &[&str] = &[
    "->", "<+", "+>", "<&", "&>", ":=", "+", "&", ";", ",", "(", ")", "[", "]", ":", "*", "=", "!", "@",
];

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, FrontendError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let ident = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' || c == '\'' {
            let start = i;
            i += 1;
            while i < chars.len() && ident(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += (i - start) as u32;
            if let Some(rest) = word.strip_prefix('\'') {
                if rest.is_empty() || !rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
                    return Err(FrontendError::Parse { pos, message: "malformed type variable".into() });
                }
                toks.push((Tok::TyVar(rest.to_string()), pos));
            } else {
                toks.push((Tok::Name(word), pos));
            }
            continue;
        }
        let sym = SYMBOLS.iter().find(|s| {
            let s: Vec<char> = s.chars().collect();
            chars[i..].starts_with(&s)
        });
        match sym {
            Some(s) => {
                i += s.len();
                col += s.len() as u32;
                toks.push((Tok::Sym(s), pos));
            }
            None => return Err(FrontendError::Parse { pos, message: format!("unexpected character `{c}`") }),
        }
    }
    toks.push((Tok::Eof, Pos::new(line, col)));
    Ok(toks)
}

enum Item {
    Decl(Decl, Pos),
    Def(Definition),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

type PResult<T> = Result<T, FrontendError>;

impl Parser {
    fn new(text: &str) -> PResult<Parser> {
        Ok(Parser { toks: lex(text)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(FrontendError::Parse { pos: self.pos(), message: format!("expected {expected}, found {}", self.peek()) })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Name(x) if x == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn expect_kw(&mut self, k: &str) -> PResult<()> {
        if self.is_kw(k) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{k}`"))
        }
    }

    /// A non-keyword identifier.
    fn name(&mut self) -> PResult<Name> {
        match self.peek() {
            Tok::Name(n) if !KEYWORDS.contains(&n.as_str()) => {
                let n = Name::from(n.as_str());
                self.bump();
                Ok(n)
            }
            _ => self.error("a name"),
        }
    }

    fn tyvar(&mut self) -> PResult<Name> {
        match self.peek() {
            Tok::TyVar(n) => {
                let n = Name::from(n.as_str());
                self.bump();
                Ok(n)
            }
            _ => self.error("a type variable"),
        }
    }

    /// Runs `f`, rewinding on failure.
    fn attempt<T>(&mut self, f: impl FnOnce(&mut Parser) -> PResult<T>) -> Option<T> {
        let save = self.i;
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.i = save;
                None
            }
        }
    }

    fn items(&mut self, prelude: bool, until_main: bool) -> PResult<Vec<Item>> {
        let mut items = Vec::new();
        loop {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Eof if !until_main => return Ok(items),
                Tok::Name(k) if until_main && k == "main" => return Ok(items),
                Tok::Name(k) if k == "sort" => {
                    self.bump();
                    let n = self.name()?;
                    self.expect_sym(";")?;
                    items.push(Item::Decl(Decl::Sort(n), pos));
                }
                Tok::Name(k) if k == "con" => {
                    self.bump();
                    let n = self.name()?;
                    self.expect_sym(":")?;
                    let s = self.name()?;
                    self.expect_sym(";")?;
                    items.push(Item::Decl(Decl::Constant(n, s), pos));
                }
                Tok::Name(k) if k == "fun" => {
                    self.bump();
                    let n = self.name()?;
                    self.expect_sym(":")?;
                    let mut args = vec![self.name()?];
                    while self.eat_sym("*") {
                        args.push(self.name()?);
                    }
                    self.expect_sym("->")?;
                    let result = self.name()?;
                    self.expect_sym(";")?;
                    items.push(Item::Decl(Decl::Function(n, FunSig { args, result }), pos));
                }
                Tok::Name(k) if k == "var" => {
                    self.bump();
                    let n = self.name()?;
                    self.expect_sym(":")?;
                    let t = self.ttype()?;
                    self.expect_sym(";")?;
                    items.push(Item::Decl(Decl::Var(n, t), pos));
                }
                Tok::Name(k) if k == "def" => {
                    self.bump();
                    items.push(Item::Def(self.definition(pos, prelude)?));
                }
                _ => {
                    let what = if until_main { "a declaration or `main`" } else { "a declaration" };
                    return self.error(what);
                }
            }
        }
    }

    fn definition(&mut self, pos: Pos, from_prelude: bool) -> PResult<Definition> {
        let name = self.name()?;
        let mut type_params = Vec::new();
        if self.eat_sym("[") {
            type_params.push(self.tyvar()?);
            while self.eat_sym(",") {
                type_params.push(self.tyvar()?);
            }
            self.expect_sym("]")?;
        }
        let mut params = Vec::new();
        if self.eat_sym("(") {
            params.push(self.name()?);
            while self.eat_sym(",") {
                params.push(self.name()?);
            }
            self.expect_sym(")")?;
        }
        self.expect_sym(":")?;
        let mut args = Vec::new();
        for i in 0..params.len() {
            if i > 0 {
                self.expect_sym("*")?;
            }
            args.push(self.stype()?);
        }
        if !params.is_empty() {
            self.expect_sym("->")?;
        }
        let result = self.stype()?;
        self.expect_sym("=")?;
        let body = self.strat()?;
        self.expect_sym(";")?;
        let ty = CombinatorType { type_params, args, result };
        Ok(Definition { name, params, ty, body, pos, from_prelude })
    }

    fn ttype(&mut self) -> PResult<TermType> {
        match self.peek().clone() {
            Tok::TyVar(_) => Ok(TermType::Var(self.tyvar()?)),
            Tok::Sym("(") => {
                self.bump();
                if self.eat_sym(")") {
                    return Ok(TermType::Unit);
                }
                let a = self.ttype()?;
                self.expect_sym(",")?;
                let b = self.ttype()?;
                self.expect_sym(")")?;
                Ok(TermType::pair(a, b))
            }
            _ => Ok(TermType::Sort(self.name()?)),
        }
    }

    fn stype(&mut self) -> PResult<StrategyType> {
        let first = self.stype_atom()?;
        if self.eat_sym("&") {
            Ok(StrategyType::amp(first, self.stype()?))
        } else {
            Ok(first)
        }
    }

    fn stype_atom(&mut self) -> PResult<StrategyType> {
        if self.is_kw("TP") {
            self.bump();
            return Ok(StrategyType::TP);
        }
        if self.is_kw("TU") {
            self.bump();
            self.expect_sym("(")?;
            let t = self.ttype()?;
            self.expect_sym(")")?;
            return Ok(StrategyType::TU(t));
        }
        if self.is_sym("(") {
            if let Some(a) = self.attempt(|p| {
                let a = p.ttype()?;
                if p.is_sym("->") {
                    Ok(a)
                } else {
                    p.error("`->`")
                }
            }) {
                self.bump();
                return Ok(StrategyType::arrow(a, self.ttype()?));
            }
            self.bump();
            let s = self.stype()?;
            self.expect_sym(")")?;
            return Ok(s);
        }
        let a = self.ttype()?;
        self.expect_sym("->")?;
        Ok(StrategyType::arrow(a, self.ttype()?))
    }

    fn strat(&mut self) -> PResult<Strategy> {
        let left = self.plus_level()?;
        let pos = self.pos();
        let ctor: fn(Box<Strategy>, Box<Strategy>) -> StrategyKind = match self.peek() {
            Tok::Sym("&") => StrategyKind::Amp,
            Tok::Sym("<&") => StrategyKind::TLChoice,
            Tok::Sym("&>") => StrategyKind::TRChoice,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.strat()?;
        Ok(Strategy::at(ctor(Box::new(left), Box::new(right)), pos))
    }

    fn plus_level(&mut self) -> PResult<Strategy> {
        let left = self.seq_level()?;
        let pos = self.pos();
        let ctor: fn(Box<Strategy>, Box<Strategy>) -> StrategyKind = match self.peek() {
            Tok::Sym("+") => StrategyKind::Choice,
            Tok::Sym("<+") => StrategyKind::LChoice,
            Tok::Sym("+>") => StrategyKind::RChoice,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.plus_level()?;
        Ok(Strategy::at(ctor(Box::new(left), Box::new(right)), pos))
    }

    fn seq_level(&mut self) -> PResult<Strategy> {
        let left = self.primary()?;
        let pos = self.pos();
        if self.eat_sym(";") {
            // A `;` directly followed by an item keyword or end of input ends the definition.
            self.i -= 1;
            if self.seq_continues() {
                self.bump();
                let right = self.seq_level()?;
                return Ok(Strategy::at(StrategyKind::Seq(Box::new(left), Box::new(right)), pos));
            }
        }
        Ok(left)
    }

    fn seq_continues(&self) -> bool {
        match self.peek_at(1) {
            Tok::Eof => false,
            Tok::Name(k) => !matches!(k.as_str(), "sort" | "con" | "fun" | "var" | "def" | "main"),
            Tok::Sym(s) => !matches!(*s, ")" | "]" | "," | ";" | "@" | "=" | ":"),
            Tok::TyVar(_) => true,
        }
    }

    fn unary(&mut self, kw: &str) -> PResult<Strategy> {
        self.expect_kw(kw)?;
        self.expect_sym("(")?;
        let s = self.strat()?;
        self.expect_sym(")")?;
        Ok(s)
    }

    fn binary(&mut self, kw: &str) -> PResult<(Strategy, Strategy)> {
        self.expect_kw(kw)?;
        self.expect_sym("(")?;
        let a = self.strat()?;
        self.expect_sym(",")?;
        let b = self.strat()?;
        self.expect_sym(")")?;
        Ok((a, b))
    }

    fn typed(&mut self, kw: &str) -> PResult<(Strategy, StrategyType)> {
        self.expect_kw(kw)?;
        self.expect_sym("(")?;
        let a = self.strat()?;
        self.expect_sym(",")?;
        let t = self.stype()?;
        self.expect_sym(")")?;
        Ok((a, t))
    }

    fn primary(&mut self) -> PResult<Strategy> {
        let pos = self.pos();
        let b = Box::new;
        if let Some(lhs) = self.attempt(|p| {
            let t = p.term()?;
            if p.is_sym("->") {
                Ok(t)
            } else {
                p.error("`->`")
            }
        }) {
            self.bump();
            let body = self.rule_body()?;
            return Ok(Strategy::at(StrategyKind::Rule(Box::new(Rule { lhs, body })), pos));
        }
        let kind = match self.peek().clone() {
            Tok::Sym("!") => {
                self.bump();
                StrategyKind::Neg(b(self.primary()?))
            }
            Tok::Sym("(") => {
                self.bump();
                if self.eat_sym(")") {
                    StrategyKind::CongUnit
                } else {
                    let s = self.strat()?;
                    if self.eat_sym(",") {
                        let t = self.strat()?;
                        self.expect_sym(")")?;
                        StrategyKind::CongPair(b(s), b(t))
                    } else if self.eat_sym(":") {
                        let ty = self.stype()?;
                        self.expect_sym(")")?;
                        StrategyKind::Annot(b(s), ty)
                    } else {
                        self.expect_sym(")")?;
                        return Ok(s);
                    }
                }
            }
            Tok::Name(k) => match k.as_str() {
                k if FORMS.contains(&k) && !matches!(self.peek_at(1), Tok::Sym("(")) => self.call()?,
                "id" => {
                    self.bump();
                    StrategyKind::Id
                }
                "fail" => {
                    self.bump();
                    StrategyKind::Fail
                }
                "void" => {
                    self.bump();
                    StrategyKind::Void
                }
                "all" => StrategyKind::All(b(self.unary("all")?)),
                "one" => StrategyKind::One(b(self.unary("one")?)),
                "select" => StrategyKind::Select(b(self.unary("select")?)),
                "reduce" => {
                    let (x, y) = self.binary("reduce")?;
                    StrategyKind::Reduce(b(x), b(y))
                }
                "spawn" => {
                    let (x, y) = self.binary("spawn")?;
                    StrategyKind::Spawn(b(x), b(y))
                }
                "extend" => {
                    let (x, t) = self.typed("extend")?;
                    StrategyKind::Extend(b(x), t)
                }
                "restrict" => {
                    let (x, t) = self.typed("restrict")?;
                    StrategyKind::Restrict(b(x), t)
                }
                "guard" => {
                    self.bump();
                    self.expect_sym("(")?;
                    let t = self.ttype()?;
                    self.expect_sym(",")?;
                    let g = self.stype()?;
                    self.expect_sym(")")?;
                    StrategyKind::TypeGuard(t, g)
                }
                _ => self.call()?,
            },
            _ => return self.error("a strategy"),
        };
        Ok(Strategy::at(kind, pos))
    }

    /// `name[types](args)` with both lists optional; resolved later.
    fn call(&mut self) -> PResult<StrategyKind> {
        let name = self.name()?;
        let mut types = Vec::new();
        if self.eat_sym("[") {
            types.push(self.ttype()?);
            while self.eat_sym(",") {
                types.push(self.ttype()?);
            }
            self.expect_sym("]")?;
        }
        let mut args = Vec::new();
        if self.eat_sym("(") {
            args.push(self.strat()?);
            while self.eat_sym(",") {
                args.push(self.strat()?);
            }
            self.expect_sym(")")?;
        }
        Ok(StrategyKind::Call(name, types, args))
    }

    fn rule_body(&mut self) -> PResult<RuleBody> {
        let result = self.term()?;
        let mut clauses = Vec::new();
        while self.is_kw("where") {
            self.bump();
            let var = self.name()?;
            self.expect_sym(":=")?;
            let s = self.strat()?;
            self.expect_sym("@")?;
            let arg = self.term()?;
            clauses.push((var, s, arg));
        }
        let mut body = RuleBody::Result(result);
        for (var, s, arg) in clauses.into_iter().rev() {
            body = RuleBody::Where { var, strategy: Box::new(s), arg, rest: Box::new(body) };
        }
        Ok(body)
    }

    /// Terms with every name parsed as a constant or application.
    fn term(&mut self) -> PResult<Term> {
        crate::grow(|| self.term_node())
    }

    fn term_node(&mut self) -> PResult<Term> {
        if self.eat_sym("(") {
            if self.eat_sym(")") {
                return Ok(Term::unit());
            }
            let a = self.term()?;
            self.expect_sym(",")?;
            let b = self.term()?;
            self.expect_sym(")")?;
            return Ok(Term::pair(a, b));
        }
        let name = self.name()?;
        if self.eat_sym("(") {
            let mut args = vec![self.term()?];
            while self.eat_sym(",") {
                args.push(self.term()?);
            }
            self.expect_sym(")")?;
            Ok(Term::app(name, args))
        } else {
            Ok(Term::constant(name))
        }
    }

    fn expect_eof(&self) -> PResult<()> {
        if matches!(self.peek(), Tok::Eof) {
            Ok(())
        } else {
            self.error("end of input")
        }
    }
}

/// Parses a complete program, with `prelude` (a file of declarations and
/// definitions) read first.
pub fn parse_program_with(prelude: Option<&str>, text: &str) -> PResult<Program> {
    let mut items = Vec::new();
    if let Some(prelude) = prelude {
        let mut p = Parser::new(prelude)?;
        items.extend(p.items(true, false)?);
    }
    let mut p = Parser::new(text)?;
    items.extend(p.items(false, true)?);
    if !p.is_kw("main") {
        return p.error("`main`");
    }
    p.bump();
    p.expect_sym("=")?;
    let main = p.strat()?;
    p.expect_sym(";")?;
    p.expect_eof()?;
    assemble(items, main)
}

/// Parses a program without a prelude.
pub fn parse_program(text: &str) -> PResult<Program> {
    parse_program_with(None, text)
}

/// Parses a file of declarations and definitions only.
pub fn parse_items(text: &str) -> PResult<(Context, Definitions)> {
    let mut p = Parser::new(text)?;
    let items = p.items(true, false)?;
    let program = assemble(items, Strategy::id())?;
    Ok((program.context, program.definitions))
}

fn assemble(items: Vec<Item>, main: Strategy) -> PResult<Program> {
    let mut ctx = Context::new();
    let mut defs = Vec::new();
    for item in items {
        match item {
            Item::Decl(d, pos) => ctx.declare(d, pos),
            Item::Def(def) => {
                ctx.declare(Decl::Combinator(def.name.clone(), def.ty.clone()), def.pos);
                defs.push(def);
            }
        }
    }
    let mut definitions = Definitions::new();
    for def in defs {
        let params: BTreeSet<Name> = def.params.iter().cloned().collect();
        let body = resolve(&ctx, &params, &def.body)?;
        let (pos, name) = (def.pos, def.name.clone());
        if !definitions.insert(Definition { body, ..def }) {
            return Err(FrontendError::DuplicateDefinition { pos, name });
        }
    }
    let main = resolve(&ctx, &BTreeSet::new(), &main)?;
    Ok(Program { context: ctx, definitions, main })
}

/// Resolves provisional calls and rule-term names against `ctx`.
pub fn resolve(ctx: &Context, params: &BTreeSet<Name>, s: &Strategy) -> PResult<Strategy> {
    use StrategyKind::*;
    let go = |x: &Strategy| resolve(ctx, params, x).map(Box::new);
    let all = |xs: &[Strategy]| xs.iter().map(|x| resolve(ctx, params, x)).collect::<PResult<Vec<_>>>();
    let kind = match &s.kind {
        Call(name, types, args) => {
            let bare = types.is_empty() && args.is_empty();
            if bare && ctx.constant_sort(name).is_some() {
                CongCon(name.clone())
            } else if types.is_empty() && ctx.function_sig(name).is_some() {
                CongFun(name.clone(), all(args)?)
            } else if bare && (params.contains(name) || ctx.combinator_type(name).is_none()) {
                Param(name.clone())
            } else {
                // Unknown combinators are left for the typechecker to report.
                Call(name.clone(), types.clone(), all(args)?)
            }
        }
        Rule(r) => Rule(Box::new(resolve_rule(ctx, params, r)?)),
        Seq(a, b) => Seq(go(a)?, go(b)?),
        Choice(a, b) => Choice(go(a)?, go(b)?),
        LChoice(a, b) => LChoice(go(a)?, go(b)?),
        RChoice(a, b) => RChoice(go(a)?, go(b)?),
        Neg(a) => Neg(go(a)?),
        CongFun(f, args) => CongFun(f.clone(), all(args)?),
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
        TLChoice(a, b) => TLChoice(go(a)?, go(b)?),
        TRChoice(a, b) => TRChoice(go(a)?, go(b)?),
        other => other.clone(),
    };
    Ok(Strategy::at(kind, s.pos))
}

fn resolve_rule(ctx: &Context, params: &BTreeSet<Name>, r: &Rule) -> PResult<Rule> {
    let mut bound = BTreeSet::new();
    let mut b = &r.body;
    while let RuleBody::Where { var, rest, .. } = b {
        bound.insert(var.clone());
        b = rest;
    }
    fn body(ctx: &Context, params: &BTreeSet<Name>, bound: &BTreeSet<Name>, b: &RuleBody) -> PResult<RuleBody> {
        Ok(match b {
            RuleBody::Result(t) => RuleBody::Result(resolve_term(ctx, bound, t)),
            RuleBody::Where { var, strategy, arg, rest } => RuleBody::Where {
                var: var.clone(),
                strategy: Box::new(resolve(ctx, params, strategy)?),
                arg: resolve_term(ctx, bound, arg),
                rest: Box::new(body(ctx, params, bound, rest)?),
            },
        })
    }
    Ok(Rule { lhs: resolve_term(ctx, &bound, &r.lhs), body: body(ctx, params, &bound, &r.body)? })
}

/// Turns declared or where-bound names into variables and pre-tags nodes by
/// their head symbol.
fn resolve_term(ctx: &Context, bound: &BTreeSet<Name>, t: &Term) -> Term {
    crate::grow(|| resolve_node(ctx, bound, t))
}

fn resolve_node(ctx: &Context, bound: &BTreeSet<Name>, t: &Term) -> Term {
    let out = match t.kind() {
        TermKind::Const(c) if ctx.var_type(c).is_some() || bound.contains(c) => Term::var(c.clone()),
        TermKind::App(_, _) | TermKind::Pair(_, _) => {
            let children = t.children().iter().map(|c| resolve_term(ctx, bound, c)).collect();
            t.rebuild(children, None)
        }
        _ => t.clone(),
    };
    let tag = match out.kind() {
        TermKind::Pair(a, b) => a.tag().cloned().zip(b.tag().cloned()).map(|(a, b)| TermType::pair(a, b)),
        _ => ctx.head_type(&out),
    };
    out.retag(tag)
}

/// Parses a ground term and tags it.
pub fn parse_term(text: &str, ctx: &Context) -> PResult<Term> {
    let mut p = Parser::new(text)?;
    let pos = p.pos();
    let t = p.term()?;
    p.expect_eof()?;
    let mut vars = Vec::new();
    collect_var_names(ctx, &t, &mut vars);
    if let Some(x) = vars.first() {
        return Err(FrontendError::Parse { pos, message: format!("variable `{x}` in a ground term") });
    }
    tag_term(ctx, &t).map_err(|e| FrontendError::Type(e.at(pos)))
}

fn collect_var_names(ctx: &Context, t: &Term, out: &mut Vec<Name>) {
    crate::grow(|| match t.kind() {
        TermKind::Const(c) if ctx.var_type(c).is_some() => out.push(c.clone()),
        _ => t.children().iter().for_each(|c| collect_var_names(ctx, c, out)),
    })
}
