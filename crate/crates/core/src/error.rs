//! Type errors and positioned diagnostics.

use std::fmt;

use crate::types::{StrategyType, TermType};
use crate::Name;

/// 1-based source position. `Pos::default()` (0:0) marks synthesized nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Pos {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("undeclared sort `{0}`")]
    UndeclaredSort(Name),
    #[error("type variable '{0} is not in scope")]
    UnboundTypeVar(Name),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(Name),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(Name),
    #[error("`{symbol}` expects {expected} argument(s), found {found}")]
    ArityMismatch { symbol: Name, expected: usize, found: usize },
    #[error("argument {position} of `{symbol}` has type {found}, expected {expected}")]
    ArgSortMismatch { symbol: Name, position: usize, expected: TermType, found: TermType },
    #[error("name `{0}` is declared more than once")]
    DuplicateName(Name),
    #[error("declaration of `{decl}` mentions undeclared sort `{sort}`")]
    UndeclaredSortInDecl { decl: Name, sort: Name },
    #[error("variable `{0}` is not bound by the left-hand side or an earlier where-clause")]
    UnboundVariable(Name),
    #[error("variable `{0}` is bound more than once in the rule")]
    NonLinearBinding(Name),
    #[error("overloaded type {0} has overlapping domains")]
    OverlappingAmpDomains(StrategyType),
    #[error("overloaded type {0} has a generic branch")]
    GenericInAmp(StrategyType),
    #[error("domains of generic type {0} are undefined")]
    GenericDomainUndefined(StrategyType),
    #[error("strategy of type {0} cannot be negated")]
    NotNegatable(StrategyType),
    #[error("cannot compose {0} with {1}")]
    NotComposable(StrategyType, StrategyType),
    #[error("{0} and {1} have no common lower bound")]
    NoLowerBound(StrategyType, StrategyType),
    #[error("strategy of type {0} is not applicable to terms of type {1}")]
    InapplicableType(StrategyType, TermType),
    #[error("cannot extend {actual} to {target}: not an instance")]
    ExtendNotInstance { actual: StrategyType, target: StrategyType },
    #[error("cannot restrict {actual} to {target}: not an instance")]
    RestrictNotInstance { actual: StrategyType, target: StrategyType },
    #[error("annotation {declared} does not match actual type {actual}")]
    AnnotMismatch { declared: StrategyType, actual: StrategyType },
    #[error("argument {position} of congruence `{symbol}` has type {found}, which has no instance {expected}")]
    CongArgMismatch { symbol: Name, position: usize, expected: StrategyType, found: StrategyType },
    #[error("{what}, found {found}")]
    Expected { what: String, found: StrategyType },
    #[error("unbound strategy variable `{0}`")]
    UnboundStrategyVar(Name),
    #[error("unknown combinator `{0}`")]
    UnknownCombinator(Name),
    #[error("`{name}` expects {expected} strategy argument(s), found {found}")]
    CallArityMismatch { name: Name, expected: usize, found: usize },
    #[error("`{name}` expects {expected} type argument(s), found {found}")]
    CallTypeArgMismatch { name: Name, expected: usize, found: usize },
    #[error("argument {position} of `{name}` has type {found}, expected {expected}")]
    CallArgMismatch { name: Name, position: usize, expected: StrategyType, found: StrategyType },
    #[error("body of `{name}` has type {actual}, declared {declared}")]
    DefTypeMismatch { name: Name, declared: StrategyType, actual: StrategyType },
    #[error("where-bound `{var}` is declared {declared} but receives {actual}")]
    WhereVarType { var: Name, declared: TermType, actual: TermType },
}

/// A type error together with the name of the typing rule that rejected it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleError {
    pub rule: &'static str,
    pub error: TypeError,
}

impl RuleError {
    pub fn new(rule: &'static str, error: TypeError) -> RuleError {
        RuleError { rule, error }
    }

    pub fn at(self, pos: Pos) -> Diagnostic {
        Diagnostic { rule: self.rule, pos, error: self.error }
    }
}

impl fmt::Display for RuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.error)
    }
}

impl std::error::Error for RuleError {}

/// A positioned typing diagnostic, rendered as
/// `ERROR <rule> at <line>:<col>: <message>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: &'static str,
    pub pos: Pos,
    pub error: TypeError,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ERROR {} at {}: {}", self.rule, self.pos, self.error)
    }
}

impl std::error::Error for Diagnostic {}
