//! Term types, strategy types and combinator signatures.

use std::fmt;

use crate::Name;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermType {
    Sort(Name),
    Unit,
    Pair(Box<TermType>, Box<TermType>),
    /// Type variable, stored without the leading quote.
    Var(Name),
}

impl TermType {
    pub fn sort(name: impl Into<Name>) -> TermType {
        TermType::Sort(name.into())
    }

    pub fn pair(a: TermType, b: TermType) -> TermType {
        TermType::Pair(Box::new(a), Box::new(b))
    }

    pub fn var(name: impl Into<Name>) -> TermType {
        TermType::Var(name.into())
    }

    /// Replaces type variables bound in `sub`.
    pub fn subst(&self, sub: &[(Name, TermType)]) -> TermType {
        match self {
            TermType::Var(a) => sub
                .iter()
                .find(|(b, _)| b == a)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| self.clone()),
            TermType::Pair(a, b) => TermType::pair(a.subst(sub), b.subst(sub)),
            TermType::Sort(_) | TermType::Unit => self.clone(),
        }
    }

    pub fn type_vars(&self, out: &mut Vec<Name>) {
        match self {
            TermType::Var(a) => out.push(a.clone()),
            TermType::Pair(a, b) => {
                a.type_vars(out);
                b.type_vars(out);
            }
            TermType::Sort(_) | TermType::Unit => {}
        }
    }
}

impl fmt::Display for TermType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermType::Sort(s) => write!(f, "{s}"),
            TermType::Unit => write!(f, "()"),
            TermType::Pair(a, b) => write!(f, "({a},{b})"),
            TermType::Var(a) => write!(f, "'{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrategyType {
    Arrow(TermType, TermType),
    TP,
    TU(TermType),
    Amp(Box<StrategyType>, Box<StrategyType>),
}

impl StrategyType {
    pub fn arrow(a: TermType, b: TermType) -> StrategyType {
        StrategyType::Arrow(a, b)
    }

    pub fn amp(a: StrategyType, b: StrategyType) -> StrategyType {
        StrategyType::Amp(Box::new(a), Box::new(b))
    }

    /// Right-nested `&` over a non-empty list.
    pub fn amp_all(mut branches: Vec<StrategyType>) -> Option<StrategyType> {
        let mut acc = branches.pop()?;
        while let Some(b) = branches.pop() {
            acc = StrategyType::amp(b, acc);
        }
        Some(acc)
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, StrategyType::TP | StrategyType::TU(_))
    }

    /// Flattened `&` operands in left-to-right order; a non-Amp type is its
    /// own single branch.
    pub fn branches(&self) -> Vec<&StrategyType> {
        let mut out = Vec::new();
        self.collect_branches(&mut out);
        out
    }

    fn collect_branches<'a>(&'a self, out: &mut Vec<&'a StrategyType>) {
        match self {
            StrategyType::Amp(a, b) => {
                a.collect_branches(out);
                b.collect_branches(out);
            }
            other => out.push(other),
        }
    }

    /// Equality modulo associativity and commutativity of `&`.
    pub fn equiv(&self, other: &StrategyType) -> bool {
        let mut a = self.branches();
        let mut b = other.branches();
        if a.len() != b.len() {
            return false;
        }
        a.sort();
        b.sort();
        a == b
    }

    pub fn subst(&self, sub: &[(Name, TermType)]) -> StrategyType {
        match self {
            StrategyType::Arrow(a, b) => StrategyType::Arrow(a.subst(sub), b.subst(sub)),
            StrategyType::TP => StrategyType::TP,
            StrategyType::TU(t) => StrategyType::TU(t.subst(sub)),
            StrategyType::Amp(a, b) => StrategyType::amp(a.subst(sub), b.subst(sub)),
        }
    }

    pub fn type_vars(&self, out: &mut Vec<Name>) {
        match self {
            StrategyType::Arrow(a, b) => {
                a.type_vars(out);
                b.type_vars(out);
            }
            StrategyType::TP => {}
            StrategyType::TU(t) => t.type_vars(out),
            StrategyType::Amp(a, b) => {
                a.type_vars(out);
                b.type_vars(out);
            }
        }
    }
}

impl fmt::Display for StrategyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyType::Arrow(a, b) => write!(f, "{a} -> {b}"),
            StrategyType::TP => write!(f, "TP"),
            StrategyType::TU(t) => write!(f, "TU({t})"),
            StrategyType::Amp(a, b) => {
                if matches!(**a, StrategyType::Amp(..)) {
                    write!(f, "({a}) & {b}")
                } else {
                    write!(f, "{a} & {b}")
                }
            }
        }
    }
}

/// `forall type_params. args[0] * ... * args[n-1] -> result`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorType {
    pub type_params: Vec<Name>,
    pub args: Vec<StrategyType>,
    pub result: StrategyType,
}

impl CombinatorType {
    pub fn simple(result: StrategyType) -> CombinatorType {
        CombinatorType { type_params: Vec::new(), args: Vec::new(), result }
    }
}

impl fmt::Display for CombinatorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.type_params.is_empty() {
            write!(f, "forall")?;
            for a in &self.type_params {
                write!(f, " '{a}")?;
            }
            write!(f, ". ")?;
        }
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.args.is_empty() {
            write!(f, " -> ")?;
        }
        write!(f, "{}", self.result)
    }
}
