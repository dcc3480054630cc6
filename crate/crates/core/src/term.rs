//! Many-sorted terms, substitutions and first-order matching.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::types::TermType;
use crate::Name;

/// Shape of a term node.
#[derive(Debug, Clone)]
pub enum TermKind {
    Const(Name),
    /// Function application; the child list is never empty.
    App(Name, Vec<Term>),
    Var(Name),
    Unit,
    Pair(Term, Term),
}

#[derive(Debug)]
struct Node {
    kind: TermKind,
    tag: Option<TermType>,
}

impl TermKind {
    fn take_children(&mut self) -> Vec<Term> {
        match std::mem::replace(self, TermKind::Unit) {
            TermKind::App(_, args) => args,
            TermKind::Pair(a, b) => vec![a, b],
            other => {
                *self = other;
                Vec::new()
            }
        }
    }
}

// Iterative, so dropping a deep term does not recurse.
impl Drop for Node {
    fn drop(&mut self) {
        let mut stack = self.kind.take_children();
        while let Some(t) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(t.0) {
                stack.extend(node.kind.take_children());
            }
        }
    }
}

/// An immutable, cheaply clonable term. Sort tags are carried along but
/// never take part in equality.
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl Term {
    pub fn new(kind: TermKind) -> Term {
        Term(Arc::new(Node { kind, tag: None }))
    }

    pub fn with_tag(kind: TermKind, tag: Option<TermType>) -> Term {
        Term(Arc::new(Node { kind, tag }))
    }

    pub fn constant(name: impl Into<Name>) -> Term {
        Term::new(TermKind::Const(name.into()))
    }

    /// Builds `f(args)`. An empty argument list yields a constant.
    pub fn app(name: impl Into<Name>, args: Vec<Term>) -> Term {
        if args.is_empty() {
            Term::new(TermKind::Const(name.into()))
        } else {
            Term::new(TermKind::App(name.into(), args))
        }
    }

    pub fn var(name: impl Into<Name>) -> Term {
        Term::new(TermKind::Var(name.into()))
    }

    pub fn unit() -> Term {
        Term::new(TermKind::Unit)
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::new(TermKind::Pair(a, b))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn tag(&self) -> Option<&TermType> {
        self.0.tag.as_ref()
    }

    /// Same node with a different tag.
    pub fn retag(&self, tag: Option<TermType>) -> Term {
        Term::with_tag(self.0.kind.clone(), tag)
    }

    /// Immediate subterms, left to right. Pairs count as binary nodes.
    pub fn children(&self) -> Vec<Term> {
        match &self.0.kind {
            TermKind::App(_, args) => args.clone(),
            TermKind::Pair(a, b) => vec![a.clone(), b.clone()],
            TermKind::Const(_) | TermKind::Var(_) | TermKind::Unit => Vec::new(),
        }
    }

    /// Rebuilds a node with new children, keeping the functor and the given tag.
    /// The child count must match.
    pub fn rebuild(&self, children: Vec<Term>, tag: Option<TermType>) -> Term {
        let kind = match &self.0.kind {
            TermKind::App(f, args) => {
                debug_assert_eq!(args.len(), children.len());
                TermKind::App(f.clone(), children)
            }
            TermKind::Pair(..) => {
                let mut it = children.into_iter();
                let a = it.next().expect("pair has two children");
                let b = it.next().expect("pair has two children");
                TermKind::Pair(a, b)
            }
            other => other.clone(),
        };
        Term::with_tag(kind, tag)
    }

    pub fn is_ground(&self) -> bool {
        crate::grow(|| match &self.0.kind {
            TermKind::Var(_) => false,
            TermKind::Const(_) | TermKind::Unit => true,
            TermKind::App(_, args) => args.iter().all(Term::is_ground),
            TermKind::Pair(a, b) => a.is_ground() && b.is_ground(),
        })
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.0.kind, TermKind::Const(_) | TermKind::Unit)
    }

    /// Variables in left-to-right order, with repetitions.
    pub fn vars(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Name>) {
        crate::grow(|| match &self.0.kind {
            TermKind::Var(x) => out.push(x.clone()),
            TermKind::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            TermKind::Pair(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            TermKind::Const(_) | TermKind::Unit => {}
        })
    }

    /// Short description of the outermost symbol, used in traces.
    pub fn head(&self) -> String {
        match &self.0.kind {
            TermKind::Const(c) => c.to_string(),
            TermKind::App(f, _) => f.to_string(),
            TermKind::Var(x) => x.to_string(),
            TermKind::Unit => "()".to_string(),
            TermKind::Pair(..) => "(,)".to_string(),
        }
    }

    pub fn size(&self) -> usize {
        crate::grow(|| 1 + self.children().iter().map(Term::size).sum::<usize>())
    }

    pub fn depth(&self) -> usize {
        crate::grow(|| 1 + self.children().iter().map(Term::depth).max().unwrap_or(0))
    }

    /// True when every node carries a tag.
    pub fn fully_tagged(&self) -> bool {
        crate::grow(|| self.tag().is_some() && self.children().iter().all(Term::fully_tagged))
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        crate::grow(|| match (&self.0.kind, &other.0.kind) {
            (TermKind::Const(a), TermKind::Const(b)) => a == b,
            (TermKind::Var(a), TermKind::Var(b)) => a == b,
            (TermKind::Unit, TermKind::Unit) => true,
            (TermKind::App(f, xs), TermKind::App(g, ys)) => f == g && xs == ys,
            (TermKind::Pair(a1, b1), TermKind::Pair(a2, b2)) => a1 == a2 && b1 == b2,
            _ => false,
        })
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::grow(|| match &self.0.kind {
            TermKind::Const(c) => write!(f, "{c}"),
            TermKind::Var(x) => write!(f, "{x}"),
            TermKind::Unit => write!(f, "()"),
            TermKind::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            TermKind::Pair(a, b) => write!(f, "({a},{b})"),
        })
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag() {
            Some(tag) => write!(f, "{self}:{tag}"),
            None => write!(f, "{self}"),
        }
    }
}

/// Variable bindings produced by matching.
pub type Substitution = BTreeMap<Name, Term>;

/// First-order matching of `pattern` against a ground `subject`. Repeated
/// pattern variables must bind equal subterms.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut theta = Substitution::new();
    match_into(pattern, subject, &mut theta).then_some(theta)
}

fn match_into(pattern: &Term, subject: &Term, theta: &mut Substitution) -> bool {
    crate::grow(|| match (pattern.kind(), subject.kind()) {
        (TermKind::Var(x), _) => match theta.get(x) {
            Some(bound) => bound == subject,
            None => {
                theta.insert(x.clone(), subject.clone());
                true
            }
        },
        (TermKind::Const(a), TermKind::Const(b)) => a == b,
        (TermKind::Unit, TermKind::Unit) => true,
        (TermKind::App(f, ps), TermKind::App(g, ss)) => {
            f == g
                && ps.len() == ss.len()
                && ps.iter().zip(ss).all(|(p, s)| match_into(p, s, theta))
        }
        (TermKind::Pair(p1, p2), TermKind::Pair(s1, s2)) => {
            match_into(p1, s1, theta) && match_into(p2, s2, theta)
        }
        _ => false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("variable `{0}` is not bound")]
pub struct UnboundVariable(pub Name);

/// Applies `theta` to `t`. Non-variable nodes keep their own tags; variables
/// are replaced by their bindings (with the bindings' tags).
pub fn substitute(theta: &Substitution, t: &Term) -> Result<Term, UnboundVariable> {
    crate::grow(|| match t.kind() {
        TermKind::Var(x) => theta.get(x).cloned().ok_or_else(|| UnboundVariable(x.clone())),
        TermKind::Const(_) | TermKind::Unit => Ok(t.clone()),
        TermKind::App(_, _) | TermKind::Pair(_, _) => {
            let children = t
                .children()
                .iter()
                .map(|c| substitute(theta, c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(t.rebuild(children, t.tag().cloned()))
        }
    })
}
