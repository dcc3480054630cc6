//! A typed strategic term-rewriting engine.
//!
//! Programs declare sorts, symbols and variables, define combinators over
//! strategies and name a main strategy. [`frontend`] parses them,
//! [`typecheck`] assigns strategy types, [`elaborate`] removes sugar and
//! records the types needed for dispatch, and [`eval`] runs a strategy on a
//! ground term.

// Type errors carry the offending types; they are cold and rarely many.
#![allow(clippy::result_large_err)]

pub mod context;
pub mod elaborate;
pub mod error;
pub mod eval;
pub mod frontend;
pub mod prelude;
pub mod printer;
pub mod relations;
pub mod syntax;
pub mod term;
pub mod typecheck;
pub mod types;

/// Identifiers for sorts, symbols, variables and combinators.
pub type Name = std::sync::Arc<str>;

/// Runs `f`, first moving to a fresh stack segment if little is left.
/// Terms and strategies can nest arbitrarily deep.
pub(crate) fn grow<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, f)
}

pub use context::Context;
pub use error::{Diagnostic, Pos, RuleError, TypeError};
pub use eval::{apply_strategy, run_program, EngineError, EvalConfig, Evaluation, Reduct, TraceEvent};
pub use frontend::{parse_program, parse_term, FrontendError};
pub use syntax::{Definition, Definitions, Program, Strategy, StrategyKind};
pub use term::Term;
pub use types::{CombinatorType, StrategyType, TermType};
