//! The standard library of traversal combinators.

use crate::frontend::{parse_program_with, FrontendError};
use crate::syntax::Program;

pub const PRELUDE: &str = include_str!("prelude.strat");

/// Parses `text` with the standard prelude in scope.
pub fn parse_with_prelude(text: &str) -> Result<Program, FrontendError> {
    parse_program_with(Some(PRELUDE), text)
}
