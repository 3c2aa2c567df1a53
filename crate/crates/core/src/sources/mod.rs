//! Built-in sequences and term files.

mod builtin;
mod files;

use crate::arith::Rational;

pub use builtin::{builtin_terms, BUILTINS};
pub use files::{emit_bfile, emit_terms_json, emit_terms_lines, parse_bfile, parse_terms_file};

/// Consecutive terms `s(offset), s(offset + 1), ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermList {
    pub offset: usize,
    pub terms: Vec<Rational>,
}
