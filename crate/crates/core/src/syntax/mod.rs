//! The `.kb` text format.
//!
//! ```text
//! % comment
//! knowledge K1 {
//!     p1 :- q1, q2.
//!     p2(X) :- q3(X, a), !q1.
//! }
//! ```
//!
//! Grammar:
//!
//! ```text
//! kb        -> block*
//! block     -> 'knowledge' NAME '{' rule* '}'
//! rule      -> atom ':-' literal (',' literal)* '.'
//! literal   -> '!'? atom
//! atom      -> PRED ('(' term (',' term)* ')')?
//! term      -> CONST | VAR
//! ```
//!
//! Predicates and constants start with a lowercase letter or a digit,
//! variables with an uppercase letter. Identifiers are ASCII letters, digits
//! and `_`. Heads may not be negated and bodies may not be empty.

mod lexer;
mod parser;
mod printer;

use std::fmt;

pub use parser::{parse_knowledge_base, parse_literal, parse_with_warnings, Parsed, ParseWarning};
pub use printer::serialize_knowledge_base;

/// Byte offsets into the parsed text, `start <= end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Syntax,
    DuplicateKnowledge,
    NegatedHead,
    EmptyBody,
    BadIdentifier,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::DuplicateKnowledge => "duplicate-knowledge",
            ParseErrorKind::NegatedHead => "negated-head",
            ParseErrorKind::EmptyBody => "empty-body",
            ParseErrorKind::BadIdentifier => "bad-identifier",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A located diagnostic. `line` and `column` are 1-based; the column counts
/// characters, not bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub span: SourceSpan,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

/// 1-based (line, column) of a byte offset. Both LF and CRLF count as one line break.
pub(crate) fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let column = before[line_start..].chars().count() + 1;
    (line, column)
}
