use std::collections::HashSet;

use super::lexer::{tokenize, Token, TokenKind};
use super::{line_column, ParseError, ParseErrorKind, SourceSpan};
use crate::model::{is_ident_char, Atom, Knowledge, KnowledgeBase, Literal, Term};

/// A non-fatal diagnostic, e.g. a knowledge block without rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Successful parse result together with its warnings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub knowledge_base: KnowledgeBase,
    pub warnings: Vec<ParseWarning>,
}

/// Parses a whole knowledge base. Either every block parses cleanly or all
/// errors found (recovering at rule boundaries) are returned.
pub fn parse_knowledge_base(text: &str) -> Result<KnowledgeBase, Vec<ParseError>> {
    parse_with_warnings(text).map(|p| p.knowledge_base)
}

pub fn parse_with_warnings(text: &str) -> Result<Parsed, Vec<ParseError>> {
    let mut parser = Parser::new(text);
    let knowledges = parser.knowledge_base();
    if !parser.errors.is_empty() {
        let mut errors = parser.errors;
        errors.sort_by_key(|e| (e.span.start, e.span.end));
        // Unwinding through several levels at end of input reports the same spot repeatedly.
        errors.dedup_by_key(|e| e.span.start);
        return Err(errors);
    }
    let knowledge_base =
        KnowledgeBase::new(knowledges).expect("duplicate names are reported as parse errors");
    Ok(Parsed { knowledge_base, warnings: parser.warnings })
}

/// Parses a single literal such as `!p(X, a)`.
pub fn parse_literal(text: &str) -> Result<Literal, Vec<ParseError>> {
    let mut parser = Parser::new(text);
    if let Ok(literal) = parser.literal() {
        if *parser.peek() != TokenKind::Eof {
            parser.unexpected("end of input");
        }
        if let (Some(lit), true) = (literal, parser.errors.is_empty()) {
            return Ok(lit);
        }
    }
    Err(parser.errors)
}

/// Marker for "an error was recorded; unwind to the next recovery point".
struct Abort;

struct Parser<'t> {
    text: &'t str,
    tokens: Vec<Token>,
    pos: usize,
    errors: Vec<ParseError>,
    warnings: Vec<ParseWarning>,
}

impl<'t> Parser<'t> {
    fn new(text: &'t str) -> Self {
        Parser { text, tokens: tokenize(text), pos: 0, errors: Vec::new(), warnings: Vec::new() }
    }

    fn current(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek(&self) -> &TokenKind {
        &self.current().kind
    }

    fn peek_at(&self, ahead: usize) -> &TokenKind {
        let i = (self.pos + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error_at(&mut self, span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) {
        let (line, column) = line_column(self.text, span.start);
        self.errors.push(ParseError { kind, line, column, span, message: message.into() });
    }

    fn unexpected(&mut self, expected: &str) -> Abort {
        let tok = self.current().clone();
        self.error_at(
            tok.span,
            ParseErrorKind::Syntax,
            format!("expected {expected}, found {}", tok.kind.describe()),
        );
        Abort
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token, Abort> {
        if *self.peek() == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn at_block_start(&self) -> bool {
        matches!(self.peek(), TokenKind::Word(w) if w == "knowledge")
            && matches!(self.peek_at(1), TokenKind::Word(_))
            && *self.peek_at(2) == TokenKind::LBrace
    }

    fn knowledge_base(&mut self) -> Vec<Knowledge> {
        let mut knowledges = Vec::new();
        let mut names = HashSet::new();
        while *self.peek() != TokenKind::Eof {
            if !matches!(self.peek(), TokenKind::Word(w) if w == "knowledge") {
                self.unexpected("`knowledge`");
                self.skip_to_block();
                continue;
            }
            if let Ok(k) = self.block(&mut names) {
                knowledges.push(k);
            }
        }
        knowledges
    }

    /// Skips tokens until the next `knowledge` keyword (or end of input).
    fn skip_to_block(&mut self) {
        self.bump();
        while *self.peek() != TokenKind::Eof
            && !matches!(self.peek(), TokenKind::Word(w) if w == "knowledge")
        {
            self.bump();
        }
    }

    fn block(&mut self, names: &mut HashSet<String>) -> Result<Knowledge, Abort> {
        let keyword = self.bump();
        let name_tok = self.current().clone();
        let name = match &name_tok.kind {
            TokenKind::Word(w) => w.clone(),
            _ => {
                let abort = self.unexpected("a knowledge name");
                self.skip_to_block();
                return Err(abort);
            }
        };
        self.bump();
        let mut knowledge = match Knowledge::new(name.clone()) {
            Ok(k) => Some(k),
            Err(_) => {
                self.bad_identifier(&name_tok, "knowledge name");
                None
            }
        };
        if !names.insert(name.clone()) {
            self.error_at(
                name_tok.span,
                ParseErrorKind::DuplicateKnowledge,
                format!("knowledge `{name}` is already defined"),
            );
            knowledge = None;
        }
        if self.expect(TokenKind::LBrace, "`{`").is_err() {
            self.skip_to_block();
            return Err(Abort);
        }

        loop {
            match self.peek() {
                TokenKind::RBrace => {
                    self.bump();
                    break;
                }
                TokenKind::Eof => {
                    self.unexpected("`}` to close the knowledge block");
                    return Err(Abort);
                }
                _ if self.at_block_start() => {
                    self.unexpected("`}` before the next knowledge block");
                    return Err(Abort);
                }
                _ => match self.rule() {
                    Ok(Some((body, head))) => {
                        if let Some(k) = knowledge.as_mut() {
                            k.push_rule(body, head).expect("rule() never yields an empty body");
                        }
                    }
                    Ok(None) => {}
                    Err(Abort) => self.recover_rule(),
                },
            }
        }

        let knowledge = knowledge.ok_or(Abort)?;
        if knowledge.is_empty() {
            let (line, column) = line_column(self.text, keyword.span.start);
            self.warnings.push(ParseWarning {
                line,
                column,
                message: format!("knowledge `{}` has no properties", knowledge.name()),
            });
        }
        Ok(knowledge)
    }

    /// Skips to just after the next `.`, or to a `}`/block start, whichever comes first.
    fn recover_rule(&mut self) {
        loop {
            match self.peek() {
                TokenKind::Dot => {
                    self.bump();
                    return;
                }
                TokenKind::RBrace | TokenKind::Eof => return,
                _ if self.at_block_start() => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// Parses one rule. `Ok(None)` means the rule was fully consumed but an
    /// error (negated head, bad identifier, ...) was already recorded.
    fn rule(&mut self) -> Result<Option<(Vec<Literal>, Atom)>, Abort> {
        let mut valid = true;
        if *self.peek() == TokenKind::Bang {
            let bang = self.bump();
            self.error_at(
                bang.span,
                ParseErrorKind::NegatedHead,
                "rule heads must be positive atoms",
            );
            valid = false;
        }
        let head_start = self.current().span;
        let head = self.atom()?;

        match self.peek() {
            TokenKind::Turnstile => {
                self.bump();
            }
            TokenKind::Dot => {
                self.bump();
                self.error_at(
                    head_start,
                    ParseErrorKind::EmptyBody,
                    "facts are not allowed; a rule needs at least one body literal",
                );
                return Ok(None);
            }
            _ => return Err(self.unexpected("`:-`")),
        }

        if *self.peek() == TokenKind::Dot {
            let dot = self.bump();
            self.error_at(dot.span, ParseErrorKind::EmptyBody, "rule body is empty");
            return Ok(None);
        }

        let mut body = Vec::new();
        loop {
            body.push(self.literal()?);
            match self.peek() {
                TokenKind::Comma => {
                    self.bump();
                }
                TokenKind::Dot => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected("`,` or `.`")),
            }
        }

        Ok(match head {
            Some(head) if valid && body.iter().all(Option::is_some) => {
                Some((body.into_iter().flatten().collect(), head))
            }
            _ => None,
        })
    }

    /// `Ok(None)` when the literal was syntactically fine but held a bad identifier.
    fn literal(&mut self) -> Result<Option<Literal>, Abort> {
        let negative = if *self.peek() == TokenKind::Bang {
            self.bump();
            true
        } else {
            false
        };
        Ok(self.atom()?.map(|atom| {
            if negative {
                Literal::negative(atom)
            } else {
                Literal::positive(atom)
            }
        }))
    }

    fn atom(&mut self) -> Result<Option<Atom>, Abort> {
        let pred_tok = self.current().clone();
        let TokenKind::Word(pred) = &pred_tok.kind else {
            return Err(self.unexpected("a predicate"));
        };
        let pred = pred.clone();
        self.bump();

        let mut args = Vec::new();
        let mut args_ok = true;
        if *self.peek() == TokenKind::LParen {
            self.bump();
            loop {
                let tok = self.current().clone();
                let TokenKind::Word(name) = &tok.kind else {
                    return Err(self.unexpected("a term"));
                };
                match Term::parse(name.clone()) {
                    Ok(term) => args.push(term),
                    Err(_) => {
                        self.bad_identifier(&tok, "term");
                        args_ok = false;
                    }
                }
                self.bump();
                match self.peek() {
                    TokenKind::Comma => {
                        self.bump();
                    }
                    TokenKind::RParen => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.unexpected("`,` or `)`")),
                }
            }
        }

        match Atom::new(pred, args) {
            Ok(atom) if args_ok => Ok(Some(atom)),
            Ok(_) => Ok(None),
            Err(_) => {
                self.bad_identifier(&pred_tok, "predicate");
                Ok(None)
            }
        }
    }

    fn bad_identifier(&mut self, tok: &Token, role: &str) {
        let TokenKind::Word(word) = &tok.kind else { return };
        let message = if let Some(c) = word.chars().find(|c| !is_ident_char(*c)) {
            format!("illegal character `{c}` in {role} `{word}`")
        } else if word.starts_with('_') {
            format!("{role} `{word}` may not start with `_`")
        } else {
            match role {
                "predicate" => format!("predicate `{word}` must start with a lowercase letter or digit"),
                _ => format!("invalid {role} `{word}`"),
            }
        };
        self.error_at(tok.span, ParseErrorKind::BadIdentifier, message);
    }
}
