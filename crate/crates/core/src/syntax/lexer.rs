use super::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    /// Any maximal run of non-delimiter characters. Validity of the
    /// characters is checked by the parser so one bad word gives one error.
    Word(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Dot,
    Turnstile,
    Bang,
    /// A lone `:` not followed by `-`.
    Colon,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Word(w) => format!("`{w}`"),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Turnstile => "`:-`".into(),
            TokenKind::Bang => "`!`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '{' | '}' | '(' | ')' | ',' | '.' | '!' | ':' | '%')
}

/// Splits `text` into tokens. Always ends with a single `Eof` token whose
/// span covers the last significant character (or is empty for blank input).
pub(crate) fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut last_significant: Option<SourceSpan> = None;

    while let Some((start, c)) = chars.next() {
        let single = |kind| (kind, start + c.len_utf8());
        let (kind, end) = match c {
            c if c.is_whitespace() => continue,
            '%' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
                continue;
            }
            '{' => single(TokenKind::LBrace),
            '}' => single(TokenKind::RBrace),
            '(' => single(TokenKind::LParen),
            ')' => single(TokenKind::RParen),
            ',' => single(TokenKind::Comma),
            '.' => single(TokenKind::Dot),
            '!' => single(TokenKind::Bang),
            ':' => match chars.peek() {
                Some(&(i, '-')) => {
                    chars.next();
                    (TokenKind::Turnstile, i + 1)
                }
                _ => single(TokenKind::Colon),
            },
            _ => {
                let mut end = start + c.len_utf8();
                while let Some(&(i, c)) = chars.peek() {
                    if is_delimiter(c) {
                        break;
                    }
                    end = i + c.len_utf8();
                    chars.next();
                }
                (TokenKind::Word(text[start..end].to_string()), end)
            }
        };
        let span = SourceSpan::new(start, end);
        // Point end-of-input diagnostics at the final character of the last token.
        let last_char = text[start..end].char_indices().last().map_or(start, |(i, _)| start + i);
        last_significant = Some(SourceSpan::new(last_char, end));
        tokens.push(Token { kind, span });
    }

    let eof_span = last_significant.unwrap_or_else(|| SourceSpan::new(0, 0));
    tokens.push(Token { kind: TokenKind::Eof, span: eof_span });
    tokens
}
