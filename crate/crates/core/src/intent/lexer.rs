use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use super::ast::{is_ident_char, Position, Span};
use super::error::LexError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    /// `->` or `→`
    Arrow,
    Colon,
    Dot,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    /// Raw argument text, trimmed.
    Value(String),
    Newline,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Value(s) => write!(f, "value `{s}`"),
            TokenKind::Newline => f.write_str("end of line"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Context {
    Top,
    Brace,
    Paren,
}

struct Lexer<'a> {
    chars: Peekable<Chars<'a>>,
    pos: Position,
    context: Context,
    /// Set after `:` inside braces and after `(`/`,` inside parens.
    value_mode: bool,
    tokens: Vec<Token>,
}

/// Splits intent source text into tokens.
///
/// The lexer is context sensitive: inside `{...}` the text after a `:` and
/// inside `(...)` every comma-separated item is taken as raw value text, so
/// values such as `mobiletestaa@gmail.com` survive intact.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut lexer = Lexer {
        chars: source.chars().peekable(),
        pos: Position { offset: 0, line: 1, column: 1 },
        context: Context::Top,
        value_mode: false,
        tokens: Vec::new(),
    };
    lexer.run()?;
    Ok(lexer.tokens)
}

impl<'a> Lexer<'a> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek_second(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.pos.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn push(&mut self, kind: TokenKind, start: Position) {
        self.tokens.push(Token { kind, span: Span::new(start, self.pos) });
    }

    fn single(&mut self, kind: TokenKind) {
        let start = self.pos;
        self.bump();
        self.push(kind, start);
    }

    fn run(&mut self) -> Result<(), LexError> {
        loop {
            if self.value_mode {
                self.value_mode = false;
                self.lex_value();
            }
            let start = self.pos;
            let Some(c) = self.peek() else {
                self.push(TokenKind::Eof, start);
                return Ok(());
            };
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '\n' => self.single(TokenKind::Newline),
                '#' => {
                    while matches!(self.peek(), Some(c) if c != '\n') {
                        self.bump();
                    }
                }
                '-' if self.peek_second() == Some('>') => {
                    self.bump();
                    self.bump();
                    self.push(TokenKind::Arrow, start);
                }
                '→' => self.single(TokenKind::Arrow),
                ':' => {
                    self.single(TokenKind::Colon);
                    self.value_mode = self.context == Context::Brace;
                }
                '.' => self.single(TokenKind::Dot),
                '{' => {
                    self.single(TokenKind::LBrace);
                    self.context = Context::Brace;
                }
                '}' => {
                    self.single(TokenKind::RBrace);
                    self.context = Context::Top;
                }
                '(' => {
                    self.single(TokenKind::LParen);
                    self.context = Context::Paren;
                    self.value_mode = true;
                }
                ')' => {
                    self.single(TokenKind::RParen);
                    self.context = Context::Top;
                }
                ',' => {
                    self.single(TokenKind::Comma);
                    self.value_mode = self.context == Context::Paren;
                }
                c if is_ident_char(c) => self.lex_ident(),
                other => return Err(LexError { position: start, character: other }),
            }
        }
    }

    fn lex_ident(&mut self) {
        let start = self.pos;
        let mut text = String::new();
        while let Some(c) = self.peek() {
            if !is_ident_char(c) || (c == '-' && self.peek_second() == Some('>')) {
                break;
            }
            text.push(c);
            self.bump();
        }
        self.push(TokenKind::Ident(text), start);
    }

    fn lex_value(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
        let close = if self.context == Context::Paren { ')' } else { '}' };
        let start = self.pos;
        let mut text = String::new();
        let mut end = self.pos;
        while let Some(c) = self.peek() {
            if c == ',' || c == close || c == '\n' {
                break;
            }
            text.push(c);
            self.bump();
            if !c.is_whitespace() {
                end = self.pos;
            }
        }
        let trimmed = text.trim_end();
        if !trimmed.is_empty() {
            self.tokens.push(Token { kind: TokenKind::Value(trimmed.to_string()), span: Span::new(start, end) });
        }
    }
}
