//! Recursive-descent parser for intent files.
//!
//! ```text
//! file   := intent+
//! intent := label ':' step ('->' step)*
//! step   := keyword ('(' value (',' value)* ')')? ('.' '{' pair (',' pair)* '}')? ('.' op)*
//! pair   := key ':' value
//! ```
//!
//! A keyword swallows `.segment` suffixes unless the dot is followed by `{`
//! or the segment is followed by `(`. So `u.s.politics` is one keyword while
//! `login.authentication(a,b)` is `login` with a chained operation.

use std::collections::HashSet;

use super::ast::{is_valid_label, Arguments, Intent, IntentFile, Position, Span, Step};
use super::error::ParseError;
use super::lexer::{tokenize, Token, TokenKind};
use crate::text::is_inert;

const INERT_VALUE: &str = "an argument value without `${`, a leading `{` or a trailing `$`";

const LEGACY_BRACE_HINT: &str =
    "the `name{...}` form is not supported; write `label: step -> step` and pass arguments as `step.{key:value}`";

pub fn parse_intent_file(source: &str) -> Result<IntentFile, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser { tokens, index: 0 };
    parser.file()
}

struct Parser {
    tokens: Vec<Token>,
    index: usize,
}

impl Parser {
    fn peek(&self) -> &TokenKind {
        self.peek_nth(0)
    }

    fn peek_nth(&self, n: usize) -> &TokenKind {
        let last = self.tokens.len() - 1;
        &self.tokens[(self.index + n).min(last)].kind
    }

    fn current(&self) -> &Token {
        &self.tokens[self.index.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let tok = self.current().clone();
        if self.index < self.tokens.len() - 1 {
            self.index += 1;
        }
        tok
    }

    fn last_end(&self) -> Position {
        if self.index == 0 {
            Position::default()
        } else {
            self.tokens[self.index - 1].span.end
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == TokenKind::Newline {
            self.bump();
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        self.error_with_hint(expected, None)
    }

    fn error_with_hint(&self, expected: &str, hint: Option<&str>) -> ParseError {
        let tok = self.current();
        ParseError::Syntax {
            position: tok.span.start,
            expected: expected.to_string(),
            found: tok.kind.to_string(),
            hint: hint.map(str::to_string),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token, ParseError> {
        if *self.peek() == kind {
            Ok(self.bump())
        } else {
            Err(self.error(expected))
        }
    }

    fn file(&mut self) -> Result<IntentFile, ParseError> {
        let mut intents: Vec<Intent> = Vec::new();
        let mut labels = HashSet::new();
        self.skip_newlines();
        if *self.peek() == TokenKind::Eof {
            return Err(self.error("an intent (`label: step -> step`)"));
        }
        while *self.peek() != TokenKind::Eof {
            let intent = self.intent()?;
            if !labels.insert(intent.app_label.clone()) {
                return Err(ParseError::DuplicateAppLabel(intent.app_label));
            }
            intents.push(intent);
            match self.peek() {
                TokenKind::Newline | TokenKind::Eof => self.skip_newlines(),
                _ => return Err(self.error("`->` or end of line")),
            }
        }
        Ok(IntentFile { intents })
    }

    fn intent(&mut self) -> Result<Intent, ParseError> {
        let start = self.current().span.start;
        let label = match self.peek() {
            TokenKind::Ident(label) if is_valid_label(label) => label.clone(),
            TokenKind::Ident(_) => return Err(self.error("an app label starting with a letter")),
            _ => return Err(self.error("an app label")),
        };
        self.bump();
        match self.peek() {
            TokenKind::Colon => {
                self.bump();
            }
            TokenKind::LBrace => return Err(self.error_with_hint("`:` after the app label", Some(LEGACY_BRACE_HINT))),
            _ => return Err(self.error("`:` after the app label")),
        }
        if matches!(self.peek(), TokenKind::Newline | TokenKind::Eof) {
            return Err(ParseError::EmptyStepSequence(label));
        }
        let mut steps = vec![self.step(true)?];
        while *self.peek() == TokenKind::Arrow {
            self.bump();
            self.skip_newlines();
            if *self.peek() == TokenKind::Eof {
                return Err(self.error("a step after `->`"));
            }
            steps.push(self.step(true)?);
        }
        Ok(Intent { app_label: label, steps, span: Span::new(start, self.last_end()) })
    }

    /// Parses a step. Chained operations are only collected for top-level
    /// steps; an operation's own `.x` suffixes belong to its parent.
    fn step(&mut self, top_level: bool) -> Result<Step, ParseError> {
        let start = self.current().span.start;
        let expected = if top_level { "a step keyword" } else { "an operation name" };
        let mut keyword = match self.peek() {
            TokenKind::Ident(k) => k.clone(),
            _ => return Err(self.error(expected)),
        };
        self.bump();
        while *self.peek() == TokenKind::Dot {
            let TokenKind::Ident(segment) = self.peek_nth(1) else { break };
            if *self.peek_nth(2) == TokenKind::LParen {
                break;
            }
            keyword.push('.');
            keyword.push_str(segment);
            self.bump();
            self.bump();
        }

        let mut args = Arguments::None;
        if *self.peek() == TokenKind::LParen {
            args = Arguments::Positional(self.positional_args()?);
        }
        if *self.peek() == TokenKind::Dot && *self.peek_nth(1) == TokenKind::LBrace {
            if matches!(args, Arguments::Positional(_)) {
                self.bump();
                return Err(self.error("`->` or an operation; a step cannot combine positional and named arguments"));
            }
            self.bump();
            args = Arguments::Named(self.named_args()?);
        }
        if *self.peek() == TokenKind::LBrace {
            return Err(self.error_with_hint("`.{` before arguments", Some(LEGACY_BRACE_HINT)));
        }

        let mut chained_ops = Vec::new();
        if top_level {
            while *self.peek() == TokenKind::Dot {
                self.bump();
                chained_ops.push(self.step(false)?);
            }
        }
        Ok(Step { keyword, args, chained_ops, span: Span::new(start, self.last_end()) })
    }

    fn value(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            TokenKind::Value(v) if !is_inert(v) => Err(self.error(INERT_VALUE)),
            TokenKind::Value(v) => {
                let v = v.clone();
                self.bump();
                Ok(v)
            }
            _ => Err(self.error("an argument value")),
        }
    }

    fn positional_args(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(TokenKind::LParen, "`(`")?;
        let mut values = vec![self.value()?];
        loop {
            match self.peek() {
                TokenKind::Comma => {
                    self.bump();
                    values.push(self.value()?);
                }
                TokenKind::RParen => {
                    self.bump();
                    return Ok(values);
                }
                _ => return Err(self.error("`,` or `)`")),
            }
        }
    }

    fn named_args(&mut self) -> Result<Vec<(String, String)>, ParseError> {
        self.expect(TokenKind::LBrace, "`{`")?;
        let mut pairs: Vec<(String, String)> = Vec::new();
        loop {
            let key = match self.peek() {
                TokenKind::Ident(k) => k.clone(),
                _ => return Err(self.error("an argument key")),
            };
            if pairs.iter().any(|(k, _)| *k == key) {
                return Err(self.error("a unique argument key"));
            }
            self.bump();
            self.expect(TokenKind::Colon, "`:` after the argument key")?;
            let value = self.value()?;
            pairs.push((key, value));
            match self.peek() {
                TokenKind::Comma => {
                    self.bump();
                }
                TokenKind::RBrace => {
                    self.bump();
                    return Ok(pairs);
                }
                _ => return Err(self.error("`,` or `}`")),
            }
        }
    }
}
