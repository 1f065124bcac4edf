//! Syntax tree for intent files.
//!
//! Equality on [`Intent`] and [`Step`] is structural and ignores source
//! spans, so a re-parsed pretty-printed file compares equal to the original.

use std::fmt;

/// A location in the source text. `line` and `column` are 1-based; `offset`
/// is a byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Position {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: Position,
    pub end: Position,
}

impl Span {
    pub fn new(start: Position, end: Position) -> Self {
        Span { start, end }
    }
}

/// Arguments attached to a step. A step carries named arguments
/// (`.{k:v}`), positional arguments (`(a,b)`), or neither.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Arguments {
    #[default]
    None,
    Named(Vec<(String, String)>),
    Positional(Vec<String>),
}

impl Arguments {
    pub fn is_empty(&self) -> bool {
        match self {
            Arguments::None => true,
            Arguments::Named(pairs) => pairs.is_empty(),
            Arguments::Positional(values) => values.is_empty(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Step {
    pub keyword: String,
    pub args: Arguments,
    /// Operations applied on this page through the dot operator.
    pub chained_ops: Vec<Step>,
    pub span: Span,
}

impl Step {
    pub fn new(keyword: impl Into<String>) -> Self {
        Step { keyword: keyword.into(), args: Arguments::None, chained_ops: Vec::new(), span: Span::default() }
    }

    pub fn with_named<K, V>(mut self, pairs: impl IntoIterator<Item = (K, V)>) -> Self
    where
        K: Into<String>,
        V: Into<String>,
    {
        self.args = Arguments::Named(pairs.into_iter().map(|(k, v)| (k.into(), v.into())).collect());
        self
    }

    pub fn with_positional<V: Into<String>>(mut self, values: impl IntoIterator<Item = V>) -> Self {
        self.args = Arguments::Positional(values.into_iter().map(Into::into).collect());
        self
    }

    pub fn with_op(mut self, op: Step) -> Self {
        self.chained_ops.push(op);
        self
    }

    pub fn named_args(&self) -> &[(String, String)] {
        match &self.args {
            Arguments::Named(pairs) => pairs,
            _ => &[],
        }
    }

    pub fn positional_args(&self) -> &[String] {
        match &self.args {
            Arguments::Positional(values) => values,
            _ => &[],
        }
    }

    pub fn named_arg(&self, key: &str) -> Option<&str> {
        self.named_args().iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl PartialEq for Step {
    fn eq(&self, other: &Self) -> bool {
        self.keyword == other.keyword && self.args == other.args && self.chained_ops == other.chained_ops
    }
}

impl Eq for Step {}

#[derive(Debug, Clone)]
pub struct Intent {
    pub app_label: String,
    pub steps: Vec<Step>,
    pub span: Span,
}

impl Intent {
    pub fn new(app_label: impl Into<String>, steps: Vec<Step>) -> Self {
        Intent { app_label: app_label.into(), steps, span: Span::default() }
    }
}

impl PartialEq for Intent {
    fn eq(&self, other: &Self) -> bool {
        self.app_label == other.app_label && self.steps == other.steps
    }
}

impl Eq for Intent {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntentFile {
    pub intents: Vec<Intent>,
}

impl IntentFile {
    pub fn get(&self, app_label: &str) -> Option<&Intent> {
        self.intents.iter().find(|i| i.app_label == app_label)
    }
}

/// Identifier rule for app labels: ASCII letters, digits, `-` and `_`,
/// starting with a letter.
pub fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(is_ident_char)
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}
