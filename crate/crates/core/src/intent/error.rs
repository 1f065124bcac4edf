use thiserror::Error;

use super::ast::Position;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: unexpected character `{character}`")]
pub struct LexError {
    pub position: Position,
    pub character: char,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{position}: expected {expected}, found {found}{}", hint.as_deref().map(|h| format!(" (hint: {h})")).unwrap_or_default())]
    Syntax { position: Position, expected: String, found: String, hint: Option<String> },
    #[error("duplicate app label `{0}`")]
    DuplicateAppLabel(String),
    #[error("intent `{0}` has no steps")]
    EmptyStepSequence(String),
}

impl ParseError {
    /// Source position of the error, when it has one.
    pub fn position(&self) -> Option<Position> {
        match self {
            ParseError::Lex(e) => Some(e.position),
            ParseError::Syntax { position, .. } => Some(*position),
            _ => None,
        }
    }
}
