//! The intent specification language: lexing, parsing and canonical
//! printing.
//!
//! An intent names an app and chains the pages or actions to visit:
//!
//! ```text
//! cnn: topnews -> u.s.politics -> money -> share -> watchnow -> back -> exit
//! Amazon: launch -> credentials.{username:someone@example.com} -> exit
//! ```

mod ast;
mod error;
mod lexer;
mod parser;
mod printer;

pub use ast::{is_valid_label, Arguments, Intent, IntentFile, Position, Span, Step};
pub use error::{LexError, ParseError};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse_intent_file;
pub use printer::{pretty_print, print_chain};
