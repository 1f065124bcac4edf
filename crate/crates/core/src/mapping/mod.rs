//! Per-app mapping tables binding intent keywords to backend commands.
//!
//! Each entry carries a raw script snippet for code generation, a
//! structured [`ActionDescriptor`] for simulation, or both. Snippets and
//! descriptor fields may contain `${name}` slots that [`substitute`] fills
//! from a step's arguments.

mod action;
mod parse;
mod substitute;

use std::collections::BTreeMap;
use std::sync::LazyLock;

use thiserror::Error;

pub use action::{ActionDescriptor, ActionKind, LocatorStrategy};
pub use parse::parse_mapping_file;
pub use substitute::{check_slots, substitute, ResolvedStep, SlotCheck, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("keyword `{0}` is mapped more than once")]
    DuplicateKeyword(String),
    #[error("missing `app = <label>` header")]
    MissingAppHeader,
    #[error("UnmappedKeyword: {keyword} (app {app_label})")]
    UnmappedKeyword { keyword: String, app_label: String },
    #[error("MissingPlaceholderValue: {name} (step {keyword})")]
    MissingPlaceholderValue { keyword: String, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingEntry {
    pub keyword: String,
    pub raw_script: Option<String>,
    pub sim_action: Option<ActionDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTable {
    pub app_label: String,
    pub entries: BTreeMap<String, MappingEntry>,
}

impl MappingTable {
    pub fn new(app_label: impl Into<String>) -> Self {
        MappingTable { app_label: app_label.into(), entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, entry: MappingEntry) -> Option<MappingEntry> {
        self.entries.insert(entry.keyword.clone(), entry)
    }
}

static BUILTINS: LazyLock<BTreeMap<&'static str, MappingEntry>> = LazyLock::new(|| {
    let builtin = |keyword: &'static str, action: ActionDescriptor| {
        let entry = MappingEntry { keyword: keyword.to_string(), raw_script: None, sim_action: Some(action) };
        (keyword, entry)
    };
    BTreeMap::from([
        builtin("launch", ActionDescriptor::new(ActionKind::LaunchApp)),
        builtin("exit", ActionDescriptor::new(ActionKind::ExitApp)),
        builtin("back", ActionDescriptor::new(ActionKind::GoBack)),
        builtin("home", ActionDescriptor::new(ActionKind::GoHome)),
        builtin("enter", ActionDescriptor::new(ActionKind::PressEnter)),
        // sleep.{sec:N} overrides the one-second default
        builtin("sleep", ActionDescriptor::new(ActionKind::Wait).with_value("${sec:-1}")),
    ])
});

/// Keywords that resolve without a mapping entry.
pub const BUILTIN_KEYWORDS: [&str; 6] = ["launch", "exit", "back", "home", "enter", "sleep"];

/// The built-in entry for `keyword`, if it is one.
pub fn builtin(keyword: &str) -> Option<&'static MappingEntry> {
    BUILTINS.get(keyword)
}

/// Exact, case-sensitive lookup. Table entries shadow built-ins.
pub fn lookup<'a>(table: &'a MappingTable, keyword: &str) -> Result<&'a MappingEntry, MappingError> {
    table.entries.get(keyword).or_else(|| builtin(keyword)).ok_or_else(|| MappingError::UnmappedKeyword {
        keyword: keyword.to_string(),
        app_label: table.app_label.clone(),
    })
}
