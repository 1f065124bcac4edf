use std::fmt;
use std::str::FromStr;

use crate::text::quote;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Click,
    SetText,
    Navigate,
    Toggle,
    LaunchApp,
    ExitApp,
    GoBack,
    GoHome,
    PressEnter,
    Wait,
}

impl ActionKind {
    pub const ALL: [ActionKind; 10] = [
        ActionKind::Click,
        ActionKind::SetText,
        ActionKind::Navigate,
        ActionKind::Toggle,
        ActionKind::LaunchApp,
        ActionKind::ExitApp,
        ActionKind::GoBack,
        ActionKind::GoHome,
        ActionKind::PressEnter,
        ActionKind::Wait,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ActionKind::Click => "click",
            ActionKind::SetText => "set_text",
            ActionKind::Navigate => "navigate",
            ActionKind::Toggle => "toggle",
            ActionKind::LaunchApp => "launch_app",
            ActionKind::ExitApp => "exit_app",
            ActionKind::GoBack => "go_back",
            ActionKind::GoHome => "go_home",
            ActionKind::PressEnter => "press_enter",
            ActionKind::Wait => "wait",
        }
    }

    /// Kinds that act on a located widget.
    pub fn needs_locator(self) -> bool {
        matches!(self, ActionKind::Click | ActionKind::SetText | ActionKind::Toggle)
    }

    pub fn needs_value(self) -> bool {
        matches!(self, ActionKind::SetText | ActionKind::Wait)
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ActionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ActionKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| format!("unknown action kind `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LocatorStrategy {
    Xpath,
    Id,
    Text,
    #[default]
    None,
}

impl LocatorStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            LocatorStrategy::Xpath => "xpath",
            LocatorStrategy::Id => "id",
            LocatorStrategy::Text => "text",
            LocatorStrategy::None => "none",
        }
    }
}

impl fmt::Display for LocatorStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LocatorStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xpath" => Ok(LocatorStrategy::Xpath),
            "id" => Ok(LocatorStrategy::Id),
            "text" => Ok(LocatorStrategy::Text),
            "none" => Ok(LocatorStrategy::None),
            other => Err(format!("unknown locator strategy `{other}`")),
        }
    }
}

/// Structured form of a mapped command, executable by the simulator.
///
/// `locator` and `value` may contain `${name}` slots until substituted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDescriptor {
    pub kind: ActionKind,
    pub strategy: LocatorStrategy,
    pub locator: String,
    pub value: Option<String>,
}

impl ActionDescriptor {
    pub fn new(kind: ActionKind) -> Self {
        ActionDescriptor { kind, strategy: LocatorStrategy::None, locator: String::new(), value: None }
    }

    pub fn located(kind: ActionKind, strategy: LocatorStrategy, locator: impl Into<String>) -> Self {
        ActionDescriptor { kind, strategy, locator: locator.into(), value: None }
    }

    pub fn with_value(mut self, value: impl Into<String>) -> Self {
        self.value = Some(value.into());
        self
    }

    /// Checks the per-kind field requirements.
    pub fn check(&self) -> Result<(), String> {
        if self.kind.needs_locator() && self.strategy == LocatorStrategy::None {
            return Err(format!("`{}` requires a locator strategy other than none", self.kind));
        }
        if self.kind.needs_locator() && self.locator.is_empty() {
            return Err(format!("`{}` requires a locator", self.kind));
        }
        if self.kind.needs_value() && self.value.is_none() {
            return Err(format!("`{}` requires a value", self.kind));
        }
        if self.kind == ActionKind::Navigate && self.locator.is_empty() {
            return Err("`navigate` requires the target page as locator".into());
        }
        Ok(())
    }
}

/// Prints the `.sim` mapping syntax, e.g.
/// `click(by=xpath, locator="//*[@text='OK']")`.
impl fmt::Display for ActionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(by={}", self.kind, self.strategy)?;
        if !self.locator.is_empty() {
            write!(f, ", locator={}", quote(&self.locator))?;
        }
        if let Some(value) = &self.value {
            write!(f, ", value={}", quote(value))?;
        }
        f.write_str(")")
    }
}
