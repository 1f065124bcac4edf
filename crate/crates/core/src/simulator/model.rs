use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::intent::is_valid_label;
use crate::text::parse_quoted;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("widget `{widget}` on page `{page}` navigates to unknown page `{target}`")]
    DanglingNavigation { page: String, widget: String, target: String },
    #[error("app model has no valid `start = <page>` line")]
    MissingStartPage,
    #[error("app model has no `app = <label>` line")]
    MissingAppHeader,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attr {
    Text,
    Id,
    Class,
}

impl Attr {
    pub fn as_str(self) -> &'static str {
        match self {
            Attr::Text => "text",
            Attr::Id => "id",
            Attr::Class => "class",
        }
    }
}

impl FromStr for Attr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Attr::Text),
            "id" => Ok(Attr::Id),
            "class" => Ok(Attr::Class),
            other => Err(format!("unknown widget attribute `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Effect {
    Navigate(String),
    SetField(String),
    Toggle(String),
    None,
}

impl fmt::Display for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Effect::Navigate(p) => write!(f, "navigate({p})"),
            Effect::SetField(n) => write!(f, "set_field({n})"),
            Effect::Toggle(n) => write!(f, "toggle({n})"),
            Effect::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Widget {
    pub id: String,
    pub match_attrs: Vec<(Attr, String)>,
    pub effect: Effect,
}

impl Widget {
    pub fn attr(&self, attr: Attr) -> Option<&str> {
        self.match_attrs.iter().find(|(a, _)| *a == attr).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub id: String,
    pub widgets: Vec<Widget>,
}

/// A declarative page graph standing in for a device.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppModel {
    pub app_label: String,
    pub pages: BTreeMap<String, Page>,
    pub start_page: String,
    /// When false, `launch` after `exit` restarts the app.
    pub exit_is_terminal: bool,
}

impl AppModel {
    pub fn page(&self, id: &str) -> Option<&Page> {
        self.pages.get(id)
    }

    /// Checks the start page and every navigation target.
    pub fn check(&self) -> Result<(), ModelError> {
        if !self.pages.contains_key(&self.start_page) {
            return Err(ModelError::MissingStartPage);
        }
        for page in self.pages.values() {
            for widget in &page.widgets {
                if let Effect::Navigate(target) = &widget.effect {
                    if !self.pages.contains_key(target) {
                        return Err(ModelError::DanglingNavigation {
                            page: page.id.clone(),
                            widget: widget.id.clone(),
                            target: target.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains(['(', ')', '"', ':', '#'])
}

fn parse_effect(text: &str) -> Result<Effect, String> {
    let text = text.split('#').next().unwrap_or_default().trim();
    if text == "none" {
        return Ok(Effect::None);
    }
    let (kind, rest) = text.split_once('(').ok_or_else(|| format!("unknown effect `{text}`"))?;
    let arg = rest.strip_suffix(')').ok_or("expected `)` after the effect argument")?.trim();
    if !is_name(arg) {
        return Err(format!("invalid effect argument `{arg}`"));
    }
    match kind.trim() {
        "navigate" => Ok(Effect::Navigate(arg.to_string())),
        "set_field" => Ok(Effect::SetField(arg.to_string())),
        "toggle" => Ok(Effect::Toggle(arg.to_string())),
        other => Err(format!("unknown effect `{other}`")),
    }
}

/// `widget <id> key="value" ... -> <effect>`, with the `widget` keyword
/// already removed.
fn parse_widget(text: &str) -> Result<Widget, String> {
    let text = text.trim_start();
    let id_end = text.find(char::is_whitespace).unwrap_or(text.len());
    let id = &text[..id_end];
    if !is_name(id) {
        return Err(format!("invalid widget id `{id}`"));
    }
    let mut rest = text[id_end..].trim_start();
    let mut match_attrs: Vec<(Attr, String)> = Vec::new();
    while !rest.starts_with("->") {
        if rest.is_empty() {
            return Err("expected `-> <effect>`".into());
        }
        let (key, after) = rest.split_once('=').ok_or("expected `attr=\"value\"`")?;
        let attr: Attr = key.trim().parse()?;
        if match_attrs.iter().any(|(a, _)| *a == attr) {
            return Err(format!("attribute `{}` given twice", attr.as_str()));
        }
        let (value, after) = parse_quoted(after.trim_start())?;
        match_attrs.push((attr, value));
        rest = after.trim_start();
    }
    if match_attrs.is_empty() {
        return Err(format!("widget `{id}` needs at least one of text=, id=, class="));
    }
    let effect = parse_effect(&rest[2..])?;
    Ok(Widget { id: id.to_string(), match_attrs, effect })
}

/// Parses a `.appmodel` file.
///
/// ```text
/// app = flashlight
/// start = home
/// page home:
///   widget settings_btn text="Settings" -> navigate(settings)
/// page settings:
///   widget charge text="Smart Charge" class="android.widget.Switch" -> toggle(smart_charge)
/// ```
pub fn parse_app_model(source: &str) -> Result<AppModel, ModelError> {
    let mut app_label = None;
    let mut start_page: Option<String> = None;
    let mut exit_is_terminal = true;
    let mut pages: BTreeMap<String, Page> = BTreeMap::new();
    let mut current: Option<String> = None;

    for (index, raw) in source.lines().enumerate() {
        let line = index + 1;
        let syntax = |reason: String| ModelError::Syntax { line, reason };
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("widget ") {
            let page_id = current.as_ref().ok_or_else(|| syntax("widget outside of a page".into()))?;
            let widget = parse_widget(rest).map_err(syntax)?;
            let page = pages.get_mut(page_id).expect("current page exists");
            if page.widgets.iter().any(|w| w.id == widget.id) {
                return Err(syntax(format!("duplicate widget `{}` on page `{page_id}`", widget.id)));
            }
            page.widgets.push(widget);
        } else if let Some(rest) = text.strip_prefix("page ") {
            let id = rest.trim().strip_suffix(':').ok_or_else(|| syntax("expected `page <id>:`".into()))?.trim();
            if !is_name(id) {
                return Err(syntax(format!("invalid page id `{id}`")));
            }
            if pages.contains_key(id) {
                return Err(syntax(format!("duplicate page `{id}`")));
            }
            pages.insert(id.to_string(), Page { id: id.to_string(), widgets: Vec::new() });
            current = Some(id.to_string());
        } else if let Some((key, value)) = text.split_once('=') {
            let value = value.split('#').next().unwrap_or_default().trim();
            match key.trim() {
                "app" if app_label.is_none() && is_valid_label(value) => app_label = Some(value.to_string()),
                "start" if start_page.is_none() && is_name(value) => start_page = Some(value.to_string()),
                "exit_terminal" => {
                    exit_is_terminal =
                        value.parse().map_err(|_| syntax("exit_terminal must be true or false".into()))?
                }
                other => return Err(syntax(format!("unexpected or invalid `{other}` setting"))),
            }
        } else {
            return Err(syntax(format!("unrecognized line `{text}`")));
        }
    }

    let start_page = start_page.ok_or(ModelError::MissingStartPage)?;
    let app_label = app_label.ok_or(ModelError::MissingAppHeader)?;
    let model = AppModel { app_label, pages, start_page, exit_is_terminal };
    model.check()?;
    Ok(model)
}
