//! Matching action locators against widget attributes.
//!
//! Only the restricted xpath form `//*[@attr='value' and @attr='value']`
//! over the `text`, `id` and `class` attributes is understood. Anything
//! else cannot be simulated.

use super::model::{Attr, Widget};
use crate::mapping::LocatorStrategy;

/// Conjunction of attribute equalities.
pub type Predicates = Vec<(Attr, String)>;

/// Compiles a locator into attribute predicates, or `None` when the form is
/// outside what the simulator understands.
pub fn compile(strategy: LocatorStrategy, locator: &str) -> Option<Predicates> {
    match strategy {
        LocatorStrategy::Id => Some(vec![(Attr::Id, locator.to_string())]),
        LocatorStrategy::Text => Some(vec![(Attr::Text, locator.to_string())]),
        LocatorStrategy::Xpath => parse_xpath(locator),
        LocatorStrategy::None => None,
    }
}

fn parse_xpath(locator: &str) -> Option<Predicates> {
    let xpath = locator.trim();
    let xpath = xpath.strip_prefix("xpath=").unwrap_or(xpath);
    let mut rest = xpath.strip_prefix("//*[")?.strip_suffix(']')?.trim();
    let mut predicates = Vec::new();
    loop {
        let after_at = rest.strip_prefix('@')?;
        let eq = after_at.find('=')?;
        let attr: Attr = after_at[..eq].trim().parse().ok()?;
        let quoted = after_at[eq + 1..].trim_start();
        let quote = quoted.chars().next().filter(|c| *c == '\'' || *c == '"')?;
        let close = quoted[1..].find(quote)? + 1;
        predicates.push((attr, quoted[1..close].to_string()));
        rest = quoted[close + 1..].trim_start();
        if rest.is_empty() {
            return Some(predicates);
        }
        rest = rest.strip_prefix("and")?;
        if !rest.starts_with(char::is_whitespace) {
            return None;
        }
        rest = rest.trim_start();
    }
}

pub fn matches(widget: &Widget, predicates: &Predicates) -> bool {
    predicates.iter().all(|(attr, value)| widget.match_attrs.iter().any(|(a, v)| a == attr && v == value))
}
