use std::collections::BTreeMap;

use super::action::ActionDescriptor;
use super::{MappingEntry, MappingError, MappingTable};
use crate::intent::is_valid_label;
use crate::text::{expect_line_end, parse_quoted, scan_slots};

enum Field {
    Script,
    Sim,
}

/// Parses a `.map` file.
///
/// ```text
/// app = Amazon
/// signin.script = "self.driver.find_element_by_id(\"signin\").click()"
/// signin.sim = click(by=id, locator="signin")
/// checkout = "..."        # same as checkout.script
/// ```
pub fn parse_mapping_file(source: &str) -> Result<MappingTable, MappingError> {
    let mut app_label: Option<String> = None;
    let mut entries: BTreeMap<String, MappingEntry> = BTreeMap::new();

    for (index, raw) in source.lines().enumerate() {
        let line_no = index + 1;
        let syntax = |reason: String| MappingError::Syntax { line: line_no, reason };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(syntax("expected `key = value`".into()));
        };
        let key = key.trim();
        let value = value.trim();

        if key == "app" {
            if app_label.is_some() {
                return Err(syntax("duplicate `app` header".into()));
            }
            let label = value.split('#').next().unwrap_or_default().trim();
            if !is_valid_label(label) {
                return Err(syntax(format!("invalid app label `{label}`")));
            }
            app_label = Some(label.to_string());
            continue;
        }
        if app_label.is_none() {
            return Err(syntax("mapping entry before the `app = <label>` header".into()));
        }

        let (keyword, field) = if let Some(k) = key.strip_suffix(".script") {
            (k, Field::Script)
        } else if let Some(k) = key.strip_suffix(".sim") {
            (k, Field::Sim)
        } else {
            (key, Field::Script)
        };
        if !is_valid_keyword(keyword) {
            return Err(syntax(format!("invalid keyword `{keyword}`")));
        }

        let entry = entries.entry(keyword.to_string()).or_insert_with(|| MappingEntry {
            keyword: keyword.to_string(),
            raw_script: None,
            sim_action: None,
        });
        match field {
            Field::Script => {
                let (script, rest) = parse_quoted(value).map_err(syntax)?;
                expect_line_end(rest).map_err(syntax)?;
                scan_slots(&script).map_err(|bad| syntax(format!("malformed placeholder `{bad}`")))?;
                if entry.raw_script.replace(script).is_some() {
                    return Err(MappingError::DuplicateKeyword(keyword.to_string()));
                }
            }
            Field::Sim => {
                let (action, rest) = parse_action(value).map_err(syntax)?;
                expect_line_end(rest).map_err(syntax)?;
                if entry.sim_action.replace(action).is_some() {
                    return Err(MappingError::DuplicateKeyword(keyword.to_string()));
                }
            }
        }
    }

    let app_label = app_label.ok_or(MappingError::MissingAppHeader)?;
    Ok(MappingTable { app_label, entries })
}

/// Keywords are dot-separated runs of identifier characters, matching what
/// the intent parser can produce.
fn is_valid_keyword(keyword: &str) -> bool {
    !keyword.is_empty()
        && keyword
            .split('.')
            .all(|seg| !seg.is_empty() && seg.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-'))
}

/// Parses `kind(by=<strategy>, locator="<text>", value=<slot or literal>)`.
pub(crate) fn parse_action(input: &str) -> Result<(ActionDescriptor, &str), String> {
    let open = input.find('(').ok_or("expected `kind(...)`")?;
    let kind = input[..open].trim().parse()?;
    let mut action = ActionDescriptor::new(kind);
    let mut rest = input[open + 1..].trim_start();
    let mut seen: Vec<&str> = Vec::new();

    if let Some(after) = rest.strip_prefix(')') {
        action.check()?;
        return Ok((action, after));
    }
    loop {
        let eq = rest.find('=').ok_or("expected `name=value` inside the action")?;
        let name = rest[..eq].trim();
        if seen.contains(&name) {
            return Err(format!("`{name}` given twice"));
        }
        rest = rest[eq + 1..].trim_start();
        let value = if rest.starts_with('"') {
            let (text, after) = parse_quoted(rest)?;
            rest = after;
            text
        } else {
            let end = rest.find([',', ')']).ok_or("unterminated action")?;
            let text = rest[..end].trim().to_string();
            rest = &rest[end..];
            text
        };
        match name {
            "by" => action.strategy = value.parse()?,
            "locator" => action.locator = value,
            "value" => action.value = Some(value),
            other => return Err(format!("unknown action field `{other}`")),
        }
        seen.push(name);
        rest = rest.trim_start();
        if let Some(after) = rest.strip_prefix(',') {
            rest = after.trim_start();
        } else if let Some(after) = rest.strip_prefix(')') {
            rest = after;
            break;
        } else {
            return Err("expected `,` or `)` in action".into());
        }
    }
    for text in [Some(&action.locator), action.value.as_ref()].into_iter().flatten() {
        scan_slots(text).map_err(|bad| format!("malformed placeholder `{bad}`"))?;
    }
    action.check()?;
    Ok((action, rest))
}
