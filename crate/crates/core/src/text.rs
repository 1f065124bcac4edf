//! Small text helpers shared by the line-based file formats.

/// A piece of text containing `${name}` or `${name:-default}` slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Segment<'a> {
    Literal(&'a str),
    Slot { name: &'a str, default: Option<&'a str> },
}

pub(crate) fn is_slot_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// True when `text` can sit next to anything without forming a `${`: it
/// has no `${`, does not start with `{` and does not end with `$`.
pub(crate) fn is_inert(text: &str) -> bool {
    !text.contains("${") && !text.starts_with('{') && !text.ends_with('$')
}

/// Splits `text` into literal runs and slots. A slot may not directly follow
/// a literal `$`, and defaults must be [inert](is_inert), so filling slots
/// with inert values never produces a new `${`. The error carries the
/// malformed slot text.
pub(crate) fn scan_slots(text: &str) -> Result<Vec<Segment<'_>>, String> {
    let mut segments = Vec::new();
    let mut rest = text;
    while let Some(at) = rest.find("${") {
        if rest[..at].ends_with('$') {
            return Err(rest[at - 1..].to_string());
        }
        if at > 0 {
            segments.push(Segment::Literal(&rest[..at]));
        }
        let after = &rest[at + 2..];
        let Some(close) = after.find('}') else {
            return Err(rest[at..].to_string());
        };
        let body = &after[..close];
        let (name, default) = match body.split_once(":-") {
            Some((name, default)) => (name, Some(default)),
            None => (body, None),
        };
        if !is_slot_name(name) || default.is_some_and(|d| !is_inert(d)) {
            return Err(format!("${{{body}}}"));
        }
        segments.push(Segment::Slot { name, default });
        rest = &after[close + 1..];
    }
    if !rest.is_empty() {
        segments.push(Segment::Literal(rest));
    }
    Ok(segments)
}

/// Parses a double-quoted string at the start of `input`. Only `\"` and
/// `\\` are escapes. Returns the unescaped text and the remainder after the
/// closing quote.
pub(crate) fn parse_quoted(input: &str) -> Result<(String, &str), String> {
    let mut chars = input.char_indices();
    match chars.next() {
        Some((_, '"')) => {}
        _ => return Err("expected a quoted string".into()),
    }
    let mut out = String::new();
    while let Some((i, c)) = chars.next() {
        match c {
            '"' => return Ok((out, &input[i + 1..])),
            '\\' => match chars.next() {
                Some((_, '"')) => out.push('"'),
                Some((_, '\\')) => out.push('\\'),
                Some((_, other)) => return Err(format!("unsupported escape `\\{other}`")),
                None => break,
            },
            c => out.push(c),
        }
    }
    Err("unterminated quoted string".into())
}

/// Inverse of [`parse_quoted`].
pub(crate) fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Accepts `rest` when it holds only whitespace and an optional `#` comment.
pub(crate) fn expect_line_end(rest: &str) -> Result<(), String> {
    let rest = rest.trim_start();
    if rest.is_empty() || rest.starts_with('#') {
        Ok(())
    } else {
        Err(format!("unexpected trailing text `{rest}`"))
    }
}
