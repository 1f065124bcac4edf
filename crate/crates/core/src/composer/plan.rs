use std::fmt;

use thiserror::Error;

use crate::intent::{Intent, Step};
use crate::mapping::{check_slots, lookup, substitute, MappingEntry, MappingTable, ResolvedStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

/// A problem found while checking an intent against a mapping table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    AppLabelMismatch { intent: String, table: String },
    UnmappedKeyword { keyword: String },
    MissingPlaceholderValue { keyword: String, name: String },
    UnusedArgument { keyword: String, key: String },
}

impl Finding {
    pub fn severity(&self) -> Severity {
        match self {
            Finding::UnusedArgument { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity() == Severity::Error
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::AppLabelMismatch { intent, table } => {
                write!(f, "AppLabelMismatch: intent `{intent}`, mapping table `{table}`")
            }
            Finding::UnmappedKeyword { keyword } => write!(f, "UnmappedKeyword: {keyword}"),
            Finding::MissingPlaceholderValue { keyword, name } => {
                write!(f, "MissingPlaceholderValue: {name} (step {keyword})")
            }
            Finding::UnusedArgument { keyword, key } => write!(f, "UnusedArgument: {key} (step {keyword})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("AppLabelMismatch: intent `{intent}` cannot use mapping table `{table}`")]
    AppLabelMismatch { intent: String, table: String },
    #[error("UnmappedKeyword: {} (app {app_label})", keywords.join(", "))]
    UnmappedKeywords { app_label: String, keywords: Vec<String> },
    #[error("MissingPlaceholderValue: {name} (step {keyword})")]
    MissingPlaceholderValue { keyword: String, name: String },
}

/// The resolved, substitution-complete form of one intent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionPlan {
    pub app_label: String,
    /// One entry per intent step, in order. Chained operations hang off
    /// their parent step.
    pub resolved_steps: Vec<ResolvedStep>,
    pub source_intent: Intent,
    pub warnings: Vec<Finding>,
}

impl ActionPlan {
    /// Every command in execution order, chained operations directly after
    /// their parent.
    pub fn commands(&self) -> impl Iterator<Item = &ResolvedStep> {
        self.resolved_steps.iter().flat_map(ResolvedStep::flatten)
    }
}

/// Lookup for a chained operation: `parent.op` first, then `op`.
fn lookup_op<'t>(table: &'t MappingTable, parent: &Step, op: &Step) -> Option<(&'t MappingEntry, String)> {
    let qualified = format!("{}.{}", parent.keyword, op.keyword);
    lookup(table, &qualified).or_else(|_| lookup(table, &op.keyword)).ok().map(|entry| (entry, qualified))
}

fn push_unique(findings: &mut Vec<Finding>, finding: Finding) {
    if !findings.contains(&finding) {
        findings.push(finding);
    }
}

fn check_step(findings: &mut Vec<Finding>, entry: &MappingEntry, step: &Step, keyword: &str) {
    let slots = check_slots(entry, step);
    for name in slots.missing {
        push_unique(findings, Finding::MissingPlaceholderValue { keyword: keyword.to_string(), name });
    }
    for key in slots.unused {
        push_unique(findings, Finding::UnusedArgument { keyword: keyword.to_string(), key });
    }
}

/// Every finding for `intent` against `table`, without building a plan.
/// Empty exactly when [`resolve`] succeeds with no warnings.
pub fn validate(intent: &Intent, table: &MappingTable) -> Vec<Finding> {
    if intent.app_label != table.app_label {
        return vec![Finding::AppLabelMismatch { intent: intent.app_label.clone(), table: table.app_label.clone() }];
    }
    let mut findings = Vec::new();
    for step in &intent.steps {
        match lookup(table, &step.keyword) {
            Ok(entry) => check_step(&mut findings, entry, step, &step.keyword),
            Err(_) => push_unique(&mut findings, Finding::UnmappedKeyword { keyword: step.keyword.clone() }),
        }
        for op in &step.chained_ops {
            match lookup_op(table, step, op) {
                Some((entry, qualified)) => check_step(&mut findings, entry, op, &qualified),
                None => push_unique(&mut findings, Finding::UnmappedKeyword { keyword: op.keyword.clone() }),
            }
        }
    }
    findings
}

/// Resolves each step of `intent` through `table` and fills its slots.
///
/// All unmapped keywords are reported together. Unused arguments end up in
/// [`ActionPlan::warnings`].
pub fn resolve(intent: &Intent, table: &MappingTable) -> Result<ActionPlan, ResolveError> {
    let findings = validate(intent, table);
    let mut unmapped = Vec::new();
    for finding in &findings {
        match finding {
            Finding::AppLabelMismatch { intent, table } => {
                return Err(ResolveError::AppLabelMismatch { intent: intent.clone(), table: table.clone() })
            }
            Finding::UnmappedKeyword { keyword } => unmapped.push(keyword.clone()),
            _ => {}
        }
    }
    if !unmapped.is_empty() {
        return Err(ResolveError::UnmappedKeywords { app_label: table.app_label.clone(), keywords: unmapped });
    }
    if let Some(Finding::MissingPlaceholderValue { keyword, name }) =
        findings.iter().find(|f| matches!(f, Finding::MissingPlaceholderValue { .. }))
    {
        return Err(ResolveError::MissingPlaceholderValue { keyword: keyword.clone(), name: name.clone() });
    }

    let mut resolved_steps = Vec::with_capacity(intent.steps.len());
    for step in &intent.steps {
        let entry = lookup(table, &step.keyword).expect("validated");
        let mut resolved = substitute(entry, step).expect("validated").resolved;
        for op in &step.chained_ops {
            let (entry, qualified) = lookup_op(table, step, op).expect("validated");
            let mut op_resolved = substitute(entry, op).expect("validated").resolved;
            op_resolved.keyword = qualified;
            resolved.chained.push(op_resolved);
        }
        resolved_steps.push(resolved);
    }
    Ok(ActionPlan {
        app_label: intent.app_label.clone(),
        resolved_steps,
        source_intent: intent.clone(),
        warnings: findings,
    })
}
