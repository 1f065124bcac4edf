use super::{ActionDescriptor, MappingEntry, MappingError};
use crate::intent::Step;
use crate::text::{scan_slots, Segment};

/// A mapping entry with the step's arguments filled in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedStep {
    /// The keyword as written. Chained operations use `parent.op`.
    pub keyword: String,
    pub raw_snippet: Option<String>,
    pub action: Option<ActionDescriptor>,
    pub origin: Step,
    /// Resolved chained operations, in source order.
    pub chained: Vec<ResolvedStep>,
}

impl ResolvedStep {
    /// This step followed by its chained operations.
    pub fn flatten(&self) -> impl Iterator<Item = &ResolvedStep> {
        std::iter::once(self).chain(self.chained.iter())
    }
}

/// Outcome of a successful substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub resolved: ResolvedStep,
    /// Arguments the entry never referenced. Positional arguments are named
    /// `arg1`, `arg2`, ...
    pub unused: Vec<String>,
}

/// Slot usage of an entry against a step, without building the output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SlotCheck {
    pub missing: Vec<String>,
    pub unused: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ArgRef {
    Named(usize),
    Positional(usize),
}

/// Finds the argument that fills slot `name`.
///
/// A named argument with the same key wins. `${value}` otherwise takes the
/// first positional argument, or the first named one when there are no
/// positional arguments. `${argN}` takes positional argument N (1-based).
fn bind(step: &Step, name: &str) -> Option<ArgRef> {
    let named = step.named_args();
    let positional = step.positional_args();
    if let Some(i) = named.iter().position(|(k, _)| k == name) {
        return Some(ArgRef::Named(i));
    }
    if name == "value" {
        if !positional.is_empty() {
            return Some(ArgRef::Positional(0));
        }
        if !named.is_empty() {
            return Some(ArgRef::Named(0));
        }
        return None;
    }
    let n: usize = name.strip_prefix("arg")?.parse().ok()?;
    (n >= 1 && n <= positional.len()).then(|| ArgRef::Positional(n - 1))
}

fn arg_text(step: &Step, arg: ArgRef) -> &str {
    match arg {
        ArgRef::Named(i) => &step.named_args()[i].1,
        ArgRef::Positional(i) => &step.positional_args()[i],
    }
}

struct Filler<'s> {
    step: &'s Step,
    used: Vec<ArgRef>,
    missing: Vec<String>,
}

impl Filler<'_> {
    fn fill(&mut self, template: &str) -> String {
        // Entries are validated on parse; a malformed slot here is left as-is
        // and reported missing.
        let Ok(segments) = scan_slots(template) else {
            self.missing.push(template.to_string());
            return template.to_string();
        };
        let mut out = String::with_capacity(template.len());
        for segment in segments {
            match segment {
                Segment::Literal(text) => out.push_str(text),
                Segment::Slot { name, default } => match (bind(self.step, name), default) {
                    (Some(arg), _) => {
                        if !self.used.contains(&arg) {
                            self.used.push(arg);
                        }
                        out.push_str(arg_text(self.step, arg));
                    }
                    (None, Some(default)) => out.push_str(default),
                    (None, None) => {
                        if !self.missing.iter().any(|m| m == name) {
                            self.missing.push(name.to_string());
                        }
                    }
                },
            }
        }
        out
    }

    fn unused(&self) -> Vec<String> {
        let named = self
            .step
            .named_args()
            .iter()
            .enumerate()
            .filter_map(|(i, (k, _))| (!self.used.contains(&ArgRef::Named(i))).then(|| k.clone()));
        let positional = (0..self.step.positional_args().len())
            .filter(|i| !self.used.contains(&ArgRef::Positional(*i)))
            .map(|i| format!("arg{}", i + 1));
        named.chain(positional).collect()
    }
}

fn run<'s>(entry: &MappingEntry, step: &'s Step) -> (ResolvedStep, Filler<'s>) {
    let mut filler = Filler { step, used: Vec::new(), missing: Vec::new() };
    let raw_snippet = entry.raw_script.as_deref().map(|s| filler.fill(s));
    let action = entry.sim_action.as_ref().map(|a| ActionDescriptor {
        kind: a.kind,
        strategy: a.strategy,
        locator: filler.fill(&a.locator),
        value: a.value.as_deref().map(|v| filler.fill(v)),
    });
    let resolved = ResolvedStep {
        keyword: step.keyword.clone(),
        raw_snippet,
        action,
        origin: Step { chained_ops: Vec::new(), ..step.clone() },
        chained: Vec::new(),
    };
    (resolved, filler)
}

/// Fills every `${slot}` of `entry` from `step`'s arguments.
///
/// Chained operations of `step` are not touched; the composer resolves them
/// separately.
pub fn substitute(entry: &MappingEntry, step: &Step) -> Result<Substitution, MappingError> {
    let (resolved, filler) = run(entry, step);
    if let Some(name) = filler.missing.first() {
        return Err(MappingError::MissingPlaceholderValue { keyword: step.keyword.clone(), name: name.clone() });
    }
    let unused = filler.unused();
    Ok(Substitution { resolved, unused })
}

/// Reports every missing slot and unused argument of `entry` against `step`.
pub fn check_slots(entry: &MappingEntry, step: &Step) -> SlotCheck {
    let (_, filler) = run(entry, step);
    SlotCheck { unused: filler.unused(), missing: filler.missing }
}
