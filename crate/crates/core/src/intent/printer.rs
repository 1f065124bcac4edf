use std::fmt;

use super::ast::{Arguments, Intent, IntentFile, Step};

/// Canonical text for an intent file: one intent per line, ` -> ` between
/// steps, arguments without interior spaces. No trailing newline.
pub fn pretty_print(file: &IntentFile) -> String {
    file.intents.iter().map(Intent::to_string).collect::<Vec<_>>().join("\n")
}

/// The step chain of an intent without its label.
pub fn print_chain(intent: &Intent) -> String {
    intent.steps.iter().map(Step::to_string).collect::<Vec<_>>().join(" -> ")
}

impl fmt::Display for Intent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.app_label, print_chain(self))
    }
}

impl fmt::Display for Arguments {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arguments::None => Ok(()),
            Arguments::Positional(values) => write!(f, "({})", values.join(",")),
            Arguments::Named(pairs) => {
                f.write_str(".{")?;
                for (i, (k, v)) in pairs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{k}:{v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.keyword, self.args)?;
        for op in &self.chained_ops {
            write!(f, ".{op}")?;
        }
        Ok(())
    }
}
