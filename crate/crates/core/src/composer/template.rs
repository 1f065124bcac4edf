use thiserror::Error;

use super::device::DeviceConfig;
use super::plan::ActionPlan;
use crate::mapping::{ActionDescriptor, ActionKind, LocatorStrategy, ResolvedStep};
use crate::text::{quote, scan_slots, Segment};

/// The shipped Appium/Python unittest template.
pub const DEFAULT_TEMPLATE: &str = include_str!("../../templates/appium_python.tmpl");

pub const STEPS_SLOT: &str = "steps";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("TemplateSlotUnknown: `{0}`")]
    SlotUnknown(String),
    #[error("TemplateMissingStepsSlot: template has no `${{steps}}` slot")]
    MissingStepsSlot,
    #[error("template has more than one `${{steps}}` slot")]
    DuplicateStepsSlot,
}

/// A validated script template: only device slots and exactly one
/// `${steps}` slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptTemplate {
    body: String,
}

impl ScriptTemplate {
    pub fn parse(body: impl Into<String>) -> Result<Self, TemplateError> {
        let body = body.into();
        let segments = scan_slots(&body).map_err(TemplateError::SlotUnknown)?;
        let mut steps = 0;
        for segment in &segments {
            if let Segment::Slot { name, default } = segment {
                if default.is_some() || !(*name == STEPS_SLOT || DeviceConfig::KEYS.contains(name)) {
                    let text = match default {
                        Some(d) => format!("${{{name}:-{d}}}"),
                        None => format!("${{{name}}}"),
                    };
                    return Err(TemplateError::SlotUnknown(text));
                }
                if *name == STEPS_SLOT {
                    steps += 1;
                }
            }
        }
        match steps {
            0 => Err(TemplateError::MissingStepsSlot),
            1 => Ok(ScriptTemplate { body }),
            _ => Err(TemplateError::DuplicateStepsSlot),
        }
    }

    pub fn default_appium() -> Self {
        ScriptTemplate::parse(DEFAULT_TEMPLATE).expect("shipped template is valid")
    }

    pub fn body(&self) -> &str {
        &self.body
    }
}

/// The backend command for one resolved step: its raw snippet, or a
/// command synthesized from its action descriptor.
pub fn step_command(step: &ResolvedStep) -> String {
    match (&step.raw_snippet, &step.action) {
        (Some(raw), _) => raw.clone(),
        (None, Some(action)) => synthesize_command(action),
        (None, None) => "pass".to_string(),
    }
}

fn find_element(action: &ActionDescriptor) -> String {
    match action.strategy {
        LocatorStrategy::Id => format!("self.driver.find_element_by_id({})", quote(&action.locator)),
        LocatorStrategy::Text => {
            let xpath = format!("//*[@text='{}']", action.locator);
            format!("self.driver.find_element_by_xpath({})", quote(&xpath))
        }
        LocatorStrategy::Xpath | LocatorStrategy::None => {
            format!("self.driver.find_element_by_xpath({})", quote(&action.locator))
        }
    }
}

/// Canonical Appium Python idiom for each action kind.
///
/// | kind          | command                                   |
/// |---------------|-------------------------------------------|
/// | `click`       | `<find>.click()`                          |
/// | `toggle`      | `<find>.click()`                          |
/// | `set_text`    | `<find>.send_keys("<value>")`             |
/// | `navigate`    | `self.driver.get("<locator>")`            |
/// | `launch_app`  | `self.driver.launch_app()`                |
/// | `exit_app`    | `self.driver.close_app()`                 |
/// | `go_back`     | `self.driver.back()`                      |
/// | `go_home`     | `self.driver.press_keycode(3)`            |
/// | `press_enter` | `self.driver.press_keycode(66)`           |
/// | `wait`        | `time.sleep(<seconds>)`                   |
///
/// `<find>` is `find_element_by_id` for the id strategy and
/// `find_element_by_xpath` otherwise; the text strategy becomes
/// `//*[@text='<locator>']`.
pub fn synthesize_command(action: &ActionDescriptor) -> String {
    let value = action.value.as_deref().unwrap_or_default();
    match action.kind {
        ActionKind::Click | ActionKind::Toggle => format!("{}.click()", find_element(action)),
        ActionKind::SetText => format!("{}.send_keys({})", find_element(action), quote(value)),
        ActionKind::Navigate => format!("self.driver.get({})", quote(&action.locator)),
        ActionKind::LaunchApp => "self.driver.launch_app()".into(),
        ActionKind::ExitApp => "self.driver.close_app()".into(),
        ActionKind::GoBack => "self.driver.back()".into(),
        ActionKind::GoHome => "self.driver.press_keycode(3)".into(),
        ActionKind::PressEnter => "self.driver.press_keycode(66)".into(),
        ActionKind::Wait if value.parse::<f64>().is_ok_and(f64::is_finite) => format!("time.sleep({value})"),
        ActionKind::Wait => format!("time.sleep(float({}))", quote(value)),
    }
}

/// Fills the device slots and expands `${steps}` to one command per line,
/// each indented like the slot itself.
pub fn render_script(plan: &ActionPlan, template: &ScriptTemplate, device: &DeviceConfig) -> String {
    let body = template.body();
    let segments = scan_slots(body).expect("validated template");
    let mut out = String::with_capacity(body.len() + 64 * plan.resolved_steps.len());
    for segment in segments {
        match segment {
            Segment::Literal(text) => out.push_str(text),
            Segment::Slot { name: STEPS_SLOT, .. } => {
                let line_start = out.rfind('\n').map_or(0, |i| i + 1);
                let indent: String = out[line_start..].chars().take_while(|c| *c == ' ' || *c == '\t').collect();
                let separator = format!("\n{indent}");
                let commands: Vec<String> = plan.commands().map(step_command).collect();
                out.push_str(&commands.join(&separator));
            }
            Segment::Slot { name, .. } => out.push_str(device.get(name).expect("validated template")),
        }
    }
    out
}
