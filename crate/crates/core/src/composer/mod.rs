//! The composition engine: resolves an intent against a mapping table into
//! an [`ActionPlan`] and renders executable scripts from templates.

mod device;
mod plan;
mod template;

pub use crate::mapping::ResolvedStep;
pub use device::{DeviceConfig, DeviceConfigError, DEFAULT_SERVER_URL, DEFAULT_TEST_NAME};
pub use plan::{resolve, validate, ActionPlan, Finding, ResolveError, Severity};
pub use template::{
    render_script, step_command, synthesize_command, ScriptTemplate, TemplateError, DEFAULT_TEMPLATE, STEPS_SLOT,
};

/// File extension of scripts produced by the shipped template.
pub const SCRIPT_EXTENSION: &str = "py";
