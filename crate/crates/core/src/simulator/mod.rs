//! Deterministic execution of action plans against a page-graph model of
//! an app, producing unittest-shaped run reports.
//!
//! Every action costs [`ACTION_COST`] of simulated time; `wait` advances the
//! clock by its own duration. Failed and skipped steps take no time.

mod engine;
mod locator;
mod model;
mod report;

pub use engine::{execute, run, Reason, Run, SimError, TraceEntry, ACTION_COST};
pub use locator::{compile as compile_locator, matches as locator_matches, Predicates};
pub use model::{parse_app_model, AppModel, Attr, Effect, ModelError, Page, Widget};
pub use report::{render_report, ReportFormat, RunReport, SimDuration, StepResult, StepStatus, Verdict, SEPARATOR};
