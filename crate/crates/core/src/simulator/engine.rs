use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::locator::{compile, matches};
use super::model::{AppModel, Effect};
use super::report::{RunReport, SimDuration, StepResult, StepStatus};
use crate::composer::{ActionPlan, DEFAULT_TEST_NAME};
use crate::mapping::{ActionDescriptor, ActionKind, ResolvedStep};

/// Cost of every non-wait action.
pub const ACTION_COST: SimDuration = SimDuration::from_millis(100);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("AppLabelMismatch: plan for `{plan}` cannot run on model `{model}`")]
    AppLabelMismatch { plan: String, model: String },
}

/// Why a step did not pass. The message of a step result starts with the
/// variant name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    NotSimulatable,
    AfterExit,
    EmptyNavigationStack,
    NoMatchingWidget,
    AmbiguousLocator,
    NotAField,
    NotToggleable,
    UnknownPage,
    InvalidDuration,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Run state after one step, for inspection by callers and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub page: String,
    pub stack_depth: usize,
    pub clock: SimDuration,
    pub exited: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub report: RunReport,
    pub trace: Vec<TraceEntry>,
}

struct State<'m> {
    model: &'m AppModel,
    page: String,
    stack: Vec<String>,
    clock: SimDuration,
    exited: bool,
    fields: BTreeMap<String, String>,
    toggles: BTreeMap<String, bool>,
}

type Outcome = Result<(SimDuration, String), (StepStatus, Reason, String)>;

fn fail(reason: Reason, detail: impl Into<String>) -> Outcome {
    Err((StepStatus::Failed, reason, detail.into()))
}

fn skip(detail: impl Into<String>) -> Outcome {
    Err((StepStatus::Skipped, Reason::NotSimulatable, detail.into()))
}

impl State<'_> {
    fn navigate(&mut self, target: &str) -> String {
        let from = std::mem::replace(&mut self.page, target.to_string());
        self.stack.push(from);
        format!("navigated to {target}")
    }

    fn reset(&mut self) {
        self.page = self.model.start_page.clone();
        self.stack.clear();
    }

    fn apply(&mut self, action: &ActionDescriptor) -> Outcome {
        if self.exited {
            if action.kind == ActionKind::LaunchApp && !self.model.exit_is_terminal {
                self.exited = false;
                self.reset();
                return Ok((ACTION_COST, "relaunched".into()));
            }
            return fail(Reason::AfterExit, "");
        }
        match action.kind {
            ActionKind::LaunchApp => {
                self.reset();
                Ok((ACTION_COST, format!("launched on {}", self.page)))
            }
            ActionKind::ExitApp => {
                self.exited = true;
                Ok((ACTION_COST, "exited".into()))
            }
            ActionKind::GoBack => match self.stack.pop() {
                Some(previous) => {
                    self.page = previous;
                    Ok((ACTION_COST, format!("back to {}", self.page)))
                }
                None => fail(Reason::EmptyNavigationStack, ""),
            },
            ActionKind::GoHome => {
                self.reset();
                Ok((ACTION_COST, format!("home at {}", self.page)))
            }
            ActionKind::PressEnter => Ok((ACTION_COST, String::new())),
            ActionKind::Wait => {
                let value = action.value.as_deref().unwrap_or_default();
                match value.trim().parse::<f64>().ok().and_then(SimDuration::from_secs_f64) {
                    Some(d) => Ok((d, format!("waited {d}s"))),
                    None => fail(Reason::InvalidDuration, value),
                }
            }
            ActionKind::Navigate => {
                if self.model.page(&action.locator).is_none() {
                    return fail(Reason::UnknownPage, action.locator.as_str());
                }
                Ok((ACTION_COST, self.navigate(&action.locator)))
            }
            ActionKind::Click | ActionKind::Toggle | ActionKind::SetText => self.interact(action),
        }
    }

    fn interact(&mut self, action: &ActionDescriptor) -> Outcome {
        let Some(predicates) = compile(action.strategy, &action.locator) else {
            return skip(format!("unsupported locator {}", action.locator));
        };
        let page = self.model.page(&self.page).expect("current page exists");
        let mut found = page.widgets.iter().filter(|w| matches(w, &predicates));
        let widget = match (found.next(), found.next()) {
            (Some(widget), None) => widget,
            (None, _) => return fail(Reason::NoMatchingWidget, format!("{} on page {}", action.locator, self.page)),
            (Some(_), Some(_)) => {
                return fail(Reason::AmbiguousLocator, format!("{} on page {}", action.locator, self.page))
            }
        };
        let message = match (action.kind, &widget.effect) {
            (ActionKind::SetText, Effect::SetField(field)) => {
                let value = action.value.clone().unwrap_or_default();
                let message = format!("{field} = {value}");
                self.fields.insert(field.clone(), value);
                message
            }
            (ActionKind::SetText, _) => return fail(Reason::NotAField, widget.id.as_str()),
            (_, Effect::Toggle(name)) => {
                let state = self.toggles.entry(name.clone()).or_default();
                *state = !*state;
                format!("{name} {}", if *state { "on" } else { "off" })
            }
            (ActionKind::Toggle, _) => return fail(Reason::NotToggleable, widget.id.as_str()),
            (_, Effect::Navigate(target)) => {
                let target = target.clone();
                self.navigate(&target)
            }
            (_, Effect::SetField(field)) => format!("focused {field}"),
            (_, Effect::None) => format!("clicked {}", widget.id),
        };
        Ok((ACTION_COST, message))
    }

    fn step(&mut self, step: &ResolvedStep) -> StepResult {
        let outcome = match &step.action {
            Some(action) => self.apply(action),
            None => skip("no simulated action"),
        };
        let (status, message, duration) = match outcome {
            Ok((duration, message)) => (StepStatus::Passed, message, duration),
            Err((status, reason, detail)) if detail.is_empty() => (status, reason.to_string(), SimDuration::ZERO),
            Err((status, reason, detail)) => (status, format!("{reason}: {detail}"), SimDuration::ZERO),
        };
        self.clock = self.clock + duration;
        StepResult { keyword: step.keyword.clone(), status, message, duration, page: self.page.clone() }
    }
}

/// Executes `plan` on `model`, recording the run state after every step.
///
/// Execution continues past failed steps. Nothing here reads the wall
/// clock, so the result is a pure function of the inputs.
pub fn run(plan: &ActionPlan, model: &AppModel) -> Result<Run, SimError> {
    if plan.app_label != model.app_label {
        return Err(SimError::AppLabelMismatch { plan: plan.app_label.clone(), model: model.app_label.clone() });
    }
    let mut state = State {
        model,
        page: model.start_page.clone(),
        stack: Vec::new(),
        clock: SimDuration::ZERO,
        exited: false,
        fields: BTreeMap::new(),
        toggles: BTreeMap::new(),
    };
    let mut results = Vec::new();
    let mut trace = Vec::new();
    for step in plan.commands() {
        results.push(state.step(step));
        trace.push(TraceEntry {
            page: state.page.clone(),
            stack_depth: state.stack.len(),
            clock: state.clock,
            exited: state.exited,
        });
    }
    Ok(Run { report: RunReport::new(DEFAULT_TEST_NAME, plan.app_label.clone(), results), trace })
}

pub fn execute(plan: &ActionPlan, model: &AppModel) -> Result<RunReport, SimError> {
    run(plan, model).map(|r| r.report)
}
