use std::collections::{BTreeMap, BTreeSet, VecDeque};

use appintent_core::composer::{ActionPlan, ResolvedStep};
use appintent_core::intent::{Intent, Step};
use appintent_core::mapping::{ActionDescriptor, ActionKind, LocatorStrategy};
use appintent_core::simulator::{run, AppModel, Attr, Effect, Page, StepStatus, Verdict, Widget, ACTION_COST};
use proptest::prelude::*;

pub fn page_id(i: usize) -> String {
    format!("p{i}")
}

pub fn widget(n_pages: usize) -> impl Strategy<Value = (usize, Option<usize>, Effect)> {
    let effect = prop_oneof![
        (0..n_pages).prop_map(|p| Effect::Navigate(page_id(p))),
        (0..3usize).prop_map(|k| Effect::Toggle(format!("t{k}"))),
        (0..3usize).prop_map(|k| Effect::SetField(format!("f{k}"))),
        Just(Effect::None),
    ];
    (0..4usize, proptest::option::of(0..2usize), effect)
}

pub fn model() -> impl Strategy<Value = AppModel> {
    (1..=10usize)
        .prop_flat_map(|n| {
            (Just(n), proptest::collection::vec(proptest::collection::vec(widget(n), 0..5), n), 0..n, any::<bool>())
        })
        .prop_map(|(_, pages, start, terminal)| {
            let pages: BTreeMap<String, Page> = pages
                .into_iter()
                .enumerate()
                .map(|(i, widgets)| {
                    let widgets = widgets
                        .into_iter()
                        .enumerate()
                        .map(|(j, (text, class, effect))| {
                            let mut match_attrs = vec![(Attr::Text, format!("w{text}"))];
                            if let Some(c) = class {
                                match_attrs.push((Attr::Class, format!("c{c}")));
                            }
                            Widget { id: format!("x{j}"), match_attrs, effect }
                        })
                        .collect();
                    (page_id(i), Page { id: page_id(i), widgets })
                })
                .collect();
            let model =
                AppModel { app_label: "sim".into(), pages, start_page: page_id(start), exit_is_terminal: terminal };
            model.check().unwrap();
            model
        })
}

pub fn action() -> impl Strategy<Value = Option<ActionDescriptor>> {
    let text = (0..4usize).prop_map(|k| format!("w{k}"));
    let locator = prop_oneof![
        text.clone().prop_map(|t| (LocatorStrategy::Text, t)),
        (0..4usize, 0..2usize)
            .prop_map(|(t, c)| (LocatorStrategy::Xpath, format!("//*[@text='w{t}' and @class='c{c}']"))),
        Just((LocatorStrategy::Xpath, "(//node)[2]".to_string())),
        Just((LocatorStrategy::Id, "x0".to_string())),
    ];
    let wait = proptest::sample::select(vec!["0", "0.25", "1", "2.5", "-1", "soon", "NaN"]);
    prop_oneof![
        1 => Just(None),
        1 => Just(Some(ActionDescriptor::new(ActionKind::LaunchApp))),
        1 => Just(Some(ActionDescriptor::new(ActionKind::ExitApp))),
        3 => Just(Some(ActionDescriptor::new(ActionKind::GoBack))),
        1 => Just(Some(ActionDescriptor::new(ActionKind::GoHome))),
        1 => Just(Some(ActionDescriptor::new(ActionKind::PressEnter))),
        1 => wait.prop_map(|v| Some(ActionDescriptor::new(ActionKind::Wait).with_value(v))),
        1 => (0..12usize).prop_map(|p| Some(ActionDescriptor::located(ActionKind::Navigate, LocatorStrategy::None, page_id(p)))),
        6 => (proptest::sample::select(vec![ActionKind::Click, ActionKind::Toggle, ActionKind::SetText]), locator)
            .prop_map(|(kind, (strategy, loc))| {
                let a = ActionDescriptor::located(kind, strategy, loc);
                Some(if kind == ActionKind::SetText { a.with_value("typed") } else { a })
            }),
    ]
}

pub fn plan() -> impl Strategy<Value = ActionPlan> {
    proptest::collection::vec(action(), 0..25).prop_map(|actions| {
        let steps: Vec<Step> = (0..actions.len()).map(|i| Step::new(format!("s{i}"))).collect();
        let resolved_steps = actions
            .into_iter()
            .zip(&steps)
            .map(|(action, step)| ResolvedStep {
                keyword: step.keyword.clone(),
                raw_snippet: action.is_none().then(|| "noop()".to_string()),
                action,
                origin: step.clone(),
                chained: Vec::new(),
            })
            .collect();
        ActionPlan {
            app_label: "sim".into(),
            resolved_steps,
            source_intent: Intent::new("sim", steps),
            warnings: Vec::new(),
        }
    })
}

/// Pages reachable from the start page by following navigation widgets.
pub fn reachable(model: &AppModel) -> BTreeSet<String> {
    let mut seen = BTreeSet::from([model.start_page.clone()]);
    let mut queue = VecDeque::from([model.start_page.clone()]);
    while let Some(page) = queue.pop_front() {
        for w in &model.pages[&page].widgets {
            if let Effect::Navigate(t) = &w.effect {
                if seen.insert(t.clone()) {
                    queue.push_back(t.clone());
                }
            }
        }
    }
    seen
}

pub fn predicates(strategy: LocatorStrategy, loc: &str) -> Option<Vec<(Attr, String)>> {
    match strategy {
        LocatorStrategy::Text => Some(vec![(Attr::Text, loc.to_string())]),
        LocatorStrategy::Id => Some(vec![(Attr::Id, loc.to_string())]),
        LocatorStrategy::Xpath => {
            let inner = loc.strip_prefix("//*[@text='")?;
            let (text, rest) = inner.split_once("' and @class='")?;
            let class = rest.strip_suffix("']")?;
            Some(vec![(Attr::Text, text.to_string()), (Attr::Class, class.to_string())])
        }
        LocatorStrategy::None => None,
    }
}

#[derive(Debug, PartialEq)]
pub struct Expect {
    status: StepStatus,
    millis: u64,
    page: String,
    depth: usize,
    exited: bool,
}

/// Straight-line reference interpreter used as the oracle.
pub fn reference(plan: &ActionPlan, model: &AppModel) -> Vec<Expect> {
    let cost = ACTION_COST.as_millis();
    let mut page = model.start_page.clone();
    let mut stack: Vec<String> = Vec::new();
    let mut exited = false;
    let mut out = Vec::new();
    for step in &plan.resolved_steps {
        let (status, millis) = match &step.action {
            None => (StepStatus::Skipped, 0),
            Some(a) if exited => {
                if a.kind == ActionKind::LaunchApp && !model.exit_is_terminal {
                    exited = false;
                    page = model.start_page.clone();
                    stack.clear();
                    (StepStatus::Passed, cost)
                } else {
                    (StepStatus::Failed, 0)
                }
            }
            Some(a) => match a.kind {
                ActionKind::LaunchApp | ActionKind::GoHome => {
                    page = model.start_page.clone();
                    stack.clear();
                    (StepStatus::Passed, cost)
                }
                ActionKind::ExitApp => {
                    exited = true;
                    (StepStatus::Passed, cost)
                }
                ActionKind::GoBack => match stack.pop() {
                    Some(p) => {
                        page = p;
                        (StepStatus::Passed, cost)
                    }
                    None => (StepStatus::Failed, 0),
                },
                ActionKind::PressEnter => (StepStatus::Passed, cost),
                ActionKind::Wait => match a.value.as_deref().unwrap().parse::<f64>() {
                    Ok(s) if s.is_finite() && s >= 0.0 => (StepStatus::Passed, (s * 1000.0).round() as u64),
                    _ => (StepStatus::Failed, 0),
                },
                ActionKind::Navigate if model.pages.contains_key(&a.locator) => {
                    stack.push(std::mem::replace(&mut page, a.locator.clone()));
                    (StepStatus::Passed, cost)
                }
                ActionKind::Navigate => (StepStatus::Failed, 0),
                kind => match predicates(a.strategy, &a.locator) {
                    None => (StepStatus::Skipped, 0),
                    Some(preds) => {
                        let hits: Vec<&Widget> = model.pages[&page]
                            .widgets
                            .iter()
                            .filter(|w| preds.iter().all(|p| w.match_attrs.contains(p)))
                            .collect();
                        match (hits.as_slice(), kind) {
                            ([w], ActionKind::SetText) => match w.effect {
                                Effect::SetField(_) => (StepStatus::Passed, cost),
                                _ => (StepStatus::Failed, 0),
                            },
                            ([w], ActionKind::Toggle) if !matches!(w.effect, Effect::Toggle(_)) => {
                                (StepStatus::Failed, 0)
                            }
                            ([w], _) => {
                                if let Effect::Navigate(t) = &w.effect {
                                    stack.push(std::mem::replace(&mut page, t.clone()));
                                }
                                (StepStatus::Passed, cost)
                            }
                            _ => (StepStatus::Failed, 0),
                        }
                    }
                },
            },
        };
        out.push(Expect { status, millis, page: page.clone(), depth: stack.len(), exited });
    }
    out
}

pub fn matches_the_reference_walk(model: AppModel, plan: ActionPlan) -> Result<(), TestCaseError> {
    let result = run(&plan, &model).unwrap();
    let want = reference(&plan, &model);
    let got: Vec<Expect> = result
        .report
        .step_results
        .iter()
        .zip(&result.trace)
        .map(|(s, t)| Expect {
            status: s.status,
            millis: s.duration.as_millis(),
            page: t.page.clone(),
            depth: t.stack_depth,
            exited: t.exited,
        })
        .collect();
    prop_assert_eq!(got, want);
    Ok(())
}

pub fn stack_discipline(model: AppModel, plan: ActionPlan) -> Result<(), TestCaseError> {
    let result = run(&plan, &model).unwrap();
    let reach = reachable(&model);
    let jumps = plan.commands().any(|s| s.action.as_ref().is_some_and(|a| a.kind == ActionKind::Navigate));
    let mut shadow: Vec<String> = Vec::new();
    let mut page = model.start_page.clone();
    for ((step, outcome), entry) in plan.resolved_steps.iter().zip(&result.report.step_results).zip(&result.trace) {
        let kind = step.action.as_ref().map(|a| a.kind);
        if jumps {
            prop_assert!(model.pages.contains_key(&entry.page), "unknown page {}", entry.page);
        } else {
            prop_assert!(reach.contains(&entry.page), "page {} is not reachable by widgets", entry.page);
        }
        let resets = matches!(kind, Some(ActionKind::LaunchApp | ActionKind::GoHome));
        if resets && outcome.status == StepStatus::Passed {
            prop_assert_eq!(entry.stack_depth, 0);
            prop_assert_eq!(&entry.page, &model.start_page);
            shadow.clear();
            page = entry.page.clone();
            continue;
        }
        match entry.stack_depth as isize - shadow.len() as isize {
            1 => shadow.push(std::mem::replace(&mut page, entry.page.clone())),
            0 => prop_assert_eq!(&entry.page, &page, "page changed without a push"),
            -1 => {
                prop_assert_eq!(kind, Some(ActionKind::GoBack));
                page = shadow.pop().unwrap();
                prop_assert_eq!(&entry.page, &page, "back must return to the page it came from");
            }
            d => prop_assert!(false, "stack depth jumped by {}", d),
        }
    }
    Ok(())
}

pub fn clock_is_monotonic_and_sums(model: AppModel, plan: ActionPlan) -> Result<(), TestCaseError> {
    let result = run(&plan, &model).unwrap();
    let mut clock = 0u64;
    for (step, entry) in result.report.step_results.iter().zip(&result.trace) {
        clock += step.duration.as_millis();
        prop_assert_eq!(entry.clock.as_millis(), clock);
        if step.status != StepStatus::Passed {
            prop_assert_eq!(step.duration.as_millis(), 0);
        }
    }
    prop_assert_eq!(result.report.total.as_millis(), clock);
    prop_assert_eq!(run(&plan, &model).unwrap(), result);
    Ok(())
}

pub fn skipped_is_not_failed(model: AppModel, plan: ActionPlan) -> Result<(), TestCaseError> {
    let report = run(&plan, &model).unwrap().report;
    let failed = report.step_results.iter().any(|s| s.status == StepStatus::Failed);
    prop_assert_eq!(report.verdict == Verdict::Failed, failed);
    for (step, result) in plan.resolved_steps.iter().zip(&report.step_results) {
        if step.action.is_none() {
            prop_assert_eq!(result.status, StepStatus::Skipped);
        }
        if result.status == StepStatus::Skipped {
            prop_assert!(result.message.starts_with("NotSimulatable"), "{}", result.message);
        }
    }
    Ok(())
}
