use appintent_core::composer::{render_script, resolve, validate, DeviceConfig, Finding, ResolveError, ScriptTemplate};
use appintent_core::intent::{Arguments, Intent, Step};
use appintent_core::mapping::{
    parse_mapping_file, substitute, ActionDescriptor, ActionKind, LocatorStrategy, MappingEntry, MappingError,
    MappingTable,
};
use proptest::prelude::*;
use sha2::{Digest, Sha256};

pub const NAMES: [&str; 4] = ["user", "item", "value", "q"];

#[derive(Debug, Clone)]
pub enum Piece {
    Lit(String),
    Slot(&'static str, Option<String>),
}

pub fn inert(v: &str) -> bool {
    !v.contains("${") && !v.starts_with('{') && !v.ends_with('$')
}

pub fn text(chars: &'static str, len: std::ops::Range<usize>) -> impl Strategy<Value = String> {
    proptest::collection::vec(proptest::sample::select(chars.chars().collect::<Vec<_>>()), len)
        .prop_map(|c| c.into_iter().collect())
}

pub fn pieces() -> impl Strategy<Value = Vec<Piece>> {
    let lit = text("ab ${}().'=", 1..6).prop_map(Piece::Lit);
    let default = proptest::option::of(text("xy$ {", 0..4).prop_filter("inert", |d| inert(d)));
    let slot = (proptest::sample::select(NAMES.to_vec()), default).prop_map(|(n, d)| Piece::Slot(n, d));
    proptest::collection::vec(prop_oneof![lit, slot], 0..6)
}

pub fn template_text(pieces: &[Piece]) -> String {
    pieces
        .iter()
        .map(|p| match p {
            Piece::Lit(t) => t.clone(),
            Piece::Slot(n, None) => format!("${{{n}}}"),
            Piece::Slot(n, Some(d)) => format!("${{{n}:-{d}}}"),
        })
        .collect()
}

/// True when only the generated slots start with `${`; adjacent literals
/// must not spell one by accident.
pub fn literals_are_literal(pieces: &[Piece]) -> bool {
    let masked: String = pieces
        .iter()
        .map(|p| match p {
            Piece::Lit(t) => t.as_str(),
            Piece::Slot(..) => "\u{1}",
        })
        .collect();
    !masked.contains("${")
}

/// Independent expansion of the generated pieces for named-only steps.
pub fn expected(pieces: &[Piece], args: &[(String, String)]) -> Result<String, String> {
    let mut out = String::new();
    for p in pieces {
        match p {
            Piece::Lit(t) => out.push_str(t),
            Piece::Slot(n, d) => {
                let bound =
                    args.iter().find(|(k, _)| k == n).or_else(|| if *n == "value" { args.first() } else { None });
                match (bound, d) {
                    (Some((_, v)), _) => out.push_str(v),
                    (None, Some(d)) => out.push_str(d),
                    (None, None) => return Err(n.to_string()),
                }
            }
        }
    }
    Ok(out)
}

pub fn arg_values() -> impl Strategy<Value = Vec<(String, String)>> {
    let value = text("vw${} @", 1..5).prop_filter("inert", |v| inert(v) && v.trim() == v);
    proptest::collection::btree_map(proptest::sample::select(NAMES.to_vec()).prop_map(String::from), value, 0..4)
        .prop_map(|m| m.into_iter().collect())
}

/// Templates are taken through the mapping file parser so malformed ones are
/// rejected the same way users would see.
pub fn entry_for(template: &str) -> Option<MappingEntry> {
    let quoted = template.replace('\\', "\\\\").replace('"', "\\\"");
    let table = parse_mapping_file(&format!("app = t\nk.script = \"{quoted}\"\n")).ok()?;
    table.entries.get("k").cloned()
}

pub fn substitution_is_complete_and_idempotent(
    pieces: Vec<Piece>,
    args: Vec<(String, String)>,
) -> Result<(), TestCaseError> {
    prop_assume!(literals_are_literal(&pieces));
    let template = template_text(&pieces);
    let entry = entry_for(&template);
    prop_assume!(entry.is_some());
    let entry = entry.unwrap();
    let step = Step::new("k").with_named(args.clone());
    match (substitute(&entry, &step), expected(&pieces, &args)) {
        (Ok(out), Ok(want)) => {
            let snippet = out.resolved.raw_snippet.clone().unwrap();
            prop_assert!(!snippet.contains("${"), "{template:?} -> {snippet:?}");
            prop_assert_eq!(&snippet, &want);
            let again = MappingEntry { raw_script: Some(snippet.clone()), ..entry.clone() };
            let twice = substitute(&again, &step).unwrap();
            prop_assert_eq!(twice.resolved.raw_snippet.unwrap(), snippet);
            let all: Vec<String> = args.iter().map(|(k, _)| k.clone()).collect();
            prop_assert_eq!(twice.unused, all);
        }
        (Err(MappingError::MissingPlaceholderValue { name, .. }), Err(want)) => prop_assert_eq!(name, want),
        (got, want) => prop_assert!(false, "{template:?}: {got:?} vs {want:?}"),
    }
    Ok(())
}

pub fn locator_and_value_slots_are_filled(args: Vec<(String, String)>, loc: Vec<Piece>) -> Result<(), TestCaseError> {
    let locator = template_text(&loc);
    prop_assume!(entry_for(&locator).is_some());
    let entry = MappingEntry {
        keyword: "k".into(),
        raw_script: None,
        sim_action: Some(
            ActionDescriptor::located(ActionKind::SetText, LocatorStrategy::Id, locator).with_value("${value:-none}"),
        ),
    };
    let step = Step::new("k").with_named(args.clone());
    if let Ok(out) = substitute(&entry, &step) {
        let action = out.resolved.action.unwrap();
        prop_assert!(!action.locator.contains("${"), "locator {:?}", action.locator);
        prop_assert!(!action.value.unwrap().contains("${"), "value slot left unfilled");
    }
    Ok(())
}

pub const POOL: [&str; 6] = ["login", "search", "a.b", "cart", "back", "sleep"];

pub fn table() -> impl Strategy<Value = MappingTable> {
    let entry = (proptest::option::of(pieces()), any::<bool>());
    (proptest::collection::vec(proptest::option::of(entry), POOL.len()), any::<bool>()).prop_map(|(entries, rename)| {
        let mut table = MappingTable::new(if rename { "other" } else { "app" });
        for (kw, entry) in POOL.iter().zip(entries) {
            let Some((script, sim)) = entry else { continue };
            let raw_script = script.map(|p| template_text(&p)).filter(|t| entry_for(t).is_some());
            let sim_action =
                sim.then(|| ActionDescriptor::located(ActionKind::Click, LocatorStrategy::Text, "${item:-x}"));
            table.insert(MappingEntry { keyword: kw.to_string(), raw_script, sim_action });
        }
        table.insert(MappingEntry {
            keyword: "login.submit".into(),
            raw_script: Some("submit(${value})".into()),
            sim_action: None,
        });
        table
    })
}

pub fn intent() -> impl Strategy<Value = Intent> {
    let kw = proptest::sample::select(POOL.iter().chain(&["launch", "exit", "nope"]).copied().collect::<Vec<_>>());
    let args = prop_oneof![
        Just(Arguments::None),
        arg_values().prop_map(Arguments::Named),
        proptest::collection::vec("[a-z]{1,3}", 1..3).prop_map(Arguments::Positional),
    ];
    let op = (proptest::sample::select(vec!["submit", "cart", "zzz"]), args.clone());
    let step = (kw, args, proptest::collection::vec(op, 0..2)).prop_map(|(kw, args, ops)| {
        let mut step = Step::new(kw);
        step.args = args;
        for (k, a) in ops {
            let mut op = Step::new(k);
            op.args = a;
            step.chained_ops.push(op);
        }
        step
    });
    proptest::collection::vec(step, 1..8).prop_map(|steps| Intent::new("app", steps))
}

/// Every pool keyword mapped, every slot defaulted: resolution always succeeds.
pub fn full_table() -> impl Strategy<Value = MappingTable> {
    proptest::collection::vec(pieces(), POOL.len()).prop_map(|scripts| {
        let mut table = MappingTable::new("app");
        for (kw, pieces) in POOL.iter().zip(scripts) {
            let pieces: Vec<Piece> = pieces
                .into_iter()
                .map(|p| match p {
                    Piece::Slot(n, None) => Piece::Slot(n, Some("d".into())),
                    p => p,
                })
                .collect();
            let script = template_text(&pieces);
            let raw_script = (literals_are_literal(&pieces) && entry_for(&script).is_some()).then_some(script);
            let sim_action = Some(ActionDescriptor::located(ActionKind::Click, LocatorStrategy::Text, "${item:-x}"));
            table.insert(MappingEntry { keyword: kw.to_string(), raw_script, sim_action });
        }
        for kw in ["login.submit", "submit"] {
            table.insert(MappingEntry {
                keyword: kw.into(),
                raw_script: Some("submit(${value:-0})".into()),
                sim_action: None,
            });
        }
        table
    })
}

pub fn device() -> impl Strategy<Value = DeviceConfig> {
    ("[a-z0-9]{4,12}", "[a-z]{2,6}(\\.[a-z]{2,6}){1,3}", "[A-Za-z]{1,8}").prop_map(|(udid, pkg, name)| {
        DeviceConfig::parse(&format!(
            "udid = {udid}\nappPackage = {pkg}\nappActivity = {pkg}.Main\ntestName = {name}\n"
        ))
        .unwrap()
    })
}

pub fn sha(text: &str) -> Vec<u8> {
    Sha256::digest(text.as_bytes()).to_vec()
}

pub fn validate_agrees_with_resolve(intent: Intent, table: MappingTable) -> Result<(), TestCaseError> {
    let findings = validate(&intent, &table);
    let errors: Vec<&Finding> = findings.iter().filter(|f| f.is_error()).collect();
    match resolve(&intent, &table) {
        Ok(plan) => {
            prop_assert!(errors.is_empty());
            prop_assert_eq!(&plan.warnings, &findings);
            prop_assert!(
                plan.warnings.iter().all(|f| matches!(f, Finding::UnusedArgument { .. })),
                "unexpected findings {:?}",
                plan.warnings
            );
        }
        Err(ResolveError::AppLabelMismatch { .. }) => {
            prop_assert!(matches!(findings.as_slice(), [Finding::AppLabelMismatch { .. }]), "{:?}", findings);
        }
        Err(ResolveError::UnmappedKeywords { keywords, .. }) => {
            let unmapped: Vec<String> = findings
                .iter()
                .filter_map(|f| match f {
                    Finding::UnmappedKeyword { keyword } => Some(keyword.clone()),
                    _ => None,
                })
                .collect();
            prop_assert_eq!(keywords, unmapped);
        }
        Err(ResolveError::MissingPlaceholderValue { keyword, name }) => {
            prop_assert!(!findings.iter().any(|f| matches!(f, Finding::UnmappedKeyword { .. })), "{:?}", findings);
            let first = findings.iter().find(|f| matches!(f, Finding::MissingPlaceholderValue { .. }));
            prop_assert_eq!(first, Some(&Finding::MissingPlaceholderValue { keyword, name }));
        }
    }
    Ok(())
}

pub fn plans_preserve_step_order(intent: Intent, table: MappingTable) -> Result<(), TestCaseError> {
    if let Ok(plan) = resolve(&intent, &table) {
        prop_assert_eq!(plan.resolved_steps.len(), intent.steps.len());
        for (resolved, step) in plan.resolved_steps.iter().zip(&intent.steps) {
            prop_assert_eq!(&resolved.keyword, &step.keyword);
            prop_assert_eq!(&resolved.origin.args, &step.args);
            prop_assert_eq!(resolved.chained.len(), step.chained_ops.len());
            for (r, op) in resolved.chained.iter().zip(&step.chained_ops) {
                prop_assert!(r.keyword.ends_with(&format!(".{}", op.keyword)), "{} vs {}", r.keyword, op.keyword);
            }
        }
        prop_assert_eq!(plan.source_intent, intent);
    }
    Ok(())
}

pub fn rendering_is_deterministic(
    intent: Intent,
    table: MappingTable,
    device: DeviceConfig,
) -> Result<(), TestCaseError> {
    let mut intent = intent;
    for step in &mut intent.steps {
        if step.keyword == "nope" {
            step.keyword = "cart".into();
        }
        step.chained_ops.retain(|op| op.keyword != "zzz");
    }
    let plan = resolve(&intent, &table).unwrap();
    let template = ScriptTemplate::default_appium();
    let renders: Vec<String> = (0..3).map(|_| render_script(&plan, &template, &device)).collect();
    let hashes: Vec<Vec<u8>> = renders.iter().map(|r| sha(r)).collect();
    prop_assert!(hashes.windows(2).all(|w| w[0] == w[1]));
    let script = &renders[0];
    prop_assert!(script.contains(&format!("self.dc['udid'] = '{}'", device.udid)), "udid line missing");
    prop_assert!(script.contains(&format!("def test{}(self):", device.test_name)), "test method missing");
    // commands land in plan order, one per line
    let mut from = 0;
    for cmd in plan.commands() {
        let text = appintent_core::composer::step_command(cmd);
        let at = script[from..].find(&format!("        {text}\n"));
        prop_assert!(at.is_some(), "{text:?} missing after {from}");
        from += at.unwrap() + 1;
    }
    Ok(())
}
