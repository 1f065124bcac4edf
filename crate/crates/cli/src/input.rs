use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use appintent_core::intent::{parse_intent_file, IntentFile};
use appintent_core::mapping::{parse_mapping_file, MappingTable};
use appintent_core::simulator::{parse_app_model, AppModel};

use crate::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn parse_failure(path: &Path, err: impl Display) -> Failure {
    Failure::input(format!("{}:{err}", path.display()))
}

pub fn intents(path: &Path) -> Result<IntentFile, Failure> {
    parse_intent_file(&read(path)?).map_err(|e| parse_failure(path, e))
}

/// Files keyed by the app label they declare. Two files for one label is an
/// invocation error.
pub struct ByLabel<T> {
    items: Vec<(String, PathBuf, T)>,
}

impl<T> ByLabel<T> {
    fn load(
        paths: &[PathBuf],
        parse: impl Fn(&str) -> Result<T, String>,
        label: impl Fn(&T) -> &str,
    ) -> Result<Self, Failure> {
        let mut items: Vec<(String, PathBuf, T)> = Vec::new();
        for path in paths {
            let item = parse(&read(path)?).map_err(|e| parse_failure(path, e))?;
            let app = label(&item).to_string();
            if let Some((_, first, _)) = items.iter().find(|(l, _, _)| *l == app) {
                return Err(Failure::input(format!(
                    "{} and {} both describe app `{app}`",
                    first.display(),
                    path.display()
                )));
            }
            items.push((app, path.clone(), item));
        }
        Ok(ByLabel { items })
    }

    /// The item for `label`. With a single file its label is not checked,
    /// so the mismatch surfaces as a finding downstream.
    pub fn get(&self, label: &str) -> Result<&T, String> {
        match self.items.as_slice() {
            [(_, _, only)] => Ok(only),
            items => items.iter().find(|(l, _, _)| l == label).map(|(_, _, t)| t).ok_or_else(|| {
                let known: Vec<&str> = items.iter().map(|(l, _, _)| l.as_str()).collect();
                format!("AppLabelMismatch: no file for app `{label}` (have {})", known.join(", "))
            }),
        }
    }
}

pub fn mappings(paths: &[PathBuf]) -> Result<ByLabel<MappingTable>, Failure> {
    ByLabel::load(paths, |s| parse_mapping_file(s).map_err(|e| e.to_string()), |t| &t.app_label)
}

pub fn models(paths: &[PathBuf]) -> Result<ByLabel<AppModel>, Failure> {
    ByLabel::load(paths, |s| parse_app_model(s).map_err(|e| e.to_string()), |m| &m.app_label)
}
