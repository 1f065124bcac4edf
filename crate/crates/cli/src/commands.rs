use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use appintent_core::composer::{
    render_script, resolve, validate, ActionPlan, DeviceConfig, ScriptTemplate, SCRIPT_EXTENSION,
};
use appintent_core::intent::{pretty_print, print_chain, Intent, IntentFile};
use appintent_core::mapping::MappingTable;
use appintent_core::simulator::{render_report, run as simulate, ReportFormat, Verdict};

use crate::args::{Format, Mappings};
use crate::input::{self, ByLabel};
use crate::{Failure, Status};

pub const REPORT_DIR_ENV: &str = "APPINTENT_REPORT_DIR";
const DEFAULT_REPORT_DIR: &str = "reports";

pub fn cmd_validate(intent_path: &Path, mappings: &Mappings) -> Result<Status, Failure> {
    let file = input::intents(intent_path)?;
    let tables = input::mappings(&mappings.paths)?;
    let several = file.intents.len() > 1;
    let mut status = Status::Ok;
    for intent in &file.intents {
        let lines: Vec<(String, bool)> = match tables.get(&intent.app_label) {
            Ok(table) => validate(intent, table).iter().map(|f| (f.to_string(), f.is_error())).collect(),
            Err(message) => vec![(message, true)],
        };
        if several && !lines.is_empty() {
            println!("# {}", intent.app_label);
        }
        for (line, is_error) in lines {
            println!("{line}");
            if is_error {
                status = Status::Findings;
            }
        }
    }
    Ok(status)
}

/// Resolves every intent, or reports every resolution error at once.
fn plan_all(file: &IntentFile, tables: &ByLabel<MappingTable>) -> Result<Vec<ActionPlan>, Failure> {
    let mut plans = Vec::new();
    let mut errors = Vec::new();
    for intent in &file.intents {
        match tables.get(&intent.app_label).and_then(|t| resolve(intent, t).map_err(|e| e.to_string())) {
            Ok(plan) => {
                for warning in &plan.warnings {
                    eprintln!("warning: {}: {warning}", intent.app_label);
                }
                plans.push(plan);
            }
            Err(e) => errors.push(format!("{}: {e}", intent.app_label)),
        }
    }
    if errors.is_empty() {
        Ok(plans)
    } else {
        Err(Failure { status: Status::Findings, message: errors.join("\nerror: ") })
    }
}

/// Writes every file or none: on the first failure the files already
/// written by this call are removed again.
fn write_all(files: &[(PathBuf, String)]) -> Result<(), Failure> {
    for (i, (path, contents)) in files.iter().enumerate() {
        if let Err(e) = fs::write(path, contents) {
            for (written, _) in &files[..=i] {
                let _ = fs::remove_file(written);
            }
            return Err(Failure::io(format!("cannot write {}: {e}", path.display())));
        }
    }
    Ok(())
}

pub fn cmd_compile(
    intent_path: &Path,
    mappings: &Mappings,
    template: Option<&Path>,
    device: &Path,
    output: Option<&Path>,
) -> Result<Status, Failure> {
    let file = input::intents(intent_path)?;
    let tables = input::mappings(&mappings.paths)?;
    let device =
        DeviceConfig::parse(&input::read(device)?).map_err(|e| Failure::input(format!("{}:{e}", device.display())))?;
    let template = match template {
        Some(path) => {
            ScriptTemplate::parse(input::read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
        }
        None => ScriptTemplate::default_appium(),
    };
    if output.is_some() && file.intents.len() != 1 {
        return Err(Failure::input("--output needs an intent file holding exactly one intent"));
    }

    let plans = plan_all(&file, &tables)?;
    let files: Vec<(PathBuf, String)> = plans
        .iter()
        .map(|plan| {
            let path = output
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from(format!("outputprogram_{}.{SCRIPT_EXTENSION}", plan.app_label)));
            (path, render_script(plan, &template, &device))
        })
        .collect();
    for (intent, (path, _)) in file.intents.iter().zip(&files) {
        echo(intent, path);
    }
    write_all(&files)?;
    Ok(Status::Ok)
}

fn echo(intent: &Intent, path: &Path) {
    println!("# Creating {} file for generating the code", path.display());
    println!();
    println!("# Intents are :");
    println!("{}", print_chain(intent));
}

pub fn cmd_run(
    intent_path: &Path,
    mappings: &Mappings,
    app_models: &[PathBuf],
    report_dir: Option<&Path>,
    format: Format,
) -> Result<Status, Failure> {
    let file = input::intents(intent_path)?;
    let tables = input::mappings(&mappings.paths)?;
    let models = input::models(app_models)?;
    let report_dir = report_dir
        .map(Path::to_path_buf)
        .or_else(|| env::var_os(REPORT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT_DIR));
    let format = match format {
        Format::Xml => ReportFormat::Xml,
        Format::Plain => ReportFormat::Plain,
    };

    let plans = plan_all(&file, &tables)?;
    let mut runs = Vec::new();
    let mut errors = Vec::new();
    for plan in &plans {
        match models.get(&plan.app_label).and_then(|m| simulate(plan, m).map_err(|e| e.to_string())) {
            Ok(run) => runs.push(run),
            Err(e) => errors.push(format!("{}: {e}", plan.app_label)),
        }
    }
    if !errors.is_empty() {
        return Err(Failure { status: Status::Findings, message: errors.join("\nerror: ") });
    }

    fs::create_dir_all(&report_dir).map_err(|e| Failure::io(format!("cannot create {}: {e}", report_dir.display())))?;
    let files: Vec<(PathBuf, String)> = runs
        .iter()
        .map(|run| {
            let r = &run.report;
            let name = format!("{}-{}.{}", r.app_label, r.test_name, format.extension());
            (report_dir.join(name), render_report(r, format))
        })
        .collect();
    let several = runs.len() > 1;
    for run in &runs {
        if several {
            println!("# {}", run.report.app_label);
        }
        print!("{}", render_report(&run.report, ReportFormat::Plain));
    }
    write_all(&files)?;
    if runs.iter().any(|r| r.report.verdict == Verdict::Failed) {
        Ok(Status::Failed)
    } else {
        Ok(Status::Ok)
    }
}

pub fn cmd_fmt(intent_path: &Path, check: bool) -> Result<Status, Failure> {
    let source = input::read(intent_path)?;
    let file = appintent_core::intent::parse_intent_file(&source)
        .map_err(|e| Failure::input(format!("{}:{e}", intent_path.display())))?;
    let canonical = pretty_print(&file) + "\n";
    if source == canonical {
        return Ok(Status::Ok);
    }
    if check {
        eprintln!("{} is not in canonical form", intent_path.display());
        return Ok(Status::Failed);
    }
    fs::write(intent_path, canonical)
        .map_err(|e| Failure::io(format!("cannot write {}: {e}", intent_path.display())))?;
    Ok(Status::Ok)
}
